# -*- coding: utf-8 -*-
"""
Lattice graphs on the unit square and small reference graphs
"""
from typing import Dict, List, Tuple

from plapflow.common.exceptions import GraphError
from plapflow.graphs.base import Graph, TPosition


def build_grid(n_rows: int, n_cols: int) -> Graph:
    """
    4-neighbour grid discretizing the unit square, with the perimeter nodes as
    Dirichlet boundary and edge weights equal to the reciprocal edge length.

    Node (i, j) (row i, column j) has id i * n_cols + j.

    Args:
        n_rows (int): number of node rows, at least 2
        n_cols (int): number of node columns, at least 2

    Returns:
        graph (Graph): grid graph with boundary-boundary edges dropped
    """
    for name, value in (("n_rows", n_rows), ("n_cols", n_cols)):
        if isinstance(value, bool) or not isinstance(value, int):
            raise GraphError(f"{name} must be an integer, got {value!r}.")
        if value < 2:
            raise GraphError(f"{name} must be at least 2, got {value}.")

    node = lambda i, j: i * n_cols + j
    omega_h = float(n_cols - 1)  # 1 / horizontal spacing
    omega_v = float(n_rows - 1)  # 1 / vertical spacing

    boundary = [
        node(i, j)
        for i in range(n_rows)
        for j in range(n_cols)
        if i in (0, n_rows - 1) or j in (0, n_cols - 1)
    ]
    edges: List[Tuple[int, int, float]] = []
    for i in range(n_rows):
        for j in range(n_cols):
            if j + 1 < n_cols:
                edges.append((node(i, j), node(i, j + 1), omega_h))
            if i + 1 < n_rows:
                edges.append((node(i, j), node(i + 1, j), omega_v))

    positions: Dict[int, TPosition] = {
        node(i, j): (j / (n_cols - 1), 1.0 - i / (n_rows - 1))
        for i in range(n_rows)
        for j in range(n_cols)
    }
    return Graph(n_rows * n_cols, boundary, edges, positions=positions)


def build_path(weights: List[float]) -> Graph:
    """
    Path B-1-...-n-B whose two ends are boundary nodes.

    Args:
        weights (List[float]): edge weights from left to right, at least two

    Returns:
        graph (Graph): path with len(weights) + 1 nodes
    """
    if len(weights) < 2:
        raise GraphError("A path between two boundary nodes needs two edges.")
    num_nodes = len(weights) + 1
    edges = [(i, i + 1, w) for i, w in enumerate(weights)]
    return Graph(num_nodes, [0, num_nodes - 1], edges)


def build_twin_triangles() -> Graph:
    """
    Two triangles 1-2-3 and 4-5-6 joined by the edge 3-4, each tied to its own
    boundary node. With unit node weights its first eigenfunction is symmetric,
    so the induced edge weight vanishes on 3-4 and the first eigenvalue of the
    induced weighted Laplacian is double.
    """
    edges = [
        (0, 1, 1.0),
        (0, 2, 1.0),
        (1, 2, 1.0),
        (1, 3, 1.0),
        (2, 3, 1.0),
        (3, 4, 1.0),
        (4, 5, 1.0),
        (4, 6, 1.0),
        (5, 6, 1.0),
        (5, 7, 1.0),
        (6, 7, 1.0),
    ]
    return Graph(8, [0, 7], edges)

"""
Weighted Graph with Dirichlet Boundary
"""
import logging
import math
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import retworkx as rx
import scipy.sparse as sp
from matplotlib import axes, figure
import matplotlib.pyplot as plt
from retworkx.visualization import mpl_draw

from plapflow.common.exceptions import GraphError

logger = logging.getLogger(__name__)

TEdge = Tuple[int, int, float]  # (u, v, omega) with u < v
TPosition = Tuple[float, float]  # (x, y)


class Graph:
    """
    Undirected weighted graph whose boundary nodes carry homogeneous Dirichlet
    conditions. Functions live on the interior nodes; the stored edges, each
    oriented u < v, index the rows of the gradient.

    Graph values are immutable once built.
    """

    def __init__(
        self,
        num_nodes: int,
        boundary: Iterable[int],
        edges: Iterable[Sequence],
        positions: Optional[Dict[int, TPosition]] = None,
    ) -> None:
        """
        Args:
            num_nodes (int): number of nodes, ids are 0..num_nodes-1
            boundary (Iterable[int]): ids of the Dirichlet boundary nodes
            edges (Iterable[Sequence]): records (u, v, omega) in any orientation
            positions (Optional[Dict[int, TPosition]]): drawing coordinates

        Raises:
            GraphError: on self-loops, duplicates, nonpositive weights or
                out-of-range node ids. The message carries the offending record.
        """
        if isinstance(num_nodes, bool) or not isinstance(num_nodes, (int, np.integer)):
            raise GraphError(f"Number of nodes must be an integer, got {num_nodes!r}.")
        if num_nodes < 0:
            raise GraphError(f"Number of nodes must be nonnegative, got {num_nodes}.")
        self._num_nodes = int(num_nodes)

        boundary_set = set()
        for node in boundary:
            node = self._check_node(node, f"boundary id {node!r}")
            boundary_set.add(node)
        self._boundary: FrozenSet[int] = frozenset(boundary_set)
        self._interior: Tuple[int, ...] = tuple(
            node for node in range(self._num_nodes) if node not in self._boundary
        )
        self._interior_index: Dict[int, int] = {
            node: i for i, node in enumerate(self._interior)
        }

        self._edges: Tuple[TEdge, ...] = self._canonical_edges(edges)
        self._positions = dict(positions) if positions else None
        self._incidence = self._make_incidence()

    def _check_node(self, node, record: str) -> int:
        if isinstance(node, bool) or not isinstance(node, (int, np.integer)):
            raise GraphError(f"Node ids must be integers: {record}.")
        if not 0 <= node < self._num_nodes:
            raise GraphError(
                f"Node id out of range [0, {self._num_nodes}): {record}."
            )
        return int(node)

    def _canonical_edges(self, edges: Iterable[Sequence]) -> Tuple[TEdge, ...]:
        """
        Orient every edge u < v, validate it and drop boundary-boundary edges
        (their gradient rows vanish identically).
        """
        seen: Dict[Tuple[int, int], Sequence] = {}
        kept: List[TEdge] = []
        dropped = 0
        for record in edges:
            if not isinstance(record, (list, tuple, np.ndarray)) or len(record) != 3:
                raise GraphError(f"Edge records are [u, v, w]: {record!r}.")
            u = self._check_node(record[0], f"edge {list(record)!r}")
            v = self._check_node(record[1], f"edge {list(record)!r}")
            try:
                omega = float(record[2])
            except (TypeError, ValueError, OverflowError):
                raise GraphError(f"Edge weight is not a number: {list(record)!r}.")
            if u == v:
                raise GraphError(f"Self-loop: {list(record)!r}.")
            if not math.isfinite(omega) or omega <= 0:
                raise GraphError(f"Edge weight must be positive: {list(record)!r}.")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(
                    f"Duplicate edge: {list(record)!r} repeats {list(seen[key])!r}."
                )
            seen[key] = record
            if key[0] in self._boundary and key[1] in self._boundary:
                dropped += 1
                continue
            kept.append((key[0], key[1], omega))
        if dropped:
            logger.debug("Dropped %d boundary-boundary edges.", dropped)
        return tuple(sorted(kept))

    def _make_incidence(self) -> sp.csr_matrix:
        """
        Weighted incidence matrix restricted to the stored edges (rows) and the
        interior nodes (columns): row (u, v) holds -omega at u and +omega at v.
        """
        rows, cols, vals = [], [], []
        for e, (u, v, omega) in enumerate(self._edges):
            for node, sign in ((u, -1.0), (v, 1.0)):
                if node in self._interior_index:
                    rows.append(e)
                    cols.append(self._interior_index[node])
                    vals.append(sign * omega)
        incidence = sp.csr_matrix(
            (vals, (rows, cols)), shape=(len(self._edges), len(self._interior))
        )
        return incidence

    @property
    def num_nodes(self) -> int:
        return self._num_nodes

    @property
    def boundary(self) -> FrozenSet[int]:
        return self._boundary

    @property
    def interior(self) -> Tuple[int, ...]:
        """Interior node ids in ascending order."""
        return self._interior

    @property
    def edges(self) -> Tuple[TEdge, ...]:
        """Stored edges (u, v, omega), u < v, sorted."""
        return self._edges

    @property
    def num_interior(self) -> int:
        return len(self._interior)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    @property
    def weights(self) -> np.ndarray:
        """Edge weights omega in stored edge order."""
        return np.array([omega for _, _, omega in self._edges], dtype=float)

    @property
    def incidence(self) -> sp.csr_matrix:
        """The gradient matrix (|edges| x |interior|)."""
        return self._incidence

    @property
    def positions(self) -> Optional[Dict[int, TPosition]]:
        return dict(self._positions) if self._positions else None

    def interior_index(self, node: int) -> int:
        """Position of an interior node in node functions."""
        try:
            return self._interior_index[node]
        except KeyError:
            raise GraphError(f"Node {node} is not an interior node.")

    def to_retworkx(self, interior_only: bool = False) -> rx.PyGraph:
        """
        Args:
            interior_only (bool): keep only interior nodes and the edges between them

        Returns:
            graph (rx.PyGraph): node payloads are node ids, edge payloads are omega
        """
        graph = rx.PyGraph(multigraph=False)
        nodes = self._interior if interior_only else tuple(range(self._num_nodes))
        node_map = {node: graph.add_node(node) for node in nodes}
        for u, v, omega in self._edges:
            if u in node_map and v in node_map:
                graph.add_edge(node_map[u], node_map[v], omega)
        return graph

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._num_nodes == other._num_nodes
            and self._boundary == other._boundary
            and self._edges == other._edges
        )

    def __hash__(self) -> int:
        return hash((self._num_nodes, self._boundary, self._edges))

    def __repr__(self) -> str:
        return (
            f"Graph(nodes={self._num_nodes}, boundary={len(self._boundary)}, "
            f"interior={self.num_interior}, edges={self.num_edges})"
        )


def is_connected(graph: Graph) -> bool:
    """
    Connectivity of the subgraph induced by the interior nodes. Graphs with at
    most one interior node count as connected.
    """
    if graph.num_interior <= 1:
        return True
    return rx.is_connected(graph.to_retworkx(interior_only=True))


def draw(
    graph: Graph,
    values: Optional[Sequence[float]] = None,
    dpi: Optional[int] = None,
    node_size: Optional[int] = None,
    font_size: Optional[float] = None,
    show: Optional[bool] = True,
) -> Tuple[figure.Figure, axes.Axes]:
    """
    Plots a graph, colouring interior nodes by a node function.

    Args:
        graph (Graph): graph to be plotted
        values (Optional[Sequence[float]]): node function over graph.interior;
            boundary nodes are drawn with value 0
        dpi (int): dpi used for Figure. Defaults to a value sized by node count.
        node_size (int): size of node used for `mpl_draw`. Defaults to a value
            sized by node count.
        font_size (float): font size used for `mpl_draw`. Defaults to a value
            sized by node count.
        show (bool): whether to display the plot automatically. Defaults to True.

    Returns:
        (figure, axes): A matplotlib Figure and Axes object
    """
    rx_graph = graph.to_retworkx()
    node_count = graph.num_nodes
    scale = 5 / (math.sqrt(node_count) if node_count > 0 else 5)
    dpi = dpi if dpi is not None else 150 / scale
    node_size = node_size if node_size is not None else 750 * scale
    font_size = font_size if font_size is not None else 6 * scale

    colors = np.zeros(node_count)
    if values is not None:
        values = np.asarray(values, dtype=float)
        if values.shape != (graph.num_interior,):
            raise GraphError(
                f"Expected {graph.num_interior} node values, got {values.shape}."
            )
        colors[list(graph.interior)] = values

    kwargs = {}
    if graph.positions:
        kwargs["pos"] = {idx: list(graph.positions[idx]) for idx in range(node_count)}

    fig = plt.figure(dpi=dpi)
    ax = fig.subplots()
    mpl_draw(
        rx_graph,
        ax=ax,
        with_labels=True,
        labels=str,
        node_size=node_size,
        node_color=list(colors),
        cmap=plt.cm.viridis,
        font_size=font_size,
        alpha=0.8,
        **kwargs,
    )
    fig.tight_layout()
    if not show:
        plt.close(fig)
    return (fig, ax)

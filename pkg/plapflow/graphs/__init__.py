"""
Weighted Graphs with Dirichlet Boundary
"""
from .base import Graph, is_connected, draw
from .lattice import build_grid, build_path, build_twin_triangles
from .io import load_graph, save_graph, read_graph, write_graph

__all__ = [
    "Graph",
    "is_connected",
    "draw",
    "build_grid",
    "build_path",
    "build_twin_triangles",
    "load_graph",
    "save_graph",
    "read_graph",
    "write_graph",
]

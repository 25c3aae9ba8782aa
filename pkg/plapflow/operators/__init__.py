"""
Graph Differential Operators and Rayleigh Quotients
"""
from .weights import WeightPair, as_node_function, as_edge_function
from .differential import signed_power, gradient, divergence, apply_p_laplacian
from .rayleigh import (
    weighted_norm2,
    rayleigh_p,
    rayleigh_2w,
    rayleigh_p2,
    weights_from,
)

__all__ = [
    "WeightPair",
    "as_node_function",
    "as_edge_function",
    "signed_power",
    "gradient",
    "divergence",
    "apply_p_laplacian",
    "weighted_norm2",
    "rayleigh_p",
    "rayleigh_2w",
    "rayleigh_p2",
    "weights_from",
]

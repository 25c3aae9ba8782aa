"""
Discrete gradient, divergence and the p-Laplace operator
"""
import numpy as np

from plapflow.common.exceptions import OperatorError
from plapflow.graphs.base import Graph
from plapflow.operators.weights import as_edge_function, as_node_function


def signed_power(x, p: float) -> np.ndarray:
    """
    Entrywise |x|^(p-2) x, equal to 0 where x = 0.
    """
    x = np.asarray(x, dtype=float)
    if p == 2:
        return x.copy()
    return np.sign(x) * np.abs(x) ** (p - 1.0)


def gradient(graph: Graph, f) -> np.ndarray:
    """
    Per stored edge (u, v): omega_uv (f(v) - f(u)), with f = 0 on the boundary.
    """
    return graph.incidence @ as_node_function(graph, f)


def divergence(graph: Graph, g) -> np.ndarray:
    """
    Adjoint of the gradient: <gradient(f), g> = <f, divergence(g)>.
    """
    return graph.incidence.T @ as_edge_function(graph, g)


def apply_p_laplacian(graph: Graph, f, p: float) -> np.ndarray:
    """
    Delta_p f = divergence(|grad f|^(p-2) grad f).

    Args:
        graph (Graph): graph
        f (NodeFunction): values on graph.interior
        p (float): exponent, p > 1

    Returns:
        (NodeFunction): Delta_p f
    """
    if not p > 1:
        raise OperatorError(f"The p-Laplacian needs p > 1, got {p}.")
    return divergence(graph, signed_power(gradient(graph, f), p))

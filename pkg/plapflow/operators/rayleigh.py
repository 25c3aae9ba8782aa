"""
Rayleigh quotients and the weights induced by a node function
"""
import numpy as np

from plapflow.common.exceptions import OperatorError
from plapflow.graphs.base import Graph
from plapflow.operators.differential import gradient
from plapflow.operators.weights import (
    WeightPair,
    as_edge_function,
    as_node_function,
)


def weighted_norm2(values, weights) -> float:
    """sum_i weights_i values_i^2"""
    values = np.asarray(values, dtype=float)
    return float(np.dot(weights, values * values))


def rayleigh_p(graph: Graph, f, p: float) -> float:
    """
    R_p(f) = ||grad f||_p^p / ||f||_p^p
    """
    f = as_node_function(graph, f)
    denominator = float(np.sum(np.abs(f) ** p))
    if denominator == 0:
        raise OperatorError("R_p is undefined for the zero function.")
    return float(np.sum(np.abs(gradient(graph, f)) ** p)) / denominator


def rayleigh_2w(graph: Graph, f, w: WeightPair) -> float:
    """
    R_{2,mu,nu}(f) = ||grad f||^2_{2,mu} / ||f||^2_{2,nu}
    """
    f = as_node_function(graph, f)
    mu = as_edge_function(graph, w.mu)
    nu = as_node_function(graph, w.nu)
    denominator = weighted_norm2(f, nu)
    if denominator == 0:
        raise OperatorError("R_{2,mu,nu} is undefined: ||f||_{2,nu} = 0.")
    return weighted_norm2(gradient(graph, f), mu) / denominator


def rayleigh_p2(graph: Graph, f, p: float, nu) -> float:
    """
    R_{p,2,nu}(f) = ||grad f||_p^p / ||f||_{2,nu}^p
    """
    f = as_node_function(graph, f)
    nu = as_node_function(graph, nu)
    norm2 = weighted_norm2(f, nu)
    if norm2 == 0:
        raise OperatorError("R_{p,2,nu} is undefined: ||f||_{2,nu} = 0.")
    return float(np.sum(np.abs(gradient(graph, f)) ** p)) / norm2 ** (p / 2.0)


def weights_from(graph: Graph, f, p: float) -> WeightPair:
    """
    Weights for which an eigenfunction f of Delta_p is a linear eigenfunction:
    mu = |grad f|^(p-2), nu = |f|^(p-2).
    """
    if not p > 2:
        raise OperatorError(f"Induced weights need p > 2, got {p}.")
    f = as_node_function(graph, f)
    return WeightPair(
        np.abs(gradient(graph, f)) ** (p - 2.0), np.abs(f) ** (p - 2.0)
    )

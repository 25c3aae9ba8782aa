# -*- coding: utf-8 -*-
"""
Node-edge duality: a node p-eigenpair (lambda, f) maps to the edge
q-eigenpair (lambda^(q/p), |grad f|^(p-2) grad f), q = p/(p-1)
"""
from typing import NamedTuple, Tuple

import numpy as np

from plapflow.common.exceptions import VerificationError
from plapflow.graphs.base import Graph
from plapflow.operators.differential import divergence, gradient, signed_power
from plapflow.operators.weights import as_edge_function, as_node_function


class EdgePair(NamedTuple):
    eta: float
    G: np.ndarray
    edge_residual: float


def conjugate_exponent(p: float) -> float:
    if not p > 1:
        raise VerificationError(f"Conjugate exponent needs p > 1, got {p}.")
    return p / (p - 1.0)


def dual_edge_pair(graph: Graph, f, lambda_p: float, p: float) -> EdgePair:
    """
    Maps a node eigenpair to the edges and measures how well
    grad(|grad^T G|^(q-2) grad^T G) = eta |G|^(q-2) G holds.

    Args:
        graph (Graph): graph
        f (NodeFunction): eigenfunction
        lambda_p (float): its p-Laplacian eigenvalue, > 0
        p (float): exponent

    Returns:
        EdgePair: eta, G and the relative 2-norm residual of the edge equation
    """
    if not lambda_p > 0:
        raise VerificationError(f"Duality needs lambda_p > 0, got {lambda_p!r}.")
    q = conjugate_exponent(p)
    f = as_node_function(graph, f)
    eta = lambda_p ** (q / p)
    G = signed_power(gradient(graph, f), p)
    lhs = gradient(graph, signed_power(divergence(graph, G), q))
    rhs = eta * signed_power(G, q)
    denominator = float(np.linalg.norm(rhs))
    if denominator == 0:
        raise VerificationError("The edge function vanishes identically.")
    return EdgePair(eta, G, float(np.linalg.norm(lhs - rhs)) / denominator)


def dual_node_pair(graph: Graph, eta: float, G, p: float) -> Tuple[float, np.ndarray]:
    """
    Reverse map: an edge q-eigenpair (eta, G) gives the node p-eigenpair
    (eta^(p/q), |grad^T G|^(q-2) grad^T G).
    """
    q = conjugate_exponent(p)
    G = as_edge_function(graph, G)
    return eta ** (p / q), signed_power(divergence(graph, G), q)

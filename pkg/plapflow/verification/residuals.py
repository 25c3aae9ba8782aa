# -*- coding: utf-8 -*-
"""
Relative residuals of the nonlinear eigen-equations
"""
import numpy as np

from plapflow.common.exceptions import VerificationError
from plapflow.graphs.base import Graph
from plapflow.operators.differential import apply_p_laplacian, signed_power
from plapflow.operators.rayleigh import weighted_norm2
from plapflow.operators.weights import as_node_function


def _relative(difference: np.ndarray, reference: np.ndarray) -> float:
    denominator = float(np.linalg.norm(reference))
    if denominator == 0:
        raise VerificationError("Residual undefined: the reference side vanishes.")
    return float(np.linalg.norm(difference)) / denominator


def residual(graph: Graph, f, lambda_lin: float, p: float) -> float:
    """
    ||Delta_p f - lambda_p |f|^(p-2) f||_2 / ||lambda_p |f|^(p-2) f||_2
    with lambda_p = lambda_lin^(p/2).

    Args:
        graph (Graph): graph
        f (NodeFunction): candidate eigenfunction
        lambda_lin (float): eigenvalue of the weighted pencil
        p (float): exponent

    Returns:
        residual (float): relative residual, 0 for an exact eigenpair
    """
    if not lambda_lin > 0:
        raise VerificationError(f"Residual needs lambda_lin > 0, got {lambda_lin!r}.")
    f = as_node_function(graph, f)
    target = lambda_lin ** (p / 2.0) * signed_power(f, p)
    return _relative(apply_p_laplacian(graph, f, p) - target, target)


def residual_p2(graph: Graph, f, lambda_p2: float, p: float, nu) -> float:
    """
    Relative residual of the [p,2] eigen-equation
    Delta_p f = lambda ||f||_{2,nu}^(p-2) nu f.
    """
    f = as_node_function(graph, f)
    nu = as_node_function(graph, nu)
    norm = np.sqrt(weighted_norm2(f, nu))
    target = lambda_p2 * norm ** (p - 2.0) * nu * f
    return _relative(apply_p_laplacian(graph, f, p) - target, target)

# -*- coding: utf-8 -*-
"""
Finite-difference checks of the analytic derivative formulas
"""
import logging
from dataclasses import replace
from typing import NamedTuple, Optional

import numpy as np

from plapflow.common.exceptions import VerificationError
from plapflow.flows.base import FlowConfig
from plapflow.flows.p2 import solve_p2_first
from plapflow.graphs.base import Graph
from plapflow.operators.differential import signed_power
from plapflow.operators.rayleigh import weighted_norm2
from plapflow.operators.weights import WeightPair, as_node_function
from plapflow.spectra.energy import (
    grad_inv_lambda,
    mass,
    mass_gradient,
    positive_eigenvalue,
)
from plapflow.spectra.linear import generalized_spectrum
from plapflow.verification.morse import fd_second_derivative_identity

logger = logging.getLogger(__name__)

# inner tolerance of the [p,2] solves; the quotient error is quadratic in it
P2_INNER_TOL = 1e-11
P2_INNER_MAX_ITER = 200000


class FDCheck(NamedTuple):
    max_rel_err: float
    analytic: np.ndarray
    numeric: np.ndarray


def _compare(analytic: np.ndarray, numeric: np.ndarray) -> FDCheck:
    """
    Errors are relative to the largest analytic entry so that vanishing
    components do not blow up the ratio.
    """
    scale = float(np.max(np.abs(analytic))) if analytic.size else 0.0
    if scale == 0:
        scale = 1.0
    err = float(np.max(np.abs(analytic - numeric))) / scale if analytic.size else 0.0
    return FDCheck(err, analytic, numeric)


def _steps(values: np.ndarray, h: float) -> np.ndarray:
    steps = h * (1.0 + np.abs(values))
    if np.any(values - steps < 0):
        raise VerificationError("Weights too small for a central difference step.")
    return steps


def fd_grad_inv_lambda(
    graph: Graph,
    w: WeightPair,
    p: float,
    k: int,
    delta: float = 0.0,
    h: float = 1e-6,
) -> FDCheck:
    """
    Central differences of 1/lambda_k over every edge and node weight, with
    step h (1 + |w_i|), against grad_inv_lambda.

    Raises:
        NonSimpleEigenvalue: lambda_k is repeated at w
        SpectrumError: lambda_k vanishes at w or at a perturbed point
    """
    grad = grad_inv_lambda(graph, w, p, k, delta)

    def inv_lambda(pair: WeightPair) -> float:
        return 1.0 / positive_eigenvalue(generalized_spectrum(graph, pair, delta), k)

    def central(values: np.ndarray, rebuild) -> np.ndarray:
        steps = _steps(values, h)
        out = np.empty_like(values)
        for i, step in enumerate(steps):
            plus, minus = values.copy(), values.copy()
            plus[i] += step
            minus[i] -= step
            out[i] = (inv_lambda(rebuild(plus)) - inv_lambda(rebuild(minus))) / (2 * step)
        return out

    d_mu = central(np.array(w.mu), lambda mu: WeightPair(mu, w.nu))
    d_nu = central(np.array(w.nu), lambda nu: WeightPair(w.mu, nu))
    return _compare(
        np.concatenate([grad.d_mu, grad.d_nu]), np.concatenate([d_mu, d_nu])
    )


def fd_mass_gradient(weights, p: float, h: float = 1e-6) -> FDCheck:
    """
    Central differences of the mass function against w^(2/(p-2)).
    """
    weights = np.asarray(weights, dtype=float)
    steps = _steps(weights, h)
    numeric = np.empty_like(weights)
    for i, step in enumerate(steps):
        plus, minus = weights.copy(), weights.copy()
        plus[i] += step
        minus[i] -= step
        numeric[i] = (mass(plus, p) - mass(minus, p)) / (2 * step)
    return _compare(mass_gradient(weights, p), numeric)


def _p2_config(p: float, cfg: Optional[FlowConfig]) -> FlowConfig:
    if cfg is None:
        return FlowConfig(p, tol=P2_INNER_TOL, max_iter=P2_INNER_MAX_ITER)
    return replace(cfg, k=1)


def fd_grad_lambda1_p2(
    graph: Graph,
    nu,
    p: float,
    h: float = 1e-4,
    cfg: Optional[FlowConfig] = None,
) -> FDCheck:
    """
    Central differences (step h (1 + nu_u)) of the first [p,2]-eigenvalue in
    every node weight, against
    d lambda_1 / d nu = -(p/2) lambda_1 |f|^2 / ||f||^2_{2,nu}.

    Values come from the [p,2] quotient of the solver's eigenfunction, whose
    error is second order in the eigenfunction error.

    Raises:
        VerificationError: an inner solve did not converge
    """
    nu = as_node_function(graph, nu)
    cfg = _p2_config(p, cfg)

    def first(weights: np.ndarray):
        result = solve_p2_first(graph, weights, p, cfg)
        if not result.converged:
            raise VerificationError(
                f"Inner [p,2] solve did not converge in {result.iters} iterations."
            )
        return result

    base = first(nu)
    # the perturbed solves start from the step size the base solve settled on
    cfg = replace(cfg, tau=base.tau)
    analytic = -(p / 2.0) * base.quotient * base.f ** 2 / weighted_norm2(base.f, nu)
    steps = _steps(nu, h)
    numeric = np.empty_like(nu)
    for u, step in enumerate(steps):
        plus, minus = nu.copy(), nu.copy()
        plus[u] += step
        minus[u] -= step
        numeric[u] = (first(plus).quotient - first(minus).quotient) / (2 * step)
    return _compare(analytic, numeric)


def second_derivative_suite(
    graph: Graph,
    f,
    p: float,
    n_directions: int = 20,
    seed: Optional[int] = None,
    h: float = 1e-5,
) -> float:
    """
    Max relative error of the second-derivative identity over random tangent
    directions at the eigenfunction f, rescaled to unit max-norm first.

    Where grad f vanishes on an edge the quotient is only C^2 and the central
    difference error is O(h) instead of O(h^2), hence the smaller default step.
    """
    f = as_node_function(graph, f)
    if graph.num_interior < 2:
        logger.info("No tangent directions on a single interior node.")
        return 0.0
    scale = float(np.max(np.abs(f)))
    if scale == 0:
        raise VerificationError("The zero function is not an eigenfunction.")
    f = f / scale
    rng = np.random.default_rng(seed)
    normal = signed_power(f, p)
    worst = 0.0
    for _ in range(n_directions):
        xi = rng.standard_normal(graph.num_interior)
        xi -= np.dot(normal, xi) / np.dot(normal, normal) * normal
        xi /= np.linalg.norm(xi)
        worst = max(worst, fd_second_derivative_identity(graph, f, p, xi, h).rel_err)
    return worst

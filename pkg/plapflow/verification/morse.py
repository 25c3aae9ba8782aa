# -*- coding: utf-8 -*-
"""
Morse index of p-Laplacian eigenpairs via the linear index of the induced
weighted pencil, and finite-difference cross-checks on small graphs
"""
import logging
from typing import NamedTuple, Optional

import numpy as np
import scipy.linalg

from plapflow.common.constants import MORSE_DELTA, VERIFY_TOL, tie_tolerance
from plapflow.common.exceptions import SpectrumError, VerificationError
from plapflow.graphs.base import Graph
from plapflow.operators.differential import signed_power
from plapflow.operators.rayleigh import rayleigh_2w, rayleigh_p, weights_from
from plapflow.operators.weights import WeightPair, as_node_function
from plapflow.spectra.linear import (
    assemble_weighted_laplacian,
    generalized_spectrum,
    linear_index,
    multiplicity,
)
from plapflow.verification.residuals import residual

logger = logging.getLogger(__name__)

MAX_FD_STEP = 1e-2


class MorseIndex(NamedTuple):
    morse_R: int
    morse_negR: int
    linear_index: int
    multiplicity: int
    kernel_dim: int


class SecondDerivativeCheck(NamedTuple):
    lhs: float
    rhs: float
    rel_err: float
    projected: bool


def _eigenvalue_bound(
    graph: Graph, f: np.ndarray, w: WeightPair, lam: float, delta: float
) -> float:
    """
    Distance bound from lam to the pencil spectrum: ||r||_{D^-1} / ||f||_D with
    r = L f - lam D f and D = diag(nu + delta).
    """
    mass = w.nu + delta
    r = assemble_weighted_laplacian(graph, w.mu + delta) @ f - lam * mass * f
    return float(np.sqrt(np.sum(r ** 2 / mass) / np.sum(mass * f ** 2)))


def morse_index(
    graph: Graph,
    f,
    lambda_p: float,
    p: float,
    tol: float = VERIFY_TOL,
    match_tol: Optional[float] = None,
    tie_tol: Optional[float] = None,
) -> MorseIndex:
    """
    Morse indices of R_p and -R_p at an eigenfunction f, read off the pencil
    built from mu = |grad f|^(p-2), nu = |f|^(p-2). With these unnormalized
    weights the pencil eigenvalue is lambda_p itself.

    Args:
        graph (Graph): graph
        f (NodeFunction): eigenfunction
        lambda_p (float): p-Laplacian eigenvalue
        p (float): exponent, p > 2
        tol (float): residual below which (lambda_p, f) counts as an eigenpair
        match_tol (Optional[float]): tolerance locating lambda_p in the pencil
            spectrum. Defaults to ten times the residual bound of the pencil.
        tie_tol (Optional[float]): tolerance grouping equal pencil eigenvalues

    Returns:
        MorseIndex: (k - 1, N - k - m + 1, k, m, kernel dimension)

    Raises:
        VerificationError: (lambda_p, f) is not an eigenpair at tol, or lambda_p
            is missing from the induced spectrum
    """
    if not lambda_p > 0:
        raise VerificationError(f"Morse index needs lambda_p > 0, got {lambda_p!r}.")
    f = as_node_function(graph, f)
    res = residual(graph, f, lambda_p ** (2.0 / p), p)
    if not res < tol:
        raise VerificationError(
            f"(lambda={lambda_p!r}, f) is not an eigenpair: residual {res:.3e} >= {tol:g}."
        )

    w = weights_from(graph, f, p)
    delta = 0.0 if np.all(w.nu > 0) else MORSE_DELTA
    spec = generalized_spectrum(graph, w, delta)
    if match_tol is None:
        bound = _eigenvalue_bound(graph, f, w, lambda_p, delta)
        # eigh resolves eigenvalues only to about eps ||A||, and a tiny delta grades A
        floor = 100.0 * np.finfo(float).eps * float(spec.eigenvalues[-1])
        match_tol = max(tie_tolerance(lambda_p), 10.0 * bound, floor)

    # ties are grouped around the closest pencil eigenvalue, not around lambda_p
    closest = float(spec.eigenvalues[np.argmin(np.abs(spec.eigenvalues - lambda_p))])
    if abs(closest - lambda_p) > match_tol:
        raise VerificationError(
            f"Inconsistent induced spectrum: closest eigenvalue {closest!r} "
            f"is farther than {match_tol:g} from {lambda_p!r}."
        )
    try:
        k = linear_index(spec, closest, tie_tol)
        m = multiplicity(spec, closest, tie_tol)
    except SpectrumError as err:
        raise VerificationError(f"Inconsistent induced spectrum: {err}")
    n = graph.num_interior
    logger.debug("lambda_p=%r sits at position %d (multiplicity %d).", lambda_p, k, m)
    return MorseIndex(k - 1, n - k - m + 1, k, m, spec.kernel_dim)


def _tangent_projection(f: np.ndarray, xi: np.ndarray, p: float):
    """Projects xi onto the tangent space {<|f|^(p-2) f, xi> = 0}."""
    normal = signed_power(f, p)
    inner = float(np.dot(normal, xi))
    if abs(inner) <= 1e-12 * np.linalg.norm(normal) * np.linalg.norm(xi):
        return xi, False
    return xi - inner / float(np.dot(normal, normal)) * normal, True


def _second_difference(func, f: np.ndarray, xi: np.ndarray, h: float) -> float:
    return (func(f + h * xi) - 2.0 * func(f) + func(f - h * xi)) / h ** 2


def fd_second_derivative_identity(
    graph: Graph, f, p: float, xi, h: float = 1e-4
) -> SecondDerivativeCheck:
    """
    Central second differences of R_p and of R_{2,mu,nu} (weights induced by f)
    along a tangent direction xi. At an eigenfunction
    d2 R_p = p (p-1) / 2 * d2 R_{2,mu,nu}.

    Non-tangent directions are projected first and the result is flagged.

    Returns:
        SecondDerivativeCheck: (lhs, rhs, relative error of lhs vs p(p-1)/2 rhs,
            projected flag)
    """
    if not 0 < h <= MAX_FD_STEP:
        raise VerificationError(f"Step h must lie in (0, {MAX_FD_STEP:g}], got {h!r}.")
    f = as_node_function(graph, f)
    xi, projected = _tangent_projection(f, as_node_function(graph, xi), p)
    if projected:
        logger.warning("Direction is not tangent to the p-sphere; projected it.")
    if not np.linalg.norm(xi) > 0:
        raise VerificationError("Direction vanishes after tangent projection.")

    w = weights_from(graph, f, p)
    lhs = _second_difference(lambda g: rayleigh_p(graph, g, p), f, xi, h)
    rhs = _second_difference(lambda g: rayleigh_2w(graph, g, w), f, xi, h)
    scaled = p * (p - 1.0) / 2.0 * rhs
    scale = max(abs(lhs), abs(scaled), rayleigh_p(graph, f, p))
    return SecondDerivativeCheck(lhs, rhs, abs(lhs - scaled) / scale, projected)


def fd_hessian_morse(graph: Graph, f, p: float, h: float = 1e-4) -> int:
    """
    Brute-force Morse index: number of negative eigenvalues of the
    finite-difference Hessian of R_p restricted to the tangent space of the
    p-sphere at f. Costs O(N^2) quotient evaluations; meant for tiny graphs.
    """
    if not 0 < h <= MAX_FD_STEP:
        raise VerificationError(f"Step h must lie in (0, {MAX_FD_STEP:g}], got {h!r}.")
    f = as_node_function(graph, f)
    f = f / np.linalg.norm(f)
    basis = scipy.linalg.null_space(signed_power(f, p)[None, :])
    dim = basis.shape[1]
    if dim == 0:
        return 0

    quotient = lambda g: rayleigh_p(graph, g, p)
    center = quotient(f)
    hessian = np.zeros((dim, dim))
    for i in range(dim):
        hessian[i, i] = _second_difference(quotient, f, basis[:, i], h)
        for j in range(i):
            a, b = basis[:, i], basis[:, j]
            mixed = (
                quotient(f + h * a + h * b)
                - quotient(f + h * a - h * b)
                - quotient(f - h * a + h * b)
                + quotient(f - h * a - h * b)
            ) / (4.0 * h ** 2)
            hessian[i, j] = hessian[j, i] = mixed
    eigenvalues = scipy.linalg.eigvalsh(hessian)
    return int(np.count_nonzero(eigenvalues < -1e-6 * max(1.0, center)))

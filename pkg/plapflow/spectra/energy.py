# -*- coding: utf-8 -*-
"""
Spectral energies E_{p,k}(mu, nu) = 1/lambda_k + M_E(mu) - M_V(nu) and their derivatives
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from plapflow.common.exceptions import NonSimpleEigenvalue, SpectrumError
from plapflow.graphs.base import Graph
from plapflow.operators.differential import gradient
from plapflow.operators.rayleigh import weighted_norm2
from plapflow.operators.weights import WeightPair, as_node_function
from plapflow.spectra.linear import Spectrum, generalized_spectrum, multiplicity

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class EnergyGradient:
    """
    Partial derivatives of an energy with respect to the edge weights (d_mu)
    and the node weights (d_nu).

    For 1/lambda_k: d_mu <= 0 and d_nu >= 0 entrywise.
    """

    d_mu: np.ndarray
    d_nu: np.ndarray
    simple: bool = True


def _check_exponent(p: float) -> None:
    if not p > 2:
        raise SpectrumError(f"Mass functions need p > 2, got {p}.")


def mass(weights, p: float) -> float:
    """
    M_p(w) = (p-2)/p sum_i w_i^(p/(p-2))
    """
    _check_exponent(p)
    weights = np.asarray(weights, dtype=float)
    if np.any(weights < 0):
        raise SpectrumError("Mass functions are defined on nonnegative weights.")
    return (p - 2.0) / p * float(np.sum(weights ** (p / (p - 2.0))))


def mass_gradient(weights, p: float) -> np.ndarray:
    """
    d M_p / d w_i = w_i^(2/(p-2))
    """
    _check_exponent(p)
    return np.asarray(weights, dtype=float) ** (2.0 / (p - 2.0))


def positive_eigenvalue(spec: Spectrum, k: int) -> float:
    """lambda_k of spec; SpectrumError unless it is strictly positive."""
    lam, _ = spec.pair(k)
    if lam <= 0:
        raise SpectrumError(
            f"lambda_{k} = {lam!r} is not positive; the energy is undefined "
            "(is the boundary empty?)."
        )
    return lam


def energy_k(
    graph: Graph, w: WeightPair, p: float, k: int, delta: float = 0.0
) -> float:
    """
    E_{p,k}(mu, nu) on the delta-regularized pencil.

    Args:
        graph (Graph): graph
        w (WeightPair): edge and node weights
        p (float): exponent, p > 2
        k (int): 1-based spectral index
        delta (float): pencil regularization

    Returns:
        energy (float)
    """
    _check_exponent(p)
    lam = positive_eigenvalue(generalized_spectrum(graph, w, delta), k)
    return 1.0 / lam + mass(w.mu, p) - mass(w.nu, p)


def inv_lambda_gradient_from_pair(
    graph: Graph, f, lam: float, w: WeightPair, delta: float = 0.0
) -> EnergyGradient:
    """
    Derivatives of 1/lambda at a simple eigenpair (lam, f) of the pencil
    (L_{mu+delta}, diag(nu+delta)):

        d_mu = -|grad f|^2 / (lam^2 ||f||^2_{2,nu+delta})
        d_nu = |f|^2 / ||grad f||^2_{2,mu+delta}

    Only ratios of quadratic forms enter, so any scaling of f gives the same result.
    """
    f = as_node_function(graph, f)
    grad_f = gradient(graph, f)
    mass_norm = weighted_norm2(f, w.nu + delta)
    stiffness_norm = weighted_norm2(grad_f, w.mu + delta)
    if mass_norm == 0 or stiffness_norm == 0 or lam == 0:
        raise SpectrumError("Degenerate eigenpair: vanishing quadratic forms.")
    return EnergyGradient(
        d_mu=-(grad_f ** 2) / (lam ** 2 * mass_norm),
        d_nu=f ** 2 / stiffness_norm,
    )


def grad_inv_lambda(
    graph: Graph,
    w: WeightPair,
    p: float,
    k: int,
    delta: float = 0.0,
    tol: Optional[float] = None,
    allow_multiple: bool = False,
) -> EnergyGradient:
    """
    Gradient of 1/lambda_k with respect to (mu, nu), computed at the
    delta-regularized pencil.

    Args:
        graph (Graph): graph
        w (WeightPair): weights
        p (float): exponent, only validated (the derivative does not depend on it)
        k (int): 1-based spectral index
        delta (float): pencil regularization
        tol (Optional[float]): tie tolerance deciding simplicity of lambda_k
        allow_multiple (bool): return a flagged value instead of raising when
            lambda_k is repeated

    Raises:
        NonSimpleEigenvalue: lambda_k is repeated, so 1/lambda_k is not differentiable
    """
    _check_exponent(p)
    spec = generalized_spectrum(graph, w, delta)
    lam = positive_eigenvalue(spec, k)
    m = multiplicity(spec, lam, tol)
    if m > 1 and not allow_multiple:
        raise NonSimpleEigenvalue(k, lam, m)
    grad = inv_lambda_gradient_from_pair(graph, spec.pair(k)[1], lam, w, delta)
    if m > 1:
        logger.warning("lambda_%d has multiplicity %d; returning a flagged value.", k, m)
        return EnergyGradient(grad.d_mu, grad.d_nu, simple=False)
    return grad


def energy_gradient(
    graph: Graph,
    w: WeightPair,
    p: float,
    k: int,
    delta: float = 0.0,
    tol: Optional[float] = None,
) -> EnergyGradient:
    """
    Full gradient of E_{p,k}:
    (d_mu 1/lambda_k + mu^(2/(p-2)), d_nu 1/lambda_k - nu^(2/(p-2))).
    It vanishes at differentiable saddle points.
    """
    grad = grad_inv_lambda(graph, w, p, k, delta, tol)
    return EnergyGradient(
        d_mu=grad.d_mu + mass_gradient(w.mu, p),
        d_nu=grad.d_nu - mass_gradient(w.nu, p),
    )

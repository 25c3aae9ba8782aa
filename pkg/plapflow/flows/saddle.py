# -*- coding: utf-8 -*-
"""
Saddle-point flow of the spectral energy E_{p,k}: mu descends, nu ascends
"""
import logging
from typing import Tuple

import numpy as np

from plapflow.common.constants import INIT_RANDOM, TINY_WEIGHT, VERIFY_TOL, tie_tolerance
from plapflow.common.exceptions import FlowError, SpectrumError, VerificationError
from plapflow.flows.base import FlowConfig, FlowState, FlowTrace, WeightFlow
from plapflow.graphs.base import Graph, is_connected
from plapflow.operators.differential import gradient
from plapflow.operators.rayleigh import weighted_norm2
from plapflow.operators.weights import WeightPair
from plapflow.spectra.linear import generalized_spectrum, multiplicity
from plapflow.verification.morse import morse_index
from plapflow.verification.report import EigenReport
from plapflow.verification.residuals import residual

logger = logging.getLogger(__name__)


def powered_target(w: np.ndarray, exponent: float, ratio: np.ndarray) -> np.ndarray:
    """
    w^exponent * ratio, evaluated in log space for w < TINY_WEIGHT where the
    power alone would overflow. Zero weights and zero ratios give 0.
    """
    out = np.zeros_like(w, dtype=float)
    live = (w > 0) & (ratio > 0)
    tiny = live & (w < TINY_WEIGHT)
    regular = live & ~tiny
    out[regular] = w[regular] ** exponent * ratio[regular]
    out[tiny] = np.exp(exponent * np.log(w[tiny]) + np.log(ratio[tiny]))
    return out


def _check_finite(values: np.ndarray, kind: str) -> None:
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise FlowError(f"Non-finite {kind} weight update at {kind} index {int(bad[0])}.")


def euler_update(
    graph: Graph, w: WeightPair, lam: float, f, cfg: FlowConfig
) -> WeightPair:
    """
    One explicit Euler step from the pencil eigenpair (lam, f) of w:

        mu' = mu + tau (mu^e |grad f|^2 / (lam^2 ||f||^2_{2,nu}) - mu)
        nu' = nu + tau (nu^e |f|^2 / ||grad f||^2_{2,mu} - nu)

    with e = (p-4)/(p-2). The norms use the unregularized weights. Only ratios
    of quadratic forms enter, so the scaling of f is irrelevant.
    """
    f = np.asarray(f, dtype=float)
    grad_f = gradient(graph, f)
    node_norm = weighted_norm2(f, w.nu)
    edge_norm = weighted_norm2(grad_f, w.mu)
    if not (lam > 0 and node_norm > 0 and edge_norm > 0):
        raise FlowError(
            f"Degenerate eigenpair in the update: lambda={lam!r}, "
            f"||f||^2_nu={node_norm!r}, ||grad f||^2_mu={edge_norm!r}."
        )
    e = cfg.exponent
    mu_target = powered_target(w.mu, e, grad_f ** 2 / (lam ** 2 * node_norm))
    nu_target = powered_target(w.nu, e, f ** 2 / edge_norm)
    mu = w.mu + cfg.tau * (mu_target - w.mu)
    nu = w.nu + cfg.tau * (nu_target - w.nu)
    _check_finite(mu, "edge")
    _check_finite(nu, "node")
    return WeightPair(mu, nu)


class SaddleFlow(WeightFlow):
    """
    Follows the k-th eigenpair of the delta-regularized pencil and moves the
    weights towards a saddle point of E_{p,k}.
    """

    def initial_weights(self) -> WeightPair:
        if self.config.init == INIT_RANDOM:
            return WeightPair.random(self.graph, self.config.seed)
        return WeightPair.ones(self.graph)

    def eigenpair(self, w: WeightPair) -> Tuple[float, np.ndarray, bool]:
        spec = generalized_spectrum(self.graph, w, self.config.delta)
        lam, f = spec.pair(self.config.k)
        return lam, f, multiplicity(spec, lam, tie_tolerance(lam)) == 1

    def update(self, w: WeightPair, lam: float, f: np.ndarray) -> WeightPair:
        return euler_update(self.graph, w, lam, f, self.config)

    def step_residual(self, lam: float, f: np.ndarray) -> float:
        try:
            return residual(self.graph, f, lam, self.config.p)
        except VerificationError:
            return float("nan")


def flow_step(graph: Graph, state: FlowState, cfg: FlowConfig) -> FlowState:
    """
    Solves the regularized pencil at state.w, takes its k-th eigenpair and
    applies one Euler update.
    """
    return SaddleFlow(graph, cfg).step(state)


def _check_graph(graph: Graph, cfg: FlowConfig) -> None:
    if graph.num_interior == 0:
        raise FlowError("The graph has no interior nodes.")
    if cfg.k > graph.num_interior:
        raise FlowError(f"k={cfg.k} exceeds the {graph.num_interior} interior nodes.")
    if not graph.boundary:
        logger.warning("Empty boundary: lambda_1 of the pencil degenerates to delta scale.")
    if not is_connected(graph):
        logger.warning("The interior of %r is disconnected.", graph)


def run_flow(graph: Graph, cfg: FlowConfig) -> Tuple[EigenReport, FlowTrace]:
    """
    Runs the saddle-point flow for E_{p,k} and reports the eigenpair it reaches.

    Args:
        graph (Graph): graph with a nonempty interior
        cfg (FlowConfig): flow parameters

    Returns:
        (report, trace): lambda_p = lambda_lin^(p/2) with its eigenfunction,
            residual and Morse data; the per-step trace
    """
    _check_graph(graph, cfg)
    flow = SaddleFlow(graph, cfg)
    state, converged = flow.run()

    lam, f, simple = flow.eigenpair(state.w)
    lambda_p = lam ** (cfg.p / 2.0)
    try:
        res = residual(graph, f, lam, cfg.p)
    except VerificationError as err:
        logger.warning("Residual unavailable: %s", err)
        res = float("nan")

    report = EigenReport(
        lambda_p=lambda_p,
        lambda_lin=lam,
        f=np.array(f),
        w=state.w,
        residual=res,
        converged=converged,
        iters=state.iter,
        p=cfg.p,
        k=cfg.k,
        tau=cfg.tau,
        delta=cfg.delta,
        oscillations=flow.trace.oscillations(),
    )
    if np.isfinite(res):
        try:
            tol = max(VERIFY_TOL, 100.0 * res)
            index = morse_index(graph, f, lambda_p, cfg.p, tol=tol)
        except (VerificationError, SpectrumError) as err:
            logger.warning("Morse index skipped: %s", err)
        else:
            report.linear_index = index.linear_index
            report.multiplicity = index.multiplicity
            report.morse_R = index.morse_R
            report.morse_negR = index.morse_negR
            report.kernel_dim = index.kernel_dim
            if simple and index.multiplicity == 1 and index.linear_index != cfg.k:
                logger.warning(
                    "lambda_p sits at position %d of its induced pencil, not %d.",
                    index.linear_index, cfg.k,
                )
    if report.oscillating:
        logger.warning(
            "Residual oscillations in the last steps: %d sign changes.",
            report.oscillations,
        )
    logger.info(
        "k=%d: lambda_p=%.12g residual=%.3e converged=%s after %d iterations.",
        cfg.k, lambda_p, res, converged, state.iter,
    )
    return report, flow.trace

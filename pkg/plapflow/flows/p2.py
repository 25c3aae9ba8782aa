# -*- coding: utf-8 -*-
"""
First [p,2]-eigenpair by descent of the convex edge energy
L(mu) = 1/lambda_1(mu, nu) + M_E(mu) at fixed node weights nu
"""
import logging
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np

from plapflow.common.constants import INIT_RANDOM, MAX_TAU_HALVINGS, STALL_WINDOW
from plapflow.common.exceptions import FlowError, VerificationError
from plapflow.flows.base import FlowConfig, FlowTrace, WeightFlow
from plapflow.flows.saddle import powered_target
from plapflow.graphs.base import Graph, is_connected
from plapflow.operators.differential import gradient
from plapflow.operators.rayleigh import rayleigh_p2, weighted_norm2
from plapflow.operators.weights import WeightPair, as_edge_function, as_node_function
from plapflow.spectra.energy import mass
from plapflow.spectra.linear import generalized_spectrum, multiplicity
from plapflow.verification.residuals import residual_p2

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class P2Result:
    """
    lambda_p2 = lambda_1(mu*, nu)^(p-1); quotient = R_{p,2,nu}(f), equal to it
    at convergence with a second-order error; energy = L(mu*); tau is the
    step size of the final attempt.
    """

    lambda_p2: float
    quotient: float
    f: np.ndarray = field(repr=False)
    mu_star: np.ndarray = field(repr=False)
    energy: float
    residual: float
    converged: bool
    iters: int
    trace: FlowTrace = field(repr=False)
    tau: float = 0.0

    def energy_identity_gap(self, p: float) -> float:
        """|L(mu*) - (2p-2)/p lambda_p2^(-1/(p-1))|, zero at the minimum."""
        return abs(self.energy - (2 * p - 2) / p * self.lambda_p2 ** (-1.0 / (p - 1)))


class P2Flow(WeightFlow):
    """
    Euler descent on mu alone; nu stays fixed and always follows lambda_1.
    """

    def __init__(self, graph: Graph, config: FlowConfig, nu) -> None:
        super().__init__(graph, config)
        self.nu = as_node_function(graph, nu)

    def initial_weights(self) -> WeightPair:
        if self.config.init == INIT_RANDOM:
            rng = np.random.default_rng(self.config.seed)
            return WeightPair(rng.uniform(0.5, 1.5, self.graph.num_edges), self.nu)
        return WeightPair(np.ones(self.graph.num_edges), self.nu)

    def eigenpair(self, w: WeightPair) -> Tuple[float, np.ndarray, bool]:
        spec = generalized_spectrum(self.graph, w, self.config.delta)
        lam, f = spec.pair(1)
        return lam, f, multiplicity(spec, lam) == 1

    def update(self, w: WeightPair, lam: float, f: np.ndarray) -> WeightPair:
        grad_f = gradient(self.graph, f)
        node_norm = weighted_norm2(f, w.nu)
        if not (lam > 0 and node_norm > 0):
            raise FlowError(f"Degenerate first eigenpair: lambda={lam!r}.")
        target = powered_target(
            w.mu, self.config.exponent, grad_f ** 2 / (lam ** 2 * node_norm)
        )
        mu = w.mu + self.config.tau * (target - w.mu)
        bad = np.flatnonzero(~np.isfinite(mu))
        if bad.size:
            raise FlowError(f"Non-finite edge weight update at edge index {int(bad[0])}.")
        return WeightPair(mu, w.nu)

    def step_residual(self, lam: float, f: np.ndarray) -> float:
        try:
            p = self.config.p
            return residual_p2(self.graph, f, lam ** (p - 1), p, self.nu)
        except VerificationError:
            return float("nan")


def solve_p2_first(
    graph: Graph,
    nu,
    p: float,
    cfg: Optional[FlowConfig] = None,
    mu0=None,
) -> P2Result:
    """
    First eigenpair of the [p,2]-Laplacian Delta_p f = lambda ||f||_{2,nu}^(p-2) nu f.

    When err stops decreasing (the explicit step overshoots into a cycle) the
    descent restarts from its initial weights with tau halved, at most
    MAX_TAU_HALVINGS times. All attempts share the max_iter budget.

    Args:
        graph (Graph): connected graph with a nonempty boundary
        nu (NodeFunction): strictly positive node weights
        p (float): exponent, p > 2
        cfg (Optional[FlowConfig]): initial step size and stopping rule; k is
            ignored. Defaults to FlowConfig(p).
        mu0 (Optional[EdgeFunction]): starting edge weights

    Returns:
        P2Result
    """
    cfg = FlowConfig(p) if cfg is None else cfg
    if cfg.p != p:
        raise FlowError(f"Config exponent {cfg.p} differs from p={p}.")
    if cfg.k != 1:
        cfg = replace(cfg, k=1)
    if graph.num_interior == 0:
        raise FlowError("The graph has no interior nodes.")
    nu = as_node_function(graph, nu)
    if not np.all(nu > 0):
        raise FlowError(f"Node weights must be positive; nu[{int(np.argmin(nu))}] is not.")
    if not graph.boundary:
        logger.warning("Empty boundary: the [p,2] problem has no positive minimum.")
    if not is_connected(graph):
        logger.warning("The interior of %r is disconnected.", graph)

    w0 = None if mu0 is None else WeightPair(as_edge_function(graph, mu0), nu)
    budget, used = cfg.max_iter, 0
    for halvings in range(MAX_TAU_HALVINGS + 1):
        flow = P2Flow(graph, cfg, nu)
        state, converged = flow.run(w0, stall_window=STALL_WINDOW)
        used += state.iter
        if converged or not flow.is_stalled or halvings == MAX_TAU_HALVINGS:
            break
        if used >= budget:
            break
        logger.info("Restarting the [p,2] descent with tau=%g.", cfg.tau / 2)
        cfg = replace(cfg, tau=cfg.tau / 2, max_iter=budget - used)
    if flow.is_stalled and not converged:
        logger.warning("The [p,2] descent still stalls at tau=%g.", cfg.tau)

    lam, f, _ = flow.eigenpair(state.w)
    lambda_p2 = lam ** (p - 1)
    try:
        res = residual_p2(graph, f, lambda_p2, p, nu)
    except VerificationError as err:
        logger.warning("Residual unavailable: %s", err)
        res = float("nan")
    return P2Result(
        lambda_p2=lambda_p2,
        quotient=rayleigh_p2(graph, f, p, nu),
        f=np.array(f),
        mu_star=np.array(state.w.mu),
        energy=1.0 / lam + mass(state.w.mu, p),
        residual=res,
        converged=converged,
        iters=used,
        trace=flow.trace,
        tau=cfg.tau,
    )


def node_energy(
    graph: Graph, nu, p: float, cfg: Optional[FlowConfig] = None
) -> Tuple[float, P2Result]:
    """
    Node energy L_V(nu) = (2p-2)/p lambda_{[p,2,nu],1}^(-1/(p-1)) - M_V(nu), the
    saddle energy E_{p,1} once mu has been minimized out. It is maximal at the
    node weights nu* of the first p-eigenpair, where L_V(nu*) = E_{p,1} and
    lambda_{[p,2,nu*],1}^(p/(2p-2)) = lambda_{p,1}.

    Args:
        graph (Graph): connected graph with a nonempty boundary
        nu (NodeFunction): strictly positive node weights
        p (float): exponent, p > 2
        cfg (Optional[FlowConfig]): configuration of the inner [p,2] descent

    Returns:
        (value, result): L_V(nu) and the [p,2] solve it was computed from
    """
    result = solve_p2_first(graph, nu, p, cfg)
    if not result.converged:
        logger.warning("Inner [p,2] descent did not converge; L_V(nu) is approximate.")
    nu = as_node_function(graph, nu)
    value = (2 * p - 2) / p * result.lambda_p2 ** (-1.0 / (p - 1)) - mass(nu, p)
    return value, result

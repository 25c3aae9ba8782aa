# -*- coding: utf-8 -*-
"""
Base Weight Flow Classes
"""
import csv
import io
import logging
import math
from abc import ABCMeta, abstractmethod
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List, Optional, Set, Tuple

import numpy as np

from plapflow.common.constants import (
    DEFAULT_DELTA,
    DEFAULT_MAX_ITER,
    DEFAULT_TAU,
    DEFAULT_TOL,
    INIT_CHOICES,
    INIT_ONES,
    OSCILLATION_WINDOW,
    STALL_RATIO,
)
from plapflow.common.exceptions import FlowError
from plapflow.graphs.base import Graph
from plapflow.operators.weights import WeightPair

logger = logging.getLogger(__name__)

TRACE_HEADER = ("iter", "lambda", "err_mu", "err_nu", "err", "residual")


@dataclass
class FlowConfig:
    """
    Parameters of an explicit Euler weight flow.

    p (float): exponent, p > 2
    k (int): spectral index followed by the flow
    tau (float): step size in (0, 1]; tau <= 1 keeps the weights positive
    delta (float): regularization added to both pencil weights, > 0
    tol (float): stop once err < tol
    max_iter (int): iteration cap
    init (str): "ones" or "random" initial weights
    seed (Optional[int]): seed of the random initialization
    record_every (int): trace stride
    """

    p: float
    k: int = 1
    tau: float = DEFAULT_TAU
    delta: float = DEFAULT_DELTA
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    init: str = INIT_ONES
    seed: Optional[int] = None
    record_every: int = 1

    def __post_init__(self):
        self._params_validation()

    def _params_validation(self):
        if not isinstance(self.p, (int, float)) or isinstance(self.p, bool):
            raise FlowError(f"p must be a real number, got {self.p!r}.")
        if not (math.isfinite(self.p) and self.p > 2):
            raise FlowError(f"The flow needs p > 2, got {self.p}.")
        for name in ("k", "max_iter", "record_every"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise FlowError(f"{name} must be a positive integer, got {value!r}.")
        if not 0 < self.tau <= 1:
            raise FlowError(f"tau must lie in (0, 1], got {self.tau}.")
        if not (math.isfinite(self.delta) and self.delta > 0):
            raise FlowError(f"delta must be positive, got {self.delta}.")
        if not self.tol > 0:
            raise FlowError(f"tol must be positive, got {self.tol}.")
        if self.init not in INIT_CHOICES:
            raise FlowError(f"init must be one of {INIT_CHOICES}, got {self.init!r}.")

    @property
    def exponent(self) -> float:
        """(p - 4) / (p - 2), the power of the current weight in the update."""
        return (self.p - 4.0) / (self.p - 2.0)

    @classmethod
    def from_params(cls, params: Dict[str, Any]) -> "FlowConfig":
        """
        Args:
            params (Dict[str, Any]): must include "p"; other keys are FlowConfig fields
        """
        if "p" not in params:
            raise FlowError("Please include p in params.")
        known = {f.name for f in fields(cls)}
        unknown = set(params) - known
        if unknown:
            raise FlowError(f"Unknown flow parameters: {sorted(unknown)}.")
        return cls(**params)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True, eq=False)
class FlowState:
    """
    Weights after `iter` steps, with the k-th pencil eigenpair that produced them.
    """

    w: WeightPair
    iter: int = 0
    lam: Optional[float] = None
    f: Optional[np.ndarray] = field(default=None, repr=False)
    simple: bool = True


@dataclass
class FlowTrace:
    """
    Per recorded step: iteration, pencil eigenvalue, relative increments and
    the nonlinear residual. err is always max(err_mu, err_nu).
    """

    iter: List[int] = field(default_factory=list)
    lam: List[float] = field(default_factory=list)
    err_mu: List[float] = field(default_factory=list)
    err_nu: List[float] = field(default_factory=list)
    err: List[float] = field(default_factory=list)
    residual: List[float] = field(default_factory=list)
    simple: List[bool] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.iter)

    def record(
        self,
        iteration: int,
        lam: float,
        errors: Tuple[float, float, float],
        residual: float,
        simple: bool = True,
    ) -> None:
        err_mu, err_nu, err = errors
        self.iter.append(iteration)
        self.lam.append(lam)
        self.err_mu.append(err_mu)
        self.err_nu.append(err_nu)
        self.err.append(err)
        self.residual.append(residual)
        self.simple.append(simple)

    def rows(self):
        return zip(self.iter, self.lam, self.err_mu, self.err_nu, self.err, self.residual)

    def to_csv(self) -> str:
        """CSV text with header iter,lambda,err_mu,err_nu,err,residual."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        for it, lam, err_mu, err_nu, err, res in self.rows():
            values = (lam, err_mu, err_nu, err, res)
            writer.writerow([it] + [repr(float(v)) for v in values])
        return buffer.getvalue()

    def oscillations(self, window: int = OSCILLATION_WINDOW) -> int:
        """
        Number of sign changes of the err increments over the last `window`
        recorded steps.
        """
        tail = np.asarray(self.err[-window:], dtype=float)
        if tail.size < 3:
            return 0
        steps = np.sign(np.diff(tail))
        steps = steps[steps != 0]
        return int(np.count_nonzero(steps[1:] != steps[:-1]))


def convergence_error(
    prev: WeightPair, nxt: WeightPair, tau: float
) -> Tuple[float, float, float]:
    """
    err_mu = ||mu' - mu||_2 / (tau ||mu||_2), likewise err_nu, and their max.
    """
    if not tau > 0:
        raise FlowError(f"tau must be positive, got {tau}.")
    if prev.mu.shape != nxt.mu.shape or prev.nu.shape != nxt.nu.shape:
        raise FlowError("Weight sizes changed between iterates.")
    errors = []
    for old, new, name in ((prev.mu, nxt.mu, "mu"), (prev.nu, nxt.nu, "nu")):
        norm = float(np.linalg.norm(old))
        if norm == 0:
            raise FlowError(f"||{name}||_2 vanished; the relative increment is undefined.")
        errors.append(float(np.linalg.norm(new - old)) / (tau * norm))
    return errors[0], errors[1], max(errors)


class WeightFlow(metaclass=ABCMeta):
    """
    Abstract explicit Euler flow on (mu, nu). Subclasses provide the eigenpair
    feeding each step and the update itself; the loop, the stopping rule and
    the trace are shared.
    """

    def __init__(self, graph: Graph, config: FlowConfig) -> None:
        self.graph = graph
        self.config = config
        self.trace = FlowTrace()
        self.is_stalled = False
        self._zero_weights: Set[Tuple[str, int]] = set()

    @abstractmethod
    def initial_weights(self) -> WeightPair:
        """
        Strictly positive starting weights chosen by config.init.
        """

    @abstractmethod
    def eigenpair(self, w: WeightPair) -> Tuple[float, np.ndarray, bool]:
        """
        Args:
            w (WeightPair): current weights

        Returns:
            (lam, f, simple): the followed pencil eigenpair and whether lam is simple
        """

    @abstractmethod
    def update(self, w: WeightPair, lam: float, f: np.ndarray) -> WeightPair:
        """
        One Euler update of the weights from the eigenpair (lam, f) of w.
        """

    @abstractmethod
    def step_residual(self, lam: float, f: np.ndarray) -> float:
        """
        Residual of the nonlinear eigen-equation recorded in the trace.
        """

    def step(self, state: FlowState) -> FlowState:
        lam, f, simple = self.eigenpair(state.w)
        w = self.update(state.w, lam, f)
        return FlowState(w, state.iter + 1, lam, f, simple)

    def _check_weights(self, w: WeightPair, iteration: int) -> None:
        for kind, values in (("edge", w.mu), ("node", w.nu)):
            for index in np.flatnonzero(values == 0):
                if (kind, int(index)) in self._zero_weights:
                    continue
                self._zero_weights.add((kind, int(index)))
                logger.warning(
                    "The weight of %s %d underflowed to zero at iteration %d.",
                    kind, index, iteration,
                )

    @staticmethod
    def stalled(errors: List[float], window: int) -> bool:
        """
        True when the smallest err of the last `window` steps is not below
        STALL_RATIO times the smallest err of the window before. Checked only
        at multiples of `window`.
        """
        n = len(errors)
        if n < 2 * window or n % window:
            return False
        return min(errors[-window:]) > STALL_RATIO * min(errors[-2 * window:-window])

    def run(
        self, w0: Optional[WeightPair] = None, stall_window: Optional[int] = None
    ) -> Tuple[FlowState, bool]:
        """
        Iterates until err < tol or max_iter steps.

        Args:
            w0 (Optional[WeightPair]): starting weights. Defaults to initial_weights().
            stall_window (Optional[int]): stop early, with self.is_stalled set, once
                err makes no progress over this many steps

        Returns:
            (state, converged): last state and whether the stopping rule fired
        """
        cfg = self.config
        state = FlowState((w0 or self.initial_weights()).check_sizes(self.graph))
        self.trace = FlowTrace()
        self.is_stalled = False
        self._zero_weights = set()
        errs: List[float] = []
        converged = False
        non_simple = 0
        logger.info(
            "Starting %s: p=%g k=%d tau=%g delta=%g on %r.",
            type(self).__name__, cfg.p, cfg.k, cfg.tau, cfg.delta, self.graph,
        )
        for _ in range(cfg.max_iter):
            new_state = self.step(state)
            self._check_weights(new_state.w, new_state.iter)
            errors = convergence_error(state.w, new_state.w, cfg.tau)
            converged = errors[2] < cfg.tol
            if not new_state.simple:
                non_simple += 1
            if converged or new_state.iter % cfg.record_every == 0:
                res = self.step_residual(new_state.lam, new_state.f)
                self.trace.record(
                    new_state.iter, new_state.lam, errors, res, new_state.simple
                )
                logger.debug(
                    "iter %d: lambda=%.12g err=%.3e residual=%.3e",
                    new_state.iter, new_state.lam, errors[2], res,
                )
            state = new_state
            if converged:
                break
            if stall_window:
                errs.append(errors[2])
                if self.stalled(errs, stall_window):
                    self.is_stalled = True
                    break
        if non_simple:
            logger.warning("lambda_%d was not simple in %d steps.", cfg.k, non_simple)
        if converged:
            logger.info("Converged after %d iterations.", state.iter)
        elif self.is_stalled:
            logger.info("err stalled at %.3e after %d iterations.", errs[-1], state.iter)
        else:
            logger.warning("No convergence within %d iterations.", cfg.max_iter)
        return state, converged

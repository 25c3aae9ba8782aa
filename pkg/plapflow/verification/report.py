# -*- coding: utf-8 -*-
"""
Eigenpair report emitted by flow runs
"""
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from plapflow.common.constants import OSCILLATION_THRESHOLD
from plapflow.operators.weights import WeightPair

# report.json keys, in emission order
REPORT_KEYS = (
    "lambda_p",
    "lambda_lin",
    "residual",
    "linear_index",
    "multiplicity",
    "morse_R",
    "morse_negR",
    "converged",
    "iters",
    "p",
    "k",
    "tau",
    "delta",
    "oscillations",
)


@dataclass(eq=False)
class EigenReport:
    """
    Outcome of a flow run. Morse fields are None when the final eigenpair could
    not be verified at tolerance.
    """

    lambda_p: float
    lambda_lin: float
    f: np.ndarray = field(repr=False)
    w: WeightPair = field(repr=False)
    residual: float
    converged: bool
    iters: int
    p: float
    k: int
    tau: float
    delta: float
    linear_index: Optional[int] = None
    multiplicity: Optional[int] = None
    morse_R: Optional[int] = None
    morse_negR: Optional[int] = None
    kernel_dim: Optional[int] = None
    oscillations: int = 0

    @property
    def oscillating(self) -> bool:
        return self.oscillations > OSCILLATION_THRESHOLD

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready scalars; floats keep their full round-trip precision."""
        out: Dict[str, Any] = {}
        for key in REPORT_KEYS:
            value = getattr(self, key)
            if isinstance(value, (bool, np.bool_)):
                value = bool(value)
            elif isinstance(value, (int, np.integer)):
                value = int(value)
            elif isinstance(value, (float, np.floating)):
                value = float(value)
            out[key] = value
        return out

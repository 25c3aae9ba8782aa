"""
Edge and node weight measures
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from plapflow.common.exceptions import GraphError, SpectrumError
from plapflow.graphs.base import Graph


def as_node_function(graph: Graph, f) -> np.ndarray:
    """
    Validates a real vector indexed by graph.interior.
    """
    values = np.asarray(f, dtype=float)
    if values.shape != (graph.num_interior,):
        raise GraphError(
            f"Node function must have shape ({graph.num_interior},), got {values.shape}."
        )
    return values


def as_edge_function(graph: Graph, g) -> np.ndarray:
    """
    Validates a real vector indexed by graph.edges.
    """
    values = np.asarray(g, dtype=float)
    if values.shape != (graph.num_edges,):
        raise GraphError(
            f"Edge function must have shape ({graph.num_edges},), got {values.shape}."
        )
    return values


@dataclass(frozen=True, eq=False)
class WeightPair:
    """
    Nonnegative measures: mu on the stored edges, nu on the interior nodes.
    """

    mu: np.ndarray
    nu: np.ndarray

    def __post_init__(self):
        mu = np.array(self.mu, dtype=float)
        nu = np.array(self.nu, dtype=float)
        if mu.ndim != 1 or nu.ndim != 1:
            raise SpectrumError("Weights must be one-dimensional arrays.")
        if not (np.all(np.isfinite(mu)) and np.all(np.isfinite(nu))):
            raise SpectrumError("Weights must be finite.")
        if np.any(mu < 0):
            raise SpectrumError(f"Negative edge weight at edge {int(np.argmin(mu))}.")
        if np.any(nu < 0):
            raise SpectrumError(f"Negative node weight at node {int(np.argmin(nu))}.")
        mu.flags.writeable = False
        nu.flags.writeable = False
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)

    def check_sizes(self, graph: Graph) -> "WeightPair":
        as_edge_function(graph, self.mu)
        as_node_function(graph, self.nu)
        return self

    def scaled(self, c: float, d: float) -> "WeightPair":
        """(c mu, d nu)"""
        return WeightPair(c * self.mu, d * self.nu)

    def shifted(self, delta: float) -> "WeightPair":
        """(mu + delta, nu + delta)"""
        return WeightPair(self.mu + delta, self.nu + delta)

    @classmethod
    def ones(cls, graph: Graph) -> "WeightPair":
        return cls(np.ones(graph.num_edges), np.ones(graph.num_interior))

    @classmethod
    def random(
        cls,
        graph: Graph,
        seed: Optional[int] = None,
        low: float = 0.5,
        high: float = 1.5,
    ) -> "WeightPair":
        """Strictly positive weights drawn uniformly from [low, high)."""
        rng = np.random.default_rng(seed)
        return cls(
            rng.uniform(low, high, graph.num_edges),
            rng.uniform(low, high, graph.num_interior),
        )

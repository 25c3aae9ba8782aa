# -*- coding: utf-8 -*-
"""
Weighted Laplacians and the generalized eigenproblem L_mu f = lambda diag(nu) f
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from plapflow.common.constants import tie_tolerance
from plapflow.common.exceptions import SpectrumError
from plapflow.graphs.base import Graph
from plapflow.operators.weights import WeightPair, as_edge_function, as_node_function


def assemble_weighted_laplacian(graph: Graph, mu) -> np.ndarray:
    """
    L_mu = grad^T diag(mu) grad as a dense symmetric matrix over the interior nodes.

    Args:
        graph (Graph): graph
        mu (EdgeFunction): nonnegative edge weights

    Returns:
        laplacian (np.ndarray): |interior| x |interior| positive semidefinite matrix
    """
    mu = as_edge_function(graph, mu)
    if not np.all(np.isfinite(mu)):
        raise SpectrumError("Edge weights must be finite.")
    if np.any(mu < 0):
        raise SpectrumError(f"Negative edge weight at edge {int(np.argmin(mu))}.")
    incidence = graph.incidence
    laplacian = (incidence.T @ sp.diags(mu) @ incidence).toarray()
    return 0.5 * (laplacian + laplacian.T)


def kernel_dimension(graph: Graph, w: WeightPair, tol: Optional[float] = None) -> int:
    """
    dim(Ker(L_mu) cap Ker(diag(nu))), by the rank of the stacked kernel conditions.
    """
    n = graph.num_interior
    if n == 0:
        return 0
    stacked = np.vstack([assemble_weighted_laplacian(graph, w.mu), np.diag(w.nu)])
    if tol is None:
        return n - int(np.linalg.matrix_rank(stacked))
    return n - int(np.linalg.matrix_rank(stacked, tol=tol))


@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    Ascending generalized eigenvalues of (L_{mu+delta}, diag(nu+delta)).

    Column j of eigenvectors pairs with eigenvalues[j]; columns are normalized
    to ||f||_{2,nu+delta} = 1 with their first largest-magnitude entry positive.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    delta: float
    graph: Graph = field(repr=False)
    weights: WeightPair = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.eigenvalues)

    @cached_property
    def kernel_dim(self) -> int:
        """dim(Ker(L_mu) cap Ker(diag(nu))) of the unregularized pencil."""
        return kernel_dimension(self.graph, self.weights)

    @property
    def well_defined(self) -> int:
        """Number of well-defined eigenvalues of the unregularized pencil."""
        return self.size - self.kernel_dim

    def pair(self, k: int):
        """
        Args:
            k (int): 1-based spectral index

        Returns:
            (lambda_k, f_k)
        """
        if not 1 <= k <= self.size:
            raise SpectrumError(f"Index k={k} outside [1, {self.size}].")
        return float(self.eigenvalues[k - 1]), self.eigenvectors[:, k - 1]


def generalized_spectrum(graph: Graph, w: WeightPair, delta: float = 0.0) -> Spectrum:
    """
    Full spectrum of L_{mu+delta} f = lambda diag(nu+delta) f.

    The mass matrix is diagonal, so the pencil reduces exactly to the standard
    symmetric problem D^{-1/2} L D^{-1/2} y = lambda y with f = D^{-1/2} y.

    Args:
        graph (Graph): graph
        w (WeightPair): nonnegative weights; nu > 0 is required when delta = 0
        delta (float): regularization shift added to every edge and node weight

    Returns:
        spectrum (Spectrum)
    """
    w.check_sizes(graph)
    if graph.num_interior == 0:
        raise SpectrumError("The graph has no interior nodes.")
    if not np.isfinite(delta) or delta < 0:
        raise SpectrumError(f"Regularization must be a finite delta >= 0, got {delta}.")
    if delta == 0 and np.any(w.nu == 0):
        raise SpectrumError(
            f"delta = 0 with a zero node weight at node {int(np.argmin(w.nu))}."
        )

    laplacian = assemble_weighted_laplacian(graph, w.mu + delta)
    scaling = 1.0 / np.sqrt(w.nu + delta)
    reduced = scaling[:, None] * laplacian * scaling[None, :]
    try:
        eigenvalues, vectors = scipy.linalg.eigh(reduced)
    except (np.linalg.LinAlgError, ValueError) as err:
        raise SpectrumError(f"Eigen-solve failed: {err}")
    eigenvectors = scaling[:, None] * vectors

    # sign convention: first largest-magnitude entry positive
    if eigenvectors.size:
        pivots = np.argmax(np.abs(eigenvectors), axis=0)
        signs = np.sign(eigenvectors[pivots, np.arange(eigenvectors.shape[1])])
        signs[signs == 0] = 1.0
        eigenvectors = eigenvectors * signs[None, :]

    eigenvalues = np.maximum(eigenvalues, 0.0)
    eigenvalues.flags.writeable = False
    eigenvectors.flags.writeable = False
    return Spectrum(eigenvalues, eigenvectors, float(delta), graph, w)


def linear_index(spec: Spectrum, lam: float, tol: Optional[float] = None) -> int:
    """
    1-based position of lam in the spectrum, ties resolved to the smallest index.

    Args:
        spec (Spectrum): spectrum to search
        lam (float): eigenvalue to locate
        tol (Optional[float]): matching tolerance. Defaults to 1e-8 (1 + |lam|).
    """
    tol = tie_tolerance(lam) if tol is None else tol
    matches = np.flatnonzero(np.abs(spec.eigenvalues - lam) <= tol)
    if not matches.size:
        raise SpectrumError(f"No eigenvalue within {tol:g} of {lam!r}.")
    return int(matches[0]) + 1


def multiplicity(spec: Spectrum, lam: float, tol: Optional[float] = None) -> int:
    """
    Number of eigenvalues within tol of lam.
    """
    tol = tie_tolerance(lam) if tol is None else tol
    count = int(np.count_nonzero(np.abs(spec.eigenvalues - lam) <= tol))
    if not count:
        raise SpectrumError(f"No eigenvalue within {tol:g} of {lam!r}.")
    return count

"""
Unittests for the weighted pencil spectra and the spectral energies

python -m unittest tests/test_spectra.py
"""
import unittest

import numpy as np
import scipy.linalg
from numpy.testing import assert_allclose

from plapflow import (
    Graph,
    NonSimpleEigenvalue,
    SpectrumError,
    WeightPair,
    assemble_weighted_laplacian,
    build_grid,
    divergence,
    energy_gradient,
    energy_k,
    generalized_spectrum,
    grad_inv_lambda,
    gradient,
    inv_lambda_gradient_from_pair,
    kernel_dimension,
    linear_index,
    mass,
    mass_gradient,
    multiplicity,
)
from tests.base import path2, random_connected_graph, single_edge


def decoupled_pair() -> Graph:
    """Two interior nodes, each tied only to its own boundary node."""
    return Graph(4, [0, 3], [(0, 1, 1.0), (2, 3, 1.0)])


class TestWeightedLaplacian(unittest.TestCase):
    """
    Assembly of L_mu
    """

    def test_path(self):
        assert_allclose(
            assemble_weighted_laplacian(path2(), np.ones(3)), [[2.0, -1.0], [-1.0, 2.0]]
        )

    def test_grid_center(self):
        assert_allclose(assemble_weighted_laplacian(build_grid(3, 3), np.ones(4)), [[16.0]])

    def test_zero_weights(self):
        assert_allclose(assemble_weighted_laplacian(path2(), np.zeros(3)), 0.0)

    def test_matches_operators(self):
        graph = build_grid(5, 4)
        rng = np.random.default_rng(11)
        mu = rng.uniform(0.1, 2.0, graph.num_edges)
        f = rng.standard_normal(graph.num_interior)
        assert_allclose(
            assemble_weighted_laplacian(graph, mu) @ f,
            divergence(graph, mu * gradient(graph, f)),
            atol=1e-12,
        )

    def test_negative_weight(self):
        with self.assertRaises(SpectrumError):
            assemble_weighted_laplacian(path2(), [1.0, -1.0, 1.0])


class TestGeneralizedSpectrum(unittest.TestCase):
    """
    The pencil (L_{mu+delta}, diag(nu+delta))
    """

    def test_path(self):
        graph = path2()
        spec = generalized_spectrum(graph, WeightPair.ones(graph))
        assert_allclose(spec.eigenvalues, [1.0, 3.0])
        _, f1 = spec.pair(1)
        _, f2 = spec.pair(2)
        assert_allclose(f1, np.array([1.0, 1.0]) / np.sqrt(2))
        self.assertAlmostEqual(abs(f2[0] / f2[1]), 1.0)
        self.assertLess(f2[0] * f2[1], 0)

    def test_induced_weights(self):
        spec = generalized_spectrum(path2(), WeightPair([1.0, 2.0, 1.0], [1.0, 1.0]))
        assert_allclose(spec.eigenvalues, [1.0, 5.0])
        self.assertEqual(linear_index(spec, 5.0, 1e-8), 2)
        self.assertEqual(multiplicity(spec, 5.0), 1)

    def test_double_eigenvalue(self):
        graph = decoupled_pair()
        spec = generalized_spectrum(graph, WeightPair.ones(graph))
        assert_allclose(spec.eigenvalues, [1.0, 1.0])
        self.assertEqual(linear_index(spec, 1.0), 1)
        self.assertEqual(multiplicity(spec, 1.0, 1e-8), 2)

    def test_no_match(self):
        graph = path2()
        spec = generalized_spectrum(graph, WeightPair.ones(graph))
        self.assertEqual(linear_index(spec, 1.0), 1)
        with self.assertRaises(SpectrumError):
            multiplicity(spec, 2.0)
        with self.assertRaises(SpectrumError):
            linear_index(spec, 2.0)

    def test_zero_node_weight_needs_delta(self):
        graph = path2()
        w = WeightPair([1.0, 1.0, 1.0], [1.0, 0.0])
        with self.assertRaises(SpectrumError):
            generalized_spectrum(graph, w, 0.0)
        spec = generalized_spectrum(graph, w, 1e-8)
        self.assertEqual(spec.size, 2)
        self.assertTrue(np.all(np.isfinite(spec.eigenvalues)))
        with self.assertRaises(SpectrumError):
            generalized_spectrum(graph, w, -1.0)

    def test_pair_range(self):
        graph = path2()
        spec = generalized_spectrum(graph, WeightPair.ones(graph))
        with self.assertRaises(SpectrumError):
            spec.pair(0)
        with self.assertRaises(SpectrumError):
            spec.pair(3)

    def test_characteristic_polynomial(self):
        for seed in range(10):
            graph = random_connected_graph(3, seed)
            w = WeightPair.random(graph, seed=seed)
            spec = generalized_spectrum(graph, w)
            pencil = assemble_weighted_laplacian(graph, w.mu) / w.nu[:, None]
            roots = np.sort(np.real(np.roots(np.poly(pencil))))
            assert_allclose(spec.eigenvalues, roots, rtol=1e-10)

    def test_invariants(self):
        rng = np.random.default_rng(5)
        for seed in range(100):
            graph = random_connected_graph(int(rng.integers(1, 9)), seed)
            w = WeightPair.random(graph, seed=seed, low=0.1, high=2.0)
            delta = float(rng.choice([0.0, 1e-8, 1e-3]))
            spec = generalized_spectrum(graph, w, delta)
            vals, vecs = spec.eigenvalues, spec.eigenvectors
            mass_matrix = np.diag(w.nu + delta)
            laplacian = assemble_weighted_laplacian(graph, w.mu + delta)
            self.assertTrue(np.all(np.diff(vals) >= 0))
            self.assertTrue(np.all(vals >= 0))
            assert_allclose(vecs.T @ mass_matrix @ vecs, np.eye(spec.size), atol=1e-10)
            for j in range(spec.size):
                col = vecs[:, j]
                res = np.linalg.norm(laplacian @ col - vals[j] * mass_matrix @ col)
                self.assertLessEqual(res, 1e-10 * (1 + vals[j]))
                pivot = np.argmax(np.abs(col))
                self.assertGreater(col[pivot], 0)

    def test_scaling_covariance(self):
        graph = build_grid(5, 5)
        w = WeightPair.random(graph, seed=2)
        base = generalized_spectrum(graph, w)
        scaled = generalized_spectrum(graph, w.scaled(2.5, 0.4))
        assert_allclose(scaled.eigenvalues / base.eigenvalues, 2.5 / 0.4, rtol=1e-12)

    def test_min_max(self):
        rng = np.random.default_rng(17)
        for seed in range(3):
            graph = random_connected_graph(3, seed)
            w = WeightPair.random(graph, seed=seed)
            spec = generalized_spectrum(graph, w)
            laplacian = assemble_weighted_laplacian(graph, w.mu)
            mass_matrix = np.diag(w.nu)
            for k in (1, 2, 3):
                lam_k = spec.eigenvalues[k - 1]
                for _ in range(200):
                    q = np.linalg.qr(rng.standard_normal((3, k)))[0]
                    top = scipy.linalg.eigh(
                        q.T @ laplacian @ q, q.T @ mass_matrix @ q, eigvals_only=True
                    )[-1]
                    self.assertGreaterEqual(top, lam_k - 1e-8)
                q = spec.eigenvectors[:, :k]
                top = scipy.linalg.eigh(
                    q.T @ laplacian @ q, q.T @ mass_matrix @ q, eigvals_only=True
                )[-1]
                self.assertAlmostEqual(top, lam_k, places=8)

    def test_kernel_dimension(self):
        graph = path2()
        w = WeightPair(np.zeros(3), [1.0, 0.0])
        self.assertEqual(kernel_dimension(graph, w), 1)
        spec = generalized_spectrum(graph, w, 1e-12)
        self.assertEqual(spec.kernel_dim, 1)
        self.assertEqual(spec.well_defined, 1)
        w = WeightPair([1.0, 0.0, 1.0], [1.0, 1.0])
        self.assertEqual(kernel_dimension(graph, w), 0)


class TestEnergy(unittest.TestCase):
    """
    Masses, E_{p,k} and the derivatives of 1/lambda_k
    """

    def test_mass(self):
        self.assertAlmostEqual(mass([1.0, 1.0, 1.0], 3), 1.0)
        self.assertAlmostEqual(mass([1.0, 1.0], 4), 1.0)
        self.assertAlmostEqual(mass([0.25], 3), 0.0052083333, places=10)
        with self.assertRaises(SpectrumError):
            mass([1.0], 2)
        assert_allclose(mass_gradient([0.25, 4.0], 3), [0.0625, 16.0])

    def test_energy_path(self):
        graph = path2()
        w = WeightPair.ones(graph)
        self.assertAlmostEqual(energy_k(graph, w, 3, 1), 4.0 / 3.0)
        self.assertAlmostEqual(energy_k(graph, w, 3, 2), 2.0 / 3.0)

    def test_saddle_value(self):
        graph = single_edge(2.0)
        c = 2.0 ** (-2.0 / 3.0)
        w = WeightPair([c], [c])
        self.assertAlmostEqual(energy_k(graph, w, 3, 1), 0.25, places=12)
        grad = energy_gradient(graph, w, 3, 1)
        assert_allclose(grad.d_mu, 0.0, atol=1e-12)
        assert_allclose(grad.d_nu, 0.0, atol=1e-12)

    def test_grad_inv_lambda_path(self):
        graph = path2()
        w = WeightPair.ones(graph)
        grad = grad_inv_lambda(graph, w, 3, 1)
        assert_allclose(grad.d_mu, [-0.5, 0.0, -0.5], atol=1e-12)
        assert_allclose(grad.d_nu, [0.5, 0.5])
        self.assertTrue(grad.simple)
        grad = grad_inv_lambda(graph, w, 3, 2)
        assert_allclose(grad.d_mu, [-1 / 18, -4 / 18, -1 / 18])
        assert_allclose(grad.d_nu, [1 / 6, 1 / 6])

    def test_signs(self):
        graph = build_grid(5, 5)
        w = WeightPair.random(graph, seed=4)
        grad = grad_inv_lambda(graph, w, 3, 1)
        self.assertTrue(np.all(grad.d_mu <= 0))
        self.assertTrue(np.all(grad.d_nu >= 0))

    def test_non_simple(self):
        graph = decoupled_pair()
        w = WeightPair.ones(graph)
        with self.assertRaises(NonSimpleEigenvalue) as ctx:
            grad_inv_lambda(graph, w, 3, 1)
        self.assertEqual(ctx.exception.multiplicity, 2)
        self.assertEqual(ctx.exception.k, 1)
        with self.assertLogs("plapflow.spectra.energy", level="WARNING"):
            flagged = grad_inv_lambda(graph, w, 3, 1, allow_multiple=True)
        self.assertFalse(flagged.simple)

    def test_normalization_invariance(self):
        graph = build_grid(4, 5)
        w = WeightPair.random(graph, seed=8)
        spec = generalized_spectrum(graph, w, 1e-8)
        lam, f = spec.pair(2)
        ref = inv_lambda_gradient_from_pair(graph, f, lam, w, 1e-8)
        other = inv_lambda_gradient_from_pair(graph, -f / np.linalg.norm(f), lam, w, 1e-8)
        assert_allclose(other.d_mu, ref.d_mu, rtol=1e-12, atol=1e-15)
        assert_allclose(other.d_nu, ref.d_nu, rtol=1e-12, atol=1e-15)

    def test_exponent_check(self):
        graph = path2()
        with self.assertRaises(SpectrumError):
            energy_k(graph, WeightPair.ones(graph), 2.0, 1)


if __name__ == "__main__":
    unittest.main()

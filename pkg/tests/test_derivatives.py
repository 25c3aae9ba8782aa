"""
Unittests for the finite-difference derivative suites

python -m unittest tests/test_derivatives.py
"""
import unittest

import numpy as np
from numpy.testing import assert_allclose

from plapflow import (
    FlowConfig,
    Graph,
    NonSimpleEigenvalue,
    VerificationError,
    WeightPair,
    build_grid,
    fd_grad_inv_lambda,
    fd_grad_lambda1_p2,
    fd_mass_gradient,
    run_flow,
    second_derivative_suite,
)
from tests.base import path2, random_connected_graph, single_edge


class TestGradInvLambda(unittest.TestCase):
    """
    Analytic derivatives of 1/lambda_k against central differences
    """

    def test_path(self):
        graph = path2()
        w = WeightPair.random(graph, seed=0)
        for k in (1, 2):
            self.assertLess(fd_grad_inv_lambda(graph, w, 3.0, k).max_rel_err, 1e-5)

    def test_grid(self):
        for size, seed in ((4, 0), (6, 1)):
            graph = build_grid(size, size)
            w = WeightPair.random(graph, seed=seed)
            for k in (1, 2, 4):
                with self.subTest(size=size, k=k):
                    check = fd_grad_inv_lambda(graph, w, 3.0, k)
                    self.assertLess(check.max_rel_err, 1e-5)
                    self.assertEqual(
                        check.analytic.shape, (graph.num_edges + graph.num_interior,)
                    )

    def test_random_graphs(self):
        for seed in range(5):
            graph = random_connected_graph(5, seed)
            w = WeightPair.random(graph, seed=seed)
            self.assertLess(fd_grad_inv_lambda(graph, w, 4.0, 3).max_rel_err, 1e-4)

    def test_regularized(self):
        graph = build_grid(4, 5)
        w = WeightPair.random(graph, seed=3)
        self.assertLess(fd_grad_inv_lambda(graph, w, 3.0, 2, delta=1e-3).max_rel_err, 1e-5)

    def test_non_simple(self):
        graph = Graph(4, [0, 3], [(0, 1, 1.0), (2, 3, 1.0)])
        with self.assertRaises(NonSimpleEigenvalue):
            fd_grad_inv_lambda(graph, WeightPair.ones(graph), 3.0, 1)

    def test_small_weights(self):
        graph = path2()
        w = WeightPair([1e-9, 1.0, 1.0], [1.0, 1.0])
        with self.assertRaises(VerificationError):
            fd_grad_inv_lambda(graph, w, 3.0, 1)


class TestMassGradient(unittest.TestCase):
    """
    Derivative of the weight mass
    """

    def test_central_differences(self):
        for p in (3.0, 4.0, 6.5):
            check = fd_mass_gradient([0.5, 1.0, 2.0], p)
            self.assertLess(check.max_rel_err, 1e-6)

    def test_p3_values(self):
        # w^(2/(p-2)) at p = 3
        check = fd_mass_gradient([0.5, 2.0], 3.0)
        assert_allclose(check.analytic, [0.25, 4.0])


class TestGradLambdaP2(unittest.TestCase):
    """
    Derivative of the first [p,2]-eigenvalue in the node weights
    """

    def test_single_edge(self):
        # lambda_1(nu) = 8 nu^(-3/2) at omega = 2, p = 3
        check = fd_grad_lambda1_p2(single_edge(2.0), [1.0], 3.0)
        assert_allclose(check.analytic, [-12.0], rtol=1e-6)
        self.assertLess(check.max_rel_err, 1e-5)

    def test_path(self):
        graph = path2()
        nu = WeightPair.random(graph, seed=2).nu
        check = fd_grad_lambda1_p2(graph, nu, 3.0)
        self.assertLess(check.max_rel_err, 1e-4)
        self.assertTrue(np.all(check.analytic < 0))

    def test_grid(self):
        graph = build_grid(4, 4)
        nu = WeightPair.random(graph, seed=0).nu
        check = fd_grad_lambda1_p2(graph, nu, 3.0)
        self.assertLess(check.max_rel_err, 1e-4)
        self.assertTrue(np.all(check.analytic < 0))

    def test_inner_failure(self):
        cfg = FlowConfig(3.0, tol=1e-14, max_iter=2)
        with self.assertRaises(VerificationError):
            fd_grad_lambda1_p2(path2(), [1.0, 1.0], 3.0, cfg=cfg)


class TestSecondDerivativeSuite(unittest.TestCase):
    """
    Second-derivative identity over random tangent directions
    """

    def test_exact_eigenfunction(self):
        self.assertLess(second_derivative_suite(path2(), [1.0, -1.0], 3.0, seed=0), 1e-4)

    def test_scale_free(self):
        err = second_derivative_suite(path2(), [-250.0, 250.0], 3.0, seed=1)
        self.assertLess(err, 1e-4)

    def test_flow_eigenfunction(self):
        graph = path2()
        report, _ = run_flow(graph, FlowConfig(3.0, k=2, tol=1e-10, max_iter=50000))
        self.assertTrue(report.converged)
        self.assertLess(second_derivative_suite(graph, report.f, 3.0, seed=2), 1e-4)

    def test_grid_eigenfunction(self):
        graph = build_grid(4, 4)
        report, _ = run_flow(graph, FlowConfig(3.5))
        self.assertTrue(report.converged)
        self.assertLess(second_derivative_suite(graph, report.f, 3.5, seed=0), 1e-4)

    def test_random_graph_tangents(self):
        for seed in (0, 1):
            graph = random_connected_graph(4, seed)
            cfg = FlowConfig(3.5, tol=1e-8, max_iter=50000)
            report, _ = run_flow(graph, cfg)
            self.assertTrue(report.converged)
            err = second_derivative_suite(graph, report.f, 3.5, n_directions=20, seed=seed)
            self.assertLess(err, 1e-3)

    def test_kinked_eigenfunction(self):
        # grad f vanishes on the middle edge; the error is first order in h
        self.assertLess(second_derivative_suite(path2(), [1.0, 1.0], 3.0, seed=3), 1e-4)

    def test_single_node(self):
        self.assertEqual(second_derivative_suite(single_edge(), [1.0], 3.0), 0.0)

    def test_zero_function(self):
        with self.assertRaises(VerificationError):
            second_derivative_suite(path2(), [0.0, 0.0], 3.0)


if __name__ == "__main__":
    unittest.main()

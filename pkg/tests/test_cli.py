"""
Unittests for the plapflow command line

python -m unittest tests/test_cli.py
"""
import contextlib
import csv
import io
import json
import os
import tempfile
import unittest

from numpy.testing import assert_allclose

from plapflow import Graph, read_graph, write_eigenfunction, write_graph
from plapflow.cli import main
from tests.base import path2


class TestCli(unittest.TestCase):
    """
    Subcommands and their exit codes
    """

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = self._tmp.name
        self.graph_path = os.path.join(self.tmp, "path2.json")
        write_graph(path2(), self.graph_path)

    def tearDown(self):
        self._tmp.cleanup()

    def run_main(self, *argv):
        out = io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
            code = main(list(argv))
        return code, out.getvalue()

    def assertUsageExit(self, *argv):
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as ctx:
                main(list(argv))
        self.assertEqual(ctx.exception.code, 64)

    def test_gridgen(self):
        out = os.path.join(self.tmp, "grid.json")
        code, _ = self.run_main("gridgen", "--rows", "3", "--cols", "3", "--out", out)
        self.assertEqual(code, 0)
        graph = read_graph(out)
        self.assertEqual(graph.num_nodes, 9)
        self.assertEqual(graph.interior, (4,))
        self.assertIsNotNone(graph.positions)

    def test_gridgen_too_small(self):
        out = os.path.join(self.tmp, "grid.json")
        code, _ = self.run_main("gridgen", "--rows", "1", "--cols", "5", "--out", out)
        self.assertEqual(code, 64)
        self.assertFalse(os.path.exists(out))

    def test_solve(self):
        out = os.path.join(self.tmp, "solve")
        code, stdout = self.run_main(
            "solve", "--graph", self.graph_path, "--p", "3", "--k", "2", "--out", out
        )
        self.assertEqual(code, 0)
        self.assertIn("converged=True", stdout)
        with open(os.path.join(out, "report.json")) as in_file:
            report = json.load(in_file)
        assert_allclose(report["lambda_p"], 5.0, rtol=1e-4)
        self.assertEqual(report["k"], 2)
        with open(os.path.join(out, "manifest.json")) as in_file:
            manifest = json.load(in_file)
        self.assertEqual(manifest["command"], "solve")
        self.assertEqual(manifest["config"]["k"], 2)
        self.assertEqual(
            sorted(os.path.basename(path) for path in manifest["outputs"]),
            ["eigenfunction.csv", "manifest.json", "report.json", "trace.csv"],
        )

    def test_solve_not_converged(self):
        out = os.path.join(self.tmp, "solve")
        code, stdout = self.run_main(
            "solve", "--graph", self.graph_path, "--p", "3", "--max-iter", "2", "--out", out
        )
        self.assertEqual(code, 2)
        self.assertIn("converged=False", stdout)
        self.assertTrue(os.path.exists(os.path.join(out, "report.json")))

    def test_solve_usage(self):
        out = os.path.join(self.tmp, "solve")
        self.assertUsageExit("solve", "--graph", self.graph_path, "--p", "3", "--k", "0",
                             "--out", out)
        self.assertUsageExit("solve", "--graph", self.graph_path, "--p", "2", "--out", out)
        code, _ = self.run_main(
            "solve", "--graph", self.graph_path, "--p", "3", "--k", "3", "--out", out
        )
        self.assertEqual(code, 64)
        code, _ = self.run_main(
            "solve", "--graph", self.graph_path, "--p", "3", "--tau", "2", "--out", out
        )
        self.assertEqual(code, 64)
        code, _ = self.run_main(
            "solve", "--graph", os.path.join(self.tmp, "missing.json"), "--p", "3",
            "--out", out,
        )
        self.assertEqual(code, 64)

    def test_sweep(self):
        out = os.path.join(self.tmp, "sweep")
        code, stdout = self.run_main(
            "sweep", "--graph", self.graph_path, "--p", "4", "--kmax", "2", "--out", out
        )
        self.assertEqual(code, 0)
        self.assertIn("k=2", stdout)
        with open(os.path.join(out, "summary.csv"), newline="") as in_file:
            rows = list(csv.DictReader(in_file))
        assert_allclose([float(row["lambda_p"]) for row in rows], [1.0, 9.0], rtol=1e-4)
        with open(os.path.join(out, "manifest.json")) as in_file:
            self.assertEqual(len(json.load(in_file)["outputs"]), 8)

    def test_verify(self):
        eig_path = os.path.join(self.tmp, "eigenfunction.csv")
        write_eigenfunction(path2(), [1.0, -1.0], eig_path)
        args = ["verify", "--graph", self.graph_path, "--eigenfunction", eig_path]
        code, stdout = self.run_main(*args, "--lambda", "5", "--p", "3")
        self.assertEqual(code, 0)
        self.assertIn("linear_index=2", stdout)
        self.assertIn("morse_R=1", stdout)
        code, stdout = self.run_main(*args, "--lambda", "4.9", "--p", "3")
        self.assertEqual(code, 1)
        self.assertIn("morse: unavailable", stdout)

    def test_verify_bad_eigenfunction(self):
        eig_path = os.path.join(self.tmp, "eigenfunction.csv")
        with open(eig_path, "w") as out_file:
            out_file.write("node_id,value\n1,1.0\n")
        code, _ = self.run_main(
            "verify", "--graph", self.graph_path, "--eigenfunction", eig_path,
            "--lambda", "5", "--p", "3",
        )
        self.assertEqual(code, 64)

    def test_fdcheck(self):
        code, stdout = self.run_main("fdcheck", "--graph", self.graph_path, "--p", "3")
        self.assertEqual(code, 0)
        for name in ("grad_inv_lambda", "grad_lambda1_p2", "second_derivative"):
            self.assertIn(f"{name}: max_rel_err=", stdout)
        self.assertNotIn("FAILED", stdout)

    def test_fdcheck_grid(self):
        grid_path = os.path.join(self.tmp, "grid4.json")
        code, _ = self.run_main("gridgen", "--rows", "4", "--cols", "4", "--out", grid_path)
        self.assertEqual(code, 0)
        code, stdout = self.run_main("fdcheck", "--graph", grid_path, "--p", "3")
        self.assertEqual(code, 0)
        self.assertIn("grad_lambda1_p2: max_rel_err=", stdout)
        self.assertNotIn("FAILED", stdout)

    def test_fdcheck_empty_boundary(self):
        graph_path = os.path.join(self.tmp, "free.json")
        write_graph(Graph(3, [], [(0, 1, 1.0), (1, 2, 1.0)]), graph_path)
        code, _ = self.run_main("fdcheck", "--graph", graph_path, "--p", "3")
        self.assertEqual(code, 64)

    def test_verify_zero_eigenfunction(self):
        eig_path = os.path.join(self.tmp, "eigenfunction.csv")
        write_eigenfunction(path2(), [0.0, 0.0], eig_path)
        code, _ = self.run_main(
            "verify", "--graph", self.graph_path, "--eigenfunction", eig_path,
            "--lambda", "5", "--p", "3",
        )
        self.assertEqual(code, 1)

    def test_oversized_weight(self):
        graph_path = os.path.join(self.tmp, "huge.json")
        with open(graph_path, "w") as out_file:
            out_file.write(
                '{"nodes": 3, "boundary": [0, 2], "edges": [[0, 1, 1' + "0" * 400
                + '], [1, 2, 1.0]]}'
            )
        out = os.path.join(self.tmp, "solve")
        code, _ = self.run_main("solve", "--graph", graph_path, "--p", "3", "--out", out)
        self.assertEqual(code, 64)

    def test_fdcheck_usage(self):
        self.assertUsageExit("fdcheck", "--graph", self.graph_path, "--p", "2")
        self.assertUsageExit("fdcheck", "--graph", self.graph_path)
        self.assertUsageExit()


if __name__ == "__main__":
    unittest.main()

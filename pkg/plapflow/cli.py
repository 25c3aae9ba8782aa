# -*- coding: utf-8 -*-
"""
plapflow command line: gridgen, solve, sweep, verify, fdcheck
"""
import argparse
import logging
import math
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

from plapflow.common.constants import (
    DEFAULT_DELTA,
    DEFAULT_MAX_ITER,
    DEFAULT_TAU,
    DEFAULT_TOL,
    EXIT_NOT_CONVERGED,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFY_FAILED,
    FDCHECK_TOL,
    INIT_CHOICES,
    INIT_ONES,
    VERIFY_TOL,
)
from plapflow.common.exceptions import (
    FlowError,
    GraphError,
    NonSimpleEigenvalue,
    PlapflowError,
    VerificationError,
)
from plapflow.flows.base import FlowConfig
from plapflow.flows.saddle import run_flow
from plapflow.graphs.io import read_graph, write_graph
from plapflow.graphs.lattice import build_grid
from plapflow.operators.weights import WeightPair
from plapflow.tools.artifacts import read_eigenfunction, write_json, write_solve_outputs
from plapflow.tools.benchmarking import SpectralSweep
from plapflow.tools.derivatives import (
    fd_grad_inv_lambda,
    fd_grad_lambda1_p2,
    second_derivative_suite,
)
from plapflow.verification.duality import dual_edge_pair
from plapflow.verification.morse import morse_index
from plapflow.verification.residuals import residual

logger = logging.getLogger(__name__)


class UsageError(PlapflowError):
    """Bad command-line input."""


class ArgumentParser(argparse.ArgumentParser):
    """argparse with the usage exit code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunManifest:
    command: str
    graph: str
    version: str
    config: Optional[Dict[str, Any]] = None
    seconds: float = 0.0
    outputs: List[str] = field(default_factory=list)

    def write(self, out_dir: str) -> str:
        path = os.path.join(out_dir, "manifest.json")
        self.outputs.append(path)
        return write_json(asdict(self), path)


def _version() -> str:
    from plapflow import __version__

    return __version__


def _exponent(text: str) -> float:
    value = float(text)
    if not value > 2:
        raise argparse.ArgumentTypeError(f"p must exceed 2, got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _add_flow_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tau", type=float, default=DEFAULT_TAU)
    parser.add_argument("--delta", type=float, default=DEFAULT_DELTA)
    parser.add_argument("--tol", type=float, default=DEFAULT_TOL)
    parser.add_argument("--max-iter", type=_positive_int, default=DEFAULT_MAX_ITER)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--init", choices=INIT_CHOICES, default=INIT_ONES)
    parser.add_argument("--record-every", type=_positive_int, default=1)


def _flow_config(args: argparse.Namespace, k: int) -> FlowConfig:
    try:
        return FlowConfig(
            p=args.p,
            k=k,
            tau=args.tau,
            delta=args.delta,
            tol=args.tol,
            max_iter=args.max_iter,
            init=args.init,
            seed=args.seed,
            record_every=args.record_every,
        )
    except FlowError as err:
        raise UsageError(str(err))


def cmd_gridgen(args: argparse.Namespace) -> int:
    try:
        graph = build_grid(args.rows, args.cols)
    except GraphError as err:
        raise UsageError(str(err))
    write_graph(graph, args.out)
    print(f"Wrote {graph!r} to {args.out}")
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    graph = read_graph(args.graph)
    cfg = _flow_config(args, args.k)
    if cfg.k > graph.num_interior:
        raise UsageError(f"--k {cfg.k} exceeds the {graph.num_interior} interior nodes.")
    report, trace = run_flow(graph, cfg)
    outputs = write_solve_outputs(graph, report, trace, args.out)
    manifest = RunManifest(
        "solve", args.graph, _version(), cfg.to_dict(), time.perf_counter() - start, outputs
    )
    manifest.write(args.out)
    print(
        f"lambda_p={report.lambda_p!r} residual={report.residual:.3e} "
        f"converged={report.converged} iters={report.iters}"
    )
    return EXIT_OK if report.converged else EXIT_NOT_CONVERGED


def cmd_sweep(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    graph = read_graph(args.graph)
    cfg = _flow_config(args, 1)
    if args.kmax > graph.num_interior:
        raise UsageError(
            f"--kmax {args.kmax} exceeds the {graph.num_interior} interior nodes."
        )
    sweep = SpectralSweep(graph, cfg, args.out)
    if args.jobs > 1:
        records = sweep.sweep_mp(args.kmax, jobs=args.jobs)
    else:
        records = sweep.sweep(args.kmax)

    outputs = [os.path.join(args.out, "summary.csv")]
    for record in records:
        if not record.error:
            k_dir = os.path.join(args.out, f"k_{record.k}")
            outputs += [
                os.path.join(k_dir, name)
                for name in ("report.json", "trace.csv", "eigenfunction.csv")
            ]
        suffix = f" error={record.error}" if record.error else ""
        print(
            f"k={record.k} lambda_p={record.lambda_p!r} residual={record.residual:.3e} "
            f"converged={record.converged}{suffix}"
        )
    manifest = RunManifest(
        "sweep", args.graph, _version(), cfg.to_dict(), time.perf_counter() - start, outputs
    )
    manifest.write(args.out)
    return EXIT_NOT_CONVERGED if sweep.failed else EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    graph = read_graph(args.graph)
    f = read_eigenfunction(graph, args.eigenfunction)
    if not args.lambda_p > 0:
        raise UsageError(f"--lambda must be positive, got {args.lambda_p}.")
    p = args.p
    res = residual(graph, f, args.lambda_p ** (2.0 / p), p)
    print(f"residual={res!r}")
    try:
        index = morse_index(graph, f, args.lambda_p, p, tol=args.tol)
    except PlapflowError as err:
        print(f"morse: unavailable ({err})")
    else:
        print(
            f"linear_index={index.linear_index} multiplicity={index.multiplicity} "
            f"kernel_dim={index.kernel_dim} "
            f"morse_R={index.morse_R} morse_negR={index.morse_negR}"
        )
    try:
        pair = dual_edge_pair(graph, f, args.lambda_p, p)
        print(f"duality_residual={pair.edge_residual!r}")
    except PlapflowError as err:
        print(f"duality: unavailable ({err})")
    return EXIT_OK if res < args.tol else EXIT_VERIFY_FAILED


def cmd_fdcheck(args: argparse.Namespace) -> int:
    graph = read_graph(args.graph)
    if args.k > graph.num_interior:
        raise UsageError(f"--k {args.k} exceeds the {graph.num_interior} interior nodes.")
    if not graph.boundary:
        raise UsageError("fdcheck needs a graph with boundary nodes.")
    w = WeightPair.random(graph, args.seed)
    p = args.p
    results: Dict[str, Optional[float]] = {}

    try:
        results["grad_inv_lambda"] = fd_grad_inv_lambda(graph, w, p, args.k).max_rel_err
    except NonSimpleEigenvalue as err:
        print(f"grad_inv_lambda: skipped ({err})")
        results["grad_inv_lambda"] = None

    try:
        results["grad_lambda1_p2"] = fd_grad_lambda1_p2(graph, w.nu, p).max_rel_err
    except VerificationError as err:
        print(f"grad_lambda1_p2: FAILED ({err})")
        results["grad_lambda1_p2"] = math.inf

    cfg = FlowConfig(p, k=args.k, init=args.init, seed=args.seed)
    report, _ = run_flow(graph, cfg)
    if report.converged:
        results["second_derivative"] = second_derivative_suite(
            graph, report.f, p, seed=args.seed
        )
    else:
        print("second_derivative: skipped (flow did not converge)")
        results["second_derivative"] = None

    passed = True
    for name, err in results.items():
        if err is None:
            continue
        ok = err < args.tol
        passed = passed and ok
        print(f"{name}: max_rel_err={err:.3e} {'ok' if ok else 'FAILED'}")
    return EXIT_OK if passed else EXIT_VERIFY_FAILED


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="plapflow", description="Graph p-Laplacian eigenpairs by spectral energy flows"
    )
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", parser_class=ArgumentParser)
    sub.required = True

    gridgen = sub.add_parser("gridgen", help="write a grid graph on the unit square")
    gridgen.add_argument("--rows", type=int, required=True)
    gridgen.add_argument("--cols", type=int, required=True)
    gridgen.add_argument("--out", required=True)
    gridgen.set_defaults(func=cmd_gridgen)

    solve = sub.add_parser("solve", help="run the flow for one spectral index")
    solve.add_argument("--graph", required=True)
    solve.add_argument("--p", type=_exponent, required=True)
    solve.add_argument("--k", type=_positive_int, default=1)
    solve.add_argument("--out", required=True)
    _add_flow_options(solve)
    solve.set_defaults(func=cmd_solve)

    sweep = sub.add_parser("sweep", help="run the flow for k = 1..kmax")
    sweep.add_argument("--graph", required=True)
    sweep.add_argument("--p", type=_exponent, required=True)
    sweep.add_argument("--kmax", type=_positive_int, required=True)
    sweep.add_argument("--out", required=True)
    sweep.add_argument("--jobs", type=_positive_int, default=1)
    _add_flow_options(sweep)
    sweep.set_defaults(func=cmd_sweep)

    verify = sub.add_parser("verify", help="check a stored eigenpair")
    verify.add_argument("--graph", required=True)
    verify.add_argument("--eigenfunction", required=True)
    verify.add_argument("--lambda", dest="lambda_p", type=float, required=True)
    verify.add_argument("--p", type=_exponent, required=True)
    verify.add_argument("--tol", type=float, default=VERIFY_TOL)
    verify.set_defaults(func=cmd_verify)

    fdcheck = sub.add_parser("fdcheck", help="finite-difference derivative suites")
    fdcheck.add_argument("--graph", required=True)
    fdcheck.add_argument("--p", type=_exponent, required=True)
    fdcheck.add_argument("--k", type=_positive_int, default=1)
    fdcheck.add_argument("--seed", type=int, default=0)
    fdcheck.add_argument("--init", choices=INIT_CHOICES, default=INIT_ONES)
    fdcheck.add_argument("--tol", type=float, default=FDCHECK_TOL)
    fdcheck.set_defaults(func=cmd_fdcheck)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except UsageError as err:
        print(f"{parser.prog}: error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except VerificationError as err:
        print(f"{parser.prog}: verification failed: {err}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    except (PlapflowError, OSError) as err:
        print(f"{parser.prog}: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

# -*- coding: utf-8 -*-
"""
benchmarking classes for plapflow: multi-k spectral sweeps and their plots
"""
import csv
import glob
import logging
import os
from dataclasses import asdict, dataclass, replace
from multiprocessing import Pool
from typing import Dict, List, Optional, Tuple

import numpy as np
import matplotlib.pyplot as plt
from tqdm import tqdm

from plapflow.common.exceptions import FlowError, PlapflowError
from plapflow.flows.base import FlowConfig
from plapflow.flows.saddle import run_flow
from plapflow.graphs.base import Graph
from plapflow.tools.artifacts import read_eigenfunction, write_solve_outputs

plt.rcParams.update({"font.size": 14, "pdf.fonttype": 42, "ps.fonttype": 42})

logger = logging.getLogger(__name__)

SUMMARY_HEADER = (
    "k",
    "lambda_p",
    "residual",
    "iters",
    "converged",
    "oscillating",
    "error",
)


@dataclass
class SweepRecord:
    """One summary.csv row."""

    k: int
    lambda_p: float = float("nan")
    residual: float = float("nan")
    iters: int = 0
    converged: bool = False
    oscillating: bool = False
    error: str = ""

    @property
    def failed(self) -> bool:
        return bool(self.error) or not self.converged


def _solve_one(args: Tuple[Graph, FlowConfig, Optional[str]]) -> SweepRecord:
    """
    Module-level worker so that multiprocessing can pickle it.
    """
    graph, config, out_dir = args
    try:
        report, trace = run_flow(graph, config)
    except PlapflowError as err:
        logger.error("k=%d failed: %s", config.k, err)
        return SweepRecord(config.k, error=str(err))
    if out_dir is not None:
        write_solve_outputs(graph, report, trace, os.path.join(out_dir, f"k_{config.k}"))
    return SweepRecord(
        config.k,
        lambda_p=report.lambda_p,
        residual=report.residual,
        iters=report.iters,
        converged=report.converged,
        oscillating=report.oscillating,
    )


class SpectralSweep:
    """
    Runs the saddle-point flow for k = 1..kmax on one graph. The runs are
    independent, so they may execute in a process pool.
    """

    def __init__(self, graph: Graph, config: FlowConfig, out_dir: Optional[str] = None):
        self.graph = graph
        self.config = config
        self.out_dir = out_dir
        self.records: List[SweepRecord] = []

    def _ks(self, kmax: int) -> List[int]:
        if kmax < 1 or kmax > self.graph.num_interior:
            raise FlowError(
                f"kmax must lie in [1, {self.graph.num_interior}], got {kmax}."
            )
        return list(range(1, kmax + 1))

    def single(self, k: int) -> SweepRecord:
        """
        Solve for the k-th eigenpair and, with an output directory, write its
        artifacts under out_dir/k_{k}/.
        """
        return _solve_one((self.graph, replace(self.config, k=k), self.out_dir))

    def sweep(self, kmax: int) -> List[SweepRecord]:
        """
        Sequential sweep with a progress bar.
        """
        self.records = []
        pbar = tqdm(self._ks(kmax))
        for k in pbar:
            self.records.append(self.single(k))
            pbar.set_description(f"Done with k={k}")
        self._finish()
        return self.records

    def sweep_mp(self, kmax: int, jobs: int = 4) -> List[SweepRecord]:
        """
        Multi-processed sweep; artifacts go to disjoint per-k directories.
        """
        tasks = [
            (self.graph, replace(self.config, k=k), self.out_dir) for k in self._ks(kmax)
        ]
        with Pool(jobs) as pool:
            self.records = list(pool.map(_solve_one, tasks))
        self._finish()
        return self.records

    def _finish(self) -> None:
        self.records.sort(key=lambda record: record.k)
        if self.out_dir is not None:
            self.write_summary(os.path.join(self.out_dir, "summary.csv"))

    def write_summary(self, path: str) -> str:
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w", newline="") as out_file:
            writer = csv.writer(out_file, lineterminator="\n")
            writer.writerow(SUMMARY_HEADER)
            for record in self.records:
                row = asdict(record)
                writer.writerow(
                    [
                        row["k"],
                        repr(float(row["lambda_p"])),
                        repr(float(row["residual"])),
                        row["iters"],
                        int(row["converged"]),
                        int(row["oscillating"]),
                        row["error"],
                    ]
                )
        return path

    @property
    def failed(self) -> bool:
        return any(record.failed for record in self.records)


class SweepAnalysis:
    """
    Loads a sweep directory and reproduces the eigenfunction heat maps and the
    log-residual curves.
    """

    def __init__(self, dirname: str, graph: Graph):
        self.dirname = dirname
        self.graph = graph
        self.summary: List[Dict[str, str]] = []
        self.eigenfunctions: Dict[int, np.ndarray] = {}
        self.traces: Dict[int, Dict[str, np.ndarray]] = {}

    def load_data(self) -> None:
        with open(os.path.join(self.dirname, "summary.csv"), newline="") as in_file:
            self.summary = list(csv.DictReader(in_file))
        for k_dir in sorted(glob.glob(os.path.join(self.dirname, "k_*"))):
            k = int(os.path.basename(k_dir)[2:])
            eig_path = os.path.join(k_dir, "eigenfunction.csv")
            if os.path.exists(eig_path):
                self.eigenfunctions[k] = read_eigenfunction(self.graph, eig_path)
            trace_path = os.path.join(k_dir, "trace.csv")
            if os.path.exists(trace_path):
                data = np.genfromtxt(trace_path, delimiter=",", names=True)
                self.traces[k] = {
                    name: np.atleast_1d(data[name]) for name in data.dtype.names
                }

    def plot_eigenfunctions(self, ncols: int = 3, show: bool = False):
        """
        Heat maps of the loaded eigenfunctions over the graph positions
        (boundary nodes drawn at 0).
        """
        positions = self.graph.positions
        if positions is None:
            raise PlapflowError("Heat maps need node positions.")
        ks = sorted(self.eigenfunctions)
        nrows = max(1, -(-len(ks) // ncols))
        fig, axes = plt.subplots(
            nrows, ncols, figsize=(3.2 * ncols, 3.0 * nrows), dpi=150
        )
        axes = np.atleast_1d(axes).ravel()
        xy = np.array([positions[node] for node in range(self.graph.num_nodes)])
        for ax, k in zip(axes, ks):
            values = np.zeros(self.graph.num_nodes)
            values[list(self.graph.interior)] = self.eigenfunctions[k]
            ax.tricontourf(xy[:, 0], xy[:, 1], values, levels=30, cmap="viridis")
            ax.set_title(f"k={k}", size=10)
            ax.set_aspect("equal")
            ax.set_xticks([])
            ax.set_yticks([])
        for ax in axes[len(ks):]:
            ax.axis("off")
        fig.tight_layout()
        fig.savefig(os.path.join(self.dirname, "eigenfunctions.png"))
        if show:
            plt.show()
        else:
            plt.close(fig)
        return fig

    def plot_residuals(self, show: bool = False):
        fig = plt.figure(figsize=(3.5, 2.5), dpi=200)
        ax = fig.subplots()
        for k in sorted(self.traces):
            trace = self.traces[k]
            ax.semilogy(trace["iter"], trace["residual"], "-", label=f"k={k}")
        ax.set_xlabel("Iteration", size=10)
        ax.set_ylabel("Residual", size=10)
        ax.legend(loc="upper right", prop={"size": 6})
        fig.tight_layout()
        fig.savefig(os.path.join(self.dirname, "residuals.png"))
        if show:
            plt.show()
        else:
            plt.close(fig)
        return fig

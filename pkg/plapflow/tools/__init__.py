"""
Derivative Checks, Artifacts and Benchmarking Tools
"""
from .derivatives import (
    FDCheck,
    fd_grad_inv_lambda,
    fd_mass_gradient,
    fd_grad_lambda1_p2,
    second_derivative_suite,
)
from .artifacts import (
    read_eigenfunction,
    write_eigenfunction,
    write_json,
    write_solve_outputs,
    write_trace,
)
from .benchmarking import SpectralSweep, SweepAnalysis, SweepRecord

__all__ = [
    "FDCheck",
    "fd_grad_inv_lambda",
    "fd_mass_gradient",
    "fd_grad_lambda1_p2",
    "second_derivative_suite",
    "read_eigenfunction",
    "write_eigenfunction",
    "write_json",
    "write_solve_outputs",
    "write_trace",
    "SpectralSweep",
    "SweepAnalysis",
    "SweepRecord",
]

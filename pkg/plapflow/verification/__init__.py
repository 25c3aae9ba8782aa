"""
Eigenpair Verification: residuals, Morse indices, duality
"""
from .residuals import residual, residual_p2
from .morse import (
    MorseIndex,
    SecondDerivativeCheck,
    morse_index,
    fd_second_derivative_identity,
    fd_hessian_morse,
)
from .duality import EdgePair, conjugate_exponent, dual_edge_pair, dual_node_pair
from .report import EigenReport, REPORT_KEYS

__all__ = [
    "residual",
    "residual_p2",
    "MorseIndex",
    "SecondDerivativeCheck",
    "morse_index",
    "fd_second_derivative_identity",
    "fd_hessian_morse",
    "EdgePair",
    "conjugate_exponent",
    "dual_edge_pair",
    "dual_node_pair",
    "EigenReport",
    "REPORT_KEYS",
]

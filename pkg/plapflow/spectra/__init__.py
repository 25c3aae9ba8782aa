"""
Weighted Linear Spectra and Spectral Energies
"""
from .linear import (
    Spectrum,
    assemble_weighted_laplacian,
    kernel_dimension,
    generalized_spectrum,
    linear_index,
    multiplicity,
)
from .energy import (
    EnergyGradient,
    mass,
    mass_gradient,
    energy_k,
    inv_lambda_gradient_from_pair,
    grad_inv_lambda,
    energy_gradient,
    positive_eigenvalue,
)

__all__ = [
    "Spectrum",
    "assemble_weighted_laplacian",
    "kernel_dimension",
    "generalized_spectrum",
    "linear_index",
    "multiplicity",
    "EnergyGradient",
    "mass",
    "mass_gradient",
    "energy_k",
    "inv_lambda_gradient_from_pair",
    "grad_inv_lambda",
    "energy_gradient",
    "positive_eigenvalue",
]

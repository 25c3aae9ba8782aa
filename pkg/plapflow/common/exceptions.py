"""
Exceptions
"""


class PlapflowError(Exception):
    """
    Base class for all plapflow errors
    """


class GraphError(PlapflowError):
    """
    Graph inconsistency errors
    """


class OperatorError(PlapflowError):
    """
    Invalid operator arguments (exponent out of range, zero functions)
    """


class SpectrumError(PlapflowError):
    """
    Generalized eigenproblem errors
    """


class NonSimpleEigenvalue(SpectrumError):
    """
    Raised when a derivative of lambda_k is requested at a repeated eigenvalue.
    """

    def __init__(self, k: int, value: float, multiplicity: int):
        super().__init__(
            f"lambda_{k} = {value!r} has multiplicity {multiplicity}; "
            "the energy is not differentiable here."
        )
        self.k = k
        self.value = value
        self.multiplicity = multiplicity


class FlowError(PlapflowError):
    """
    Invalid flow configuration or breakdown of the iteration
    """


class VerificationError(PlapflowError):
    """
    Eigenpair verification errors
    """

"""
Constants
"""

# flow defaults
DEFAULT_TAU = 0.1
DEFAULT_DELTA = 1e-8
DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITER = 20000

# weight initializations
INIT_ONES = "ones"
INIT_RANDOM = "random"
INIT_CHOICES = (INIT_ONES, INIT_RANDOM)

# relative tolerance deciding when two pencil eigenvalues are "equal"
TIE_RTOL = 1e-8

# below this weight the Euler update is evaluated in log space
TINY_WEIGHT = 1e-280

# pencil regularization used when an eigenfunction has zero entries
MORSE_DELTA = 1e-12

# oscillation diagnostic over the tail of a trace
OSCILLATION_WINDOW = 100
OSCILLATION_THRESHOLD = 10

# a flow stalls when the best err of a window is not 1% below the previous one
STALL_WINDOW = 200
STALL_RATIO = 0.99

# step halvings allowed to the [p,2] descent before it gives up
MAX_TAU_HALVINGS = 6

# acceptance thresholds used by the cli
VERIFY_TOL = 1e-6
FDCHECK_TOL = 1e-4

# cli exit codes
EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_NOT_CONVERGED = 2
EXIT_USAGE = 64


def tie_tolerance(value: float) -> float:
    """Default tolerance for comparing a pencil eigenvalue against `value`."""
    return TIE_RTOL * (1.0 + abs(value))

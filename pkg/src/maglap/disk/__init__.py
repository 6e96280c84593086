"""
The unit disk: Laguerre functions, fiber equations, the radial oracle and
the ground-state derivative identity.
"""

from .laguerre import laguerre, laguerre_analytic, rising_factorial
from .fibers import (
    FiberKind,
    FiberResult,
    F,
    G,
    dirichlet_fiber_function,
    smallest_positive_root,
    bracket_smallest_root,
    default_ceiling,
    mu_n1,
    lambda_n1,
    lambda_01,
    fiber_root_with_extension,
    disk_reference_values,
)
from .oracle import (
    bessel_dirichlet_limit,
    fiber_pencil,
    fiber_oracle,
    fiber_spectrum,
    potential_floor,
)
from .identity import DerivativeQuotient, derivative_quotient, verify_314, gauge_phase_norms

__all__ = [
    # Special functions
    "laguerre",
    "laguerre_analytic",
    "rising_factorial",

    # Fiber equations
    "FiberKind",
    "FiberResult",
    "F",
    "G",
    "dirichlet_fiber_function",
    "smallest_positive_root",
    "bracket_smallest_root",
    "default_ceiling",
    "mu_n1",
    "lambda_n1",
    "lambda_01",
    "fiber_root_with_extension",
    "disk_reference_values",

    # Radial oracle
    "bessel_dirichlet_limit",
    "fiber_pencil",
    "fiber_oracle",
    "fiber_spectrum",
    "potential_floor",

    # Ground-state identity
    "DerivativeQuotient",
    "derivative_quotient",
    "verify_314",
    "gauge_phase_norms",
]

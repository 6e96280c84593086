"""
Finite element layer for maglap: field, quadrature, assembly and the
second-derivative integration identity.
"""

from .field import Gauge, MagneticField
from .quadrature import triangle_rule, gauss_interval, gauss_rectangle, integrate_rectangle
from .assembly import BoundaryCondition, HermitianPencil, assemble, restrict_dirichlet, rayleigh
from .identity import (
    ManufacturedFunction,
    sine_product,
    complex_sine_combination,
    polyhedral_identity_sides,
)

__all__ = [
    # Field
    "Gauge",
    "MagneticField",

    # Quadrature
    "triangle_rule",
    "gauss_interval",
    "gauss_rectangle",
    "integrate_rectangle",

    # Assembly
    "BoundaryCondition",
    "HermitianPencil",
    "assemble",
    "restrict_dirichlet",
    "rayleigh",

    # Identity
    "ManufacturedFunction",
    "sine_product",
    "complex_sine_combination",
    "polyhedral_identity_sides",
]

"""
Generalized Hermitian eigensolver and the spectrum container.
"""

from .spectrum import Spectrum, SpectrumMeta
from .solver import smallest_eigenpairs, residual_report, SUPPORTED_METHODS

__all__ = [
    "Spectrum",
    "SpectrumMeta",
    "smallest_eigenpairs",
    "residual_report",
    "SUPPORTED_METHODS",
]

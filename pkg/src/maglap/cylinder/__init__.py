"""
Right cylinders over pi-symmetric cross-sections: spectrum composition and
the Neumann/Dirichlet index comparisons.
"""

from .compose import (
    ComposedSpectrum,
    IndexCheck,
    InequalityReport,
    axial_energy,
    compose_spectra,
    fiber_cross_section,
    thm12_report,
    fl_baseline_report,
)

__all__ = [
    # Composition
    "ComposedSpectrum",
    "axial_energy",
    "compose_spectra",
    "fiber_cross_section",

    # Reports
    "IndexCheck",
    "InequalityReport",
    "thm12_report",
    "fl_baseline_report",
]

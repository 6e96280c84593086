"""
Index comparisons on right cylinders over pi-symmetric cross-sections.
"""

from typing import Callable, Dict, List, Tuple

import numpy as np

from ...core.config import SPECTRUM_CSV_COLUMNS
from ...core.exceptions import ConfigurationError, TruncationError
from ...cylinder.compose import (
    ComposedSpectrum,
    InequalityReport,
    compose_spectra,
    fiber_cross_section,
    fl_baseline_report,
    thm12_report,
)
from ...eigen.spectrum import Spectrum
from ...fem.assembly import BoundaryCondition
from ...fem.field import MagneticField
from ...geometry.mesh import triangulate
from ...geometry.polygon import CylinderDomain
from ..base import Experiment
from ..config import DomainSpec
from ..pipeline import pencils, richardson_tolerance, solve_pencil, spectrum_rows

MAX_CROSS_SECTION_COUNT = 512
MAX_COUNT_DOUBLINGS = 8

Solver = Callable[[BoundaryCondition, int], Spectrum]


class CylinderExperiment(Experiment):
    """
    Composes cylinder spectra and checks ``mu_{k+2} <= lambda_k`` for simple
    ``lambda_k`` and ``mu_{k+1} <= lambda_k`` for all ``k``.
    """

    command = "cylinder"
    columns = SPECTRUM_CSV_COLUMNS

    def execute(self) -> None:
        domains = self.config.resolved_domains()
        lengths = self._lengths(len(domains))
        for domain, length in zip(domains, lengths):
            if not domain.is_disk:
                # raises GeometryError unless the cross-section is symmetric about the origin
                CylinderDomain(domain.build(), length)
            for b in self.config.b_values:
                self._run_cell(domain, length, b)

    def _lengths(self, n_domains: int) -> List[float]:
        lengths = list(self.config.lengths)
        if len(lengths) == 1:
            return lengths * n_domains
        if len(lengths) != n_domains:
            raise ConfigurationError(f"{len(lengths)} cylinder lengths given for {n_domains} cross-sections")
        return lengths

    def _solvers(self, domain: DomainSpec, b: float) -> Tuple[Solver, Solver, object, object]:
        """Fine and coarse cross-section solvers with their resolution labels."""
        if domain.is_disk:
            grid = self.config.fiber_grid
            coarse_grid = grid // 2
            return (
                lambda bc, count: fiber_cross_section(b, bc, count, grid),
                lambda bc, count: fiber_cross_section(b, bc, count, coarse_grid),
                grid,
                coarse_grid,
            )

        poly = domain.build()
        levels = (self.config.tested_refine, self.config.reference_refine)
        pairs = {
            refine: pencils(triangulate(poly, refine), MagneticField(b, self.config.gauge)) for refine in set(levels)
        }

        def solver(refine: int) -> Solver:
            return lambda bc, count: solve_pencil(
                pairs[refine][bc],
                count,
                domain.name,
                refine,
                self.config.eigen_method,
                self.config.tol("eigen_residual"),
            )

        return solver(levels[0]), solver(levels[1]), levels[0], levels[1]

    def _compose(self, solve: Solver, bc: BoundaryCondition, length: float, count: int) -> Tuple[Spectrum, ComposedSpectrum]:
        cross_count = count
        for _ in range(MAX_COUNT_DOUBLINGS):
            d2 = solve(bc, cross_count)
            try:
                return d2, compose_spectra(d2, length, bc, count)
            except TruncationError as e:
                if cross_count >= MAX_CROSS_SECTION_COUNT:
                    raise ConfigurationError(f"Cylinder composition stays truncated: {e}") from e
                self.logger.debug(f"{e}; retrying with {2 * cross_count} cross-section values")
                cross_count = min(2 * cross_count, MAX_CROSS_SECTION_COUNT)
        raise ConfigurationError(f"Cylinder composition stays truncated with {cross_count} cross-section values")

    def _run_cell(self, domain: DomainSpec, length: float, b: float) -> None:
        fine, coarse, fine_label, coarse_label = self._solvers(domain, b)
        k_max = self.config.k_max
        counts = {BoundaryCondition.DIRICHLET: k_max, BoundaryCondition.NEUMANN: k_max + 2}
        label = f"{domain.name}x(0,{length:g})"

        composed: Dict[BoundaryCondition, ComposedSpectrum] = {}
        errors: List[float] = []
        for bc, count in counts.items():
            d2, spectrum = self._compose(fine, bc, length, count)
            composed[bc] = spectrum
            used = max(i for i, _ in spectrum.provenance)
            reference = coarse(bc, used)
            errors.append(float(np.max(richardson_tolerance(d2.truncated(used), reference))))

            self.report.rows.extend(spectrum_rows(d2.truncated(used), b, domain.name, bc.value, fine_label))
            self.report.rows.extend(spectrum_rows(reference, b, domain.name, bc.value, coarse_label))
            self.report.rows.extend(
                {"b": b, "domain": label, "bc": bc.value, "k": k, "value": float(value), "refine": fine_label}
                for k, value in enumerate(spectrum.values, start=1)
            )

        tol = max(errors)
        dirichlet3, neumann3 = composed[BoundaryCondition.DIRICHLET], composed[BoundaryCondition.NEUMANN]
        shift_two = thm12_report(dirichlet3, neumann3, self.config.tol("simplicity_gap"), tol)
        self._record_inequalities(
            shift_two, "cylinder_shift_two", "mu_{k+2} <= lambda_k for simple lambda_k", label, b,
        )
        for k in shift_two.skipped:
            self.skip(f"{label} b={b:g}: lambda_{k} is not simple, mu_{{k+2}} <= lambda_k not asserted")

        baseline = fl_baseline_report(dirichlet3, neumann3, tol)
        self._record_inequalities(baseline, "cylinder_shift_one", "mu_{k+1} <= lambda_k", label, b)

    def _record_inequalities(self, report: InequalityReport, name: str, statement: str, label: str, b: float) -> None:
        for item in report.checks:
            self.check_upper(name, statement, item.mu, item.lam, item.tol, domain=label, b=b, k=item.k)

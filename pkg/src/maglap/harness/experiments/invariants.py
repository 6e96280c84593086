"""
Structural checks: scaling, gauge, conjugation, pencil properties, the
non-magnetic rectangle, the second-derivative identity and the disk
derivative quotient.
"""

import math
from typing import Optional

import numpy as np

from ...core.config import SPECTRUM_CSV_COLUMNS
from ...core.exceptions import AssemblyError
from ...disk.identity import derivative_quotient, gauge_phase_norms
from ...fem.assembly import BoundaryCondition
from ...fem.field import Gauge, MagneticField
from ...fem.identity import complex_sine_combination, polyhedral_identity_sides, sine_product
from ...geometry.mesh import triangulate
from ..base import Experiment
from ..config import DomainSpec
from ..pipeline import pencils, solve_pencil, spectrum_rows

SCALE_FACTORS = (0.5, 2.0)
SINE_IDENTITY_VALUE = math.pi ** 4 / 4.0


def _max_relative_gap(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(a), np.finfo(float).tiny)))


class InvariantsExperiment(Experiment):
    """Runs every structural check; any failure is a violation."""

    command = "invariants"
    columns = SPECTRUM_CSV_COLUMNS

    def execute(self) -> None:
        self._check_identities()
        for b in self.config.b_values:
            self._check_derivative_quotient(b)
        for domain in self.config.resolved_domains():
            if domain.is_disk:
                self.skip("finite element invariants need a polygon; the disk entry is ignored")
                continue
            self._check_non_magnetic(domain)
            for b in self.config.b_values:
                self._check_pencils(domain, b)
                self._check_scaling(domain, b)
                self._check_conjugation(domain, b)
                self._check_gauge(domain, b)

    def _solve(self, mesh, b: float, bc: BoundaryCondition, label: str, refine: int, gauge: Optional[Gauge] = None):
        pair = pencils(mesh, MagneticField(b, gauge or self.config.gauge))
        spectrum = solve_pencil(
            pair[bc], self.config.k_max, label, refine, self.config.eigen_method, self.config.tol("eigen_residual")
        )
        self.report.rows.extend(spectrum_rows(spectrum, b, label, bc.value, refine))
        return spectrum

    def _check_pencils(self, domain: DomainSpec, b: float) -> None:
        refine = self.config.reference_refine
        mesh = triangulate(domain.build(), refine)
        for bc, pencil in pencils(mesh, MagneticField(b, self.config.gauge)).items():
            try:
                measured = pencil.check_invariants(np.random.default_rng(self.config.seed))
            except AssemblyError as e:
                self.check("pencil_properties", str(e), math.nan, 0.0, False, domain=domain.name, b=b, bc=bc.value)
                continue
            self.check(
                "pencil_properties",
                "K Hermitian, M positive definite, K positive semidefinite",
                measured["hermitian_defect"],
                0.0,
                True,
                domain=domain.name, b=b, bc=bc.value,
            )

    def _check_scaling(self, domain: DomainSpec, b: float) -> None:
        refine = self.config.reference_refine
        mesh = triangulate(domain.build(), refine)
        tol = self.config.tol("scaling")
        for t in SCALE_FACTORS:
            for bc in BoundaryCondition:
                scaled = self._solve(mesh.scaled(t), b, bc, f"{domain.name}*{t:g}", refine)
                reference = self._solve(mesh, b * t * t, bc, domain.name, refine)
                gap = _max_relative_gap(scaled.values, reference.values / (t * t))
                self.check(
                    "scaling",
                    "lambda_k(t D, b) = t^-2 lambda_k(D, b t^2)",
                    gap,
                    tol,
                    gap <= tol,
                    domain=domain.name, b=b, t=t, bc=bc.value,
                )

    def _check_conjugation(self, domain: DomainSpec, b: float) -> None:
        refine = self.config.reference_refine
        mesh = triangulate(domain.build(), refine)
        tol = self.config.tol("conjugation")
        for bc in BoundaryCondition:
            plus = self._solve(mesh, b, bc, domain.name, refine)
            minus = self._solve(mesh, -b, bc, domain.name, refine)
            gap = _max_relative_gap(plus.values, minus.values)
            self.check(
                "conjugation",
                "spec(b) = spec(-b)",
                gap,
                tol,
                gap <= tol,
                domain=domain.name, b=b, bc=bc.value,
            )

    def _check_gauge(self, domain: DomainSpec, b: float) -> None:
        poly = domain.build()
        gaps = {}
        for refine in sorted({self.config.reference_refine, self.config.tested_refine}):
            mesh = triangulate(poly, refine)
            values = {
                gauge: self._solve(mesh, b, BoundaryCondition.DIRICHLET, f"{domain.name}[{gauge.value}]", refine, gauge)
                for gauge in Gauge
            }
            landau = values[Gauge.LANDAU].value(1)
            gaps[refine] = abs(landau - values[Gauge.SYMMETRIC].value(1)) / landau

        coarse, fine = min(gaps), max(gaps)
        tol = self.config.tol("gauge")
        self.check(
            "gauge_discrepancy",
            "|lambda_1(Landau) - lambda_1(symmetric)| / lambda_1 small",
            gaps[coarse],
            tol,
            gaps[coarse] < tol,
            domain=domain.name, b=b, refine=coarse,
        )
        if fine != coarse:
            self.check(
                "gauge_convergence",
                "gauge discrepancy shrinks under refinement",
                gaps[fine] - gaps[coarse],
                0.0,
                gaps[fine] < gaps[coarse],
                domain=domain.name, b=b, refine=fine,
            )

    def _check_non_magnetic(self, domain: DomainSpec) -> None:
        if domain.kind not in ("square", "rectangle"):
            return
        poly = domain.build()
        lo, hi = poly.vertices.min(axis=0), poly.vertices.max(axis=0)
        width, height = hi - lo
        exact = math.pi ** 2 * (1.0 / width ** 2 + 1.0 / height ** 2)

        values = {}
        for refine in sorted({self.config.reference_refine, self.config.tested_refine}):
            mesh = triangulate(poly, refine)
            values[refine] = self._solve(mesh, 0.0, BoundaryCondition.DIRICHLET, domain.name, refine).value(1)
        coarse, fine = min(values), max(values)
        envelope = abs(values[fine] - values[coarse])
        error = values[fine] - exact
        self.check(
            "non_magnetic_rectangle",
            "lambda_1 = pi^2 (1/w^2 + 1/h^2) within the refinement envelope",
            error,
            envelope,
            0.0 <= error + 1e-12 * exact and error <= envelope,
            domain=domain.name, b=0.0, refine=fine,
        )

    def _check_identities(self) -> None:
        tol = self.config.tol("identity")
        lhs, rhs = polyhedral_identity_sides(sine_product())
        for side, value in (("lhs", lhs), ("rhs", rhs)):
            error = abs(value.real - SINE_IDENTITY_VALUE)
            self.check(
                "second_derivative_identity",
                "int (d12 u)^2 = int d11 u d22 u = pi^4/4",
                error,
                tol,
                error <= tol,
                side=side,
            )

        lhs, rhs = polyhedral_identity_sides(complex_sine_combination())
        error = abs(lhs.real - rhs.real)
        self.check(
            "second_derivative_identity_complex",
            "Re int d12 u conj(d12 u) = Re int d22 u conj(d11 u)",
            error,
            tol,
            error <= tol,
        )

    def _check_derivative_quotient(self, b: float) -> None:
        result = derivative_quotient(b)
        tol = self.config.tol("identity_314")
        self.check(
            "derivative_quotient",
            "|(grad - iA) d2 v|^2 / |d2 v|^2 = lambda + boundary flux term",
            abs(result.defect),
            tol,
            abs(result.defect) <= tol,
            b=b, order=result.order,
        )
        gap = result.ratio - result.lam
        self.observe(
            "derivative_quotient_plain",
            "|(grad - iA) d2 v|^2 / |d2 v|^2 = lambda",
            gap,
            abs(gap) <= tol,
            b=b,
        )

        direct, via_symmetric = gauge_phase_norms(b)
        phase_gap = abs(direct - via_symmetric) / via_symmetric
        self.check(
            "landau_phase",
            "|d2 v_L| computed through the Landau phase equals the symmetric-gauge form",
            phase_gap,
            self.config.tol("identity"),
            phase_gap <= self.config.tol("identity"),
            b=b,
        )

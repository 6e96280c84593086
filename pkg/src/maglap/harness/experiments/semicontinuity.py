"""
Neumann eigenvalues of circumscribed polygons approaching the unit disk.
"""

from typing import Dict, List, Tuple

from ...core.config import SPECTRUM_CSV_COLUMNS
from ...core.exceptions import ConfigurationError
from ...cylinder.compose import fiber_cross_section
from ...disk.fibers import FiberKind, disk_reference_values, lambda_01
from ...fem.assembly import BoundaryCondition
from ...geometry.polygon import circumscribed_polygon
from ..base import Experiment
from ..pipeline import PolygonSpectra, richardson_tolerance, solve_polygon, spectrum_rows


class SemicontinuityExperiment(Experiment):
    """
    Compares ``mu_k`` and ``lambda_k`` of circumscribed ``n``-gons with the disk.

    The Neumann deficit ``max(0, mu_k(disk) - mu_k(P_n))`` must not grow along
    the edge counts and must be small at the last one; the Dirichlet values
    must satisfy ``lambda_k(disk) >= lambda_k(P_n)`` since ``P_n`` contains the disk.
    """

    command = "semicontinuity"
    columns = SPECTRUM_CSV_COLUMNS

    def execute(self) -> None:
        edge_counts = list(self.config.n_values)
        if not edge_counts or any(b <= a for a, b in zip(edge_counts, edge_counts[1:])) or edge_counts[0] < 3:
            raise ConfigurationError(f"Edge counts must be increasing and at least 3, got {edge_counts}")
        k = self.config.k_max
        for b in self.config.b_values:
            mu_disk, lam_disk = self._disk_values(b, k)
            self.add_row(b=b, domain="disk", bc="neumann", k=k, value=mu_disk, refine="fiber")
            self.add_row(b=b, domain="disk", bc="dirichlet", k=k, value=lam_disk, refine="fiber")

            deficits: List[Tuple[int, float]] = []
            fine_by_n: Dict[int, PolygonSpectra] = {}
            for n in edge_counts:
                coarse, fine = self._polygon(n, b, k)
                fine_by_n[n] = fine
                mu = fine.neumann.value(k)
                deficits.append((n, max(0.0, mu_disk - mu)))

                lam = fine.dirichlet.value(k)
                envelope = float(richardson_tolerance(fine.dirichlet, coarse.dirichlet)[k - 1])
                self.check_upper(
                    "dirichlet_inclusion",
                    "lambda_k(disk) >= lambda_k(P_n)",
                    lam,
                    lam_disk,
                    envelope,
                    b=b, n=n, k=k,
                )
            self._check_deficits(b, k, mu_disk, deficits)
            self._observe_nesting(b, k, edge_counts, fine_by_n)

    def _disk_values(self, b: float, k: int) -> Tuple[float, float]:
        if k == 1:
            neumann = disk_reference_values(b, FiberKind.NEUMANN_FIBER, count=1)
            return next(iter(neumann.values())).value, lambda_01(b).value
        grid = self.config.fiber_grid
        neumann = fiber_cross_section(b, BoundaryCondition.NEUMANN, k, grid)
        dirichlet = fiber_cross_section(b, BoundaryCondition.DIRICHLET, k, grid)
        return neumann.value(k), dirichlet.value(k)

    def _polygon(self, n: int, b: float, k: int) -> Tuple[PolygonSpectra, PolygonSpectra]:
        poly = circumscribed_polygon(1.0, n)
        label = f"P{n}"
        solved = {}
        for refine in sorted({self.config.reference_refine, self.config.tested_refine}):
            spectra = solve_polygon(
                poly,
                b,
                refine,
                n_dirichlet=k,
                n_neumann=k,
                domain=label,
                gauge=self.config.gauge,
                method=self.config.eigen_method,
                tol=self.config.tol("eigen_residual"),
            )
            solved[refine] = spectra
            self.report.rows.extend(spectrum_rows(spectra.dirichlet, b, label, "dirichlet", refine))
            self.report.rows.extend(spectrum_rows(spectra.neumann, b, label, "neumann", refine))
        levels = sorted(solved)
        return solved[levels[0]], solved[levels[-1]]

    def _check_deficits(self, b: float, k: int, mu_disk: float, deficits: List[Tuple[int, float]]) -> None:
        for (n_prev, prev), (n_next, nxt) in zip(deficits, deficits[1:]):
            self.check_upper(
                "deficit_nonincreasing",
                "max(0, mu_k(disk) - mu_k(P_n)) nonincreasing in n",
                nxt,
                prev,
                0.0,
                b=b, k=k, n=n_next, previous_n=n_prev,
            )
        n_last, last = deficits[-1]
        tol = self.config.tol("semicontinuity") * mu_disk
        self.check_upper(
            "deficit_small",
            "max(0, mu_k(disk) - mu_k(P_n)) small at the finest polygon",
            last,
            0.0,
            tol,
            b=b, k=k, n=n_last,
        )

    def _observe_nesting(self, b: float, k: int, edge_counts: List[int], fine_by_n: Dict[int, PolygonSpectra]) -> None:
        for n_prev, n_next in zip(edge_counts, edge_counts[1:]):
            prev = fine_by_n[n_prev].dirichlet.value(k)
            nxt = fine_by_n[n_next].dirichlet.value(k)
            self.observe(
                "dirichlet_nesting",
                "lambda_k(P_m) >= lambda_k(P_n) for m > n",
                nxt - prev,
                nxt >= prev,
                b=b, k=k, n=n_next, previous_n=n_prev,
            )

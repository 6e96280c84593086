"""
Neumann/Dirichlet index comparison over a corpus of convex polygons.
"""

from ...core.config import SPECTRUM_CSV_COLUMNS
from ...core.exceptions import FactorizationError, SolverConvergenceError
from ..base import Experiment
from ..config import DomainSpec
from ..pipeline import PolygonSpectra, richardson_tolerance, solve_polygon, spectrum_rows

CELL_ERRORS = (SolverConvergenceError, FactorizationError)


class PolygonSweepExperiment(Experiment):
    """
    For every (domain, b) cell solves both spectra at two refinement levels and checks
    ``mu_{k+1} <= lambda_k`` with the Richardson tolerance and ``mu_k <= lambda_k`` exactly.
    """

    command = "polygon-sweep"
    columns = SPECTRUM_CSV_COLUMNS

    def execute(self) -> None:
        for domain in self.config.resolved_domains():
            if domain.is_disk:
                self.skip("polygon-sweep treats polygons only; the disk entry is ignored")
                continue
            poly = domain.build()
            for b in self.config.b_values:
                try:
                    coarse, fine = self._solve_cell(domain, poly, b)
                except CELL_ERRORS as e:
                    self.fail_cell(e, domain=domain.name, b=b)
                    continue
                self._check_cell(domain.name, b, coarse, fine)

    def _solve_cell(self, domain: DomainSpec, poly, b: float):
        cfg = self.config
        levels = sorted({cfg.reference_refine, cfg.tested_refine})
        solved = {}
        for refine in levels:
            spectra = solve_polygon(
                poly,
                b,
                refine,
                n_dirichlet=cfg.k_max,
                n_neumann=cfg.k_max + 2,
                domain=domain.name,
                gauge=cfg.gauge,
                method=cfg.eigen_method,
                tol=cfg.tol("eigen_residual"),
            )
            solved[refine] = spectra
            self.report.rows.extend(spectrum_rows(spectra.dirichlet, b, domain.name, "dirichlet", refine))
            self.report.rows.extend(spectrum_rows(spectra.neumann, b, domain.name, "neumann", refine))
        return solved[levels[0]], solved[levels[-1]]

    def _check_cell(self, domain: str, b: float, coarse: PolygonSpectra, fine: PolygonSpectra) -> None:
        lam_tol = richardson_tolerance(fine.dirichlet, coarse.dirichlet)
        mu_tol = richardson_tolerance(fine.neumann, coarse.neumann)
        refine = fine.refine

        for k in range(1, self.config.k_max + 1):
            lam = fine.dirichlet.value(k)
            tol = float(max(lam_tol[k - 1], mu_tol[k]))
            self.check_upper(
                "neumann_shift_one",
                "mu_{k+1} <= lambda_k",
                fine.neumann.value(k + 1),
                lam,
                tol,
                domain=domain, b=b, k=k, refine=refine,
            )
            self.check_upper(
                "same_mesh_domination",
                "mu^h_k <= lambda^h_k",
                fine.neumann.value(k),
                lam,
                0.0,
                domain=domain, b=b, k=k, refine=refine,
            )
            mu_k2 = fine.neumann.value(k + 2)
            self.observe(
                "neumann_shift_two",
                "mu_{k+2} <= lambda_k (open)",
                mu_k2 - lam,
                mu_k2 <= lam,
                domain=domain, b=b, k=k, refine=refine,
            )

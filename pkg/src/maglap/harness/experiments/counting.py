"""
Eigenvalue counts at the Landau levels ``E = b(2q+1)``.
"""

from typing import Tuple

from ...core.config import SPECTRUM_CSV_COLUMNS
from ...cylinder.compose import fiber_cross_section
from ...eigen.spectrum import Spectrum
from ...fem.assembly import BoundaryCondition
from ...fem.field import MagneticField
from ...geometry.mesh import triangulate
from ..base import Experiment
from ..config import DomainSpec
from ..pipeline import landau_counts, pencils, resolve_beyond, solve_pencil, spectrum_rows

START_COUNT = 4
MAX_DISK_COUNT = 256


class CountingExperiment(Experiment):
    """Checks ``#{lambda_k <= E} + 1 <= #{mu_k < E}`` at every configured Landau level."""

    command = "counting"
    columns = SPECTRUM_CSV_COLUMNS

    def execute(self) -> None:
        tie = self.config.tol("counting_tie")
        for domain in self.config.resolved_domains():
            for b in self.config.b_values:
                top = b * (2 * max(self.config.q_values) + 1) + tie
                dirichlet, neumann, refine = self._spectra(domain, b, top)
                self.report.rows.extend(spectrum_rows(dirichlet, b, domain.name, "dirichlet", refine))
                self.report.rows.extend(spectrum_rows(neumann, b, domain.name, "neumann", refine))

                for q in self.config.q_values:
                    energy = b * (2 * q + 1)
                    n_dirichlet, n_neumann = landau_counts(dirichlet, neumann, energy, tie)
                    self.check(
                        "landau_count",
                        "#{lambda_k <= b(2q+1)} + 1 <= #{mu_k < b(2q+1)}",
                        n_neumann - n_dirichlet - 1,
                        0.0,
                        n_dirichlet + 1 <= n_neumann,
                        domain=domain.name, b=b, q=q, dirichlet_count=n_dirichlet, neumann_count=n_neumann,
                    )

    def _spectra(self, domain: DomainSpec, b: float, top: float) -> Tuple[Spectrum, Spectrum, int]:
        if domain.is_disk:
            grid = self.config.fiber_grid
            solved = tuple(
                resolve_beyond(
                    lambda count, bc=bc: fiber_cross_section(b, bc, count, grid),
                    top,
                    START_COUNT,
                    MAX_DISK_COUNT,
                )
                for bc in (BoundaryCondition.DIRICHLET, BoundaryCondition.NEUMANN)
            )
            return solved[0], solved[1], grid

        refine = self.config.tested_refine
        mesh = triangulate(domain.build(), refine)
        pair = pencils(mesh, MagneticField(b, self.config.gauge))
        solved = tuple(
            resolve_beyond(
                lambda count, pencil=pair[bc]: solve_pencil(
                    pencil, count, domain.name, refine, self.config.eigen_method, self.config.tol("eigen_residual")
                ),
                top,
                START_COUNT,
                pair[bc].dimension,
            )
            for bc in (BoundaryCondition.DIRICHLET, BoundaryCondition.NEUMANN)
        )
        return solved[0], solved[1], refine

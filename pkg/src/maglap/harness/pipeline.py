"""
Shared solve steps of the experiments: polygon spectra on a mesh,
Richardson tolerances, Landau-level counts and CSV rows.
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Tuple

import numpy as np

from ..core.config import DEFAULT_EIGEN_TOL
from ..core.exceptions import ConfigurationError, TruncationError
from ..core.logging import get_logger
from ..eigen.solver import smallest_eigenpairs
from ..eigen.spectrum import Spectrum, SpectrumMeta
from ..fem.assembly import BoundaryCondition, HermitianPencil, assemble, restrict_dirichlet
from ..fem.field import Gauge, MagneticField
from ..geometry.mesh import TriangleMesh, triangulate
from ..geometry.polygon import ConvexPolygon

log = get_logger(__name__)

MAX_COUNT_DOUBLINGS = 8


@dataclass(frozen=True)
class PolygonSpectra:
    """Dirichlet and Neumann spectra computed on one mesh."""

    dirichlet: Spectrum
    neumann: Spectrum
    refine: int
    n_nodes: int


def pencils(mesh: TriangleMesh, field: MagneticField) -> Dict[BoundaryCondition, HermitianPencil]:
    """Neumann pencil of the mesh and its Dirichlet restriction."""
    neumann = assemble(mesh, field)
    return {BoundaryCondition.NEUMANN: neumann, BoundaryCondition.DIRICHLET: restrict_dirichlet(neumann, mesh)}


def solve_pencil(
        pencil: HermitianPencil,
        count: int,
        domain: str,
        refine: int,
        method: str = "hermitian",
        tol: float = DEFAULT_EIGEN_TOL,
) -> Spectrum:
    """
    Lowest ``count`` eigenvalues of a pencil, tagged with their provenance.

    Raises:
        TruncationError: If the pencil has fewer than ``count`` degrees of freedom.
    """
    if count > pencil.dimension:
        raise TruncationError(
            f"{domain} at refine={refine} has only {pencil.dimension} {pencil.bc.value} unknowns, "
            f"{count} eigenvalues requested"
        )
    gauge = pencil.field.gauge.value if pencil.field is not None else None
    b = pencil.field.b if pencil.field is not None else None
    meta = SpectrumMeta(domain=domain, b=b, gauge=gauge, bc=pencil.bc.value, refine=refine)
    return smallest_eigenpairs(pencil, count, tol=tol, method=method, meta=meta)


def solve_polygon(
        poly: ConvexPolygon,
        b: float,
        refine: int,
        n_dirichlet: int,
        n_neumann: int,
        domain: str = "",
        gauge: Gauge = Gauge.LANDAU,
        method: str = "hermitian",
        tol: float = DEFAULT_EIGEN_TOL,
) -> PolygonSpectra:
    """
    Dirichlet and Neumann eigenvalues of a polygon on the same mesh.

    Args:
        poly: The polygon.
        b: Field intensity.
        refine: Mesh refinement level.
        n_dirichlet: Number of Dirichlet eigenvalues.
        n_neumann: Number of Neumann eigenvalues.
        domain: Label for provenance.
        gauge: Vector potential.
        method: Dense eigen route.
        tol: Relative residual tolerance.
    """
    mesh = triangulate(poly, refine)
    pair = pencils(mesh, MagneticField(b, gauge))
    spectra = PolygonSpectra(
        dirichlet=solve_pencil(pair[BoundaryCondition.DIRICHLET], n_dirichlet, domain, refine, method, tol),
        neumann=solve_pencil(pair[BoundaryCondition.NEUMANN], n_neumann, domain, refine, method, tol),
        refine=refine,
        n_nodes=mesh.n_nodes,
    )
    log.info(
        f"{domain or poly!r} b={b} refine={refine}: lambda_1={spectra.dirichlet.value(1):.10g}, "
        f"mu_1={spectra.neumann.value(1):.10g} ({mesh.n_nodes} nodes)"
    )
    return spectra


def richardson_tolerance(fine: Spectrum, coarse: Spectrum) -> np.ndarray:
    """Per-index ``|fine - coarse|`` over the indices both spectra resolve."""
    count = min(len(fine), len(coarse))
    return np.abs(fine.values[:count] - coarse.values[:count])


def resolve_beyond(solve: Callable[[int], Spectrum], energy: float, start: int, limit: int) -> Spectrum:
    """
    Solves with a doubling eigenvalue count until the spectrum is complete beyond ``energy``.

    Args:
        solve: Returns a spectrum with the requested number of values.
        energy: Level that must lie below the spectrum ceiling.
        start: First count tried.
        limit: Largest count allowed.

    Raises:
        ConfigurationError: If ``energy`` stays unresolved.
    """
    count = max(1, min(start, limit))
    for _ in range(MAX_COUNT_DOUBLINGS):
        spectrum = solve(count)
        if spectrum.ceiling is not None and spectrum.ceiling > energy:
            return spectrum
        if count >= limit:
            break
        count = min(2 * count, limit)
    raise ConfigurationError(f"Level {energy:g} is not resolved by {count} eigenvalues; refine or raise the count.")


def landau_counts(dirichlet: Spectrum, neumann: Spectrum, energy: float, tie: float) -> Tuple[int, int]:
    """
    ``#{lambda_k <= E}`` and ``#{mu_k < E}``.

    Values within ``tie`` of ``E`` count in the Dirichlet total and out of the
    Neumann one.

    Raises:
        ConfigurationError: If either spectrum is not complete beyond ``E``.
    """
    try:
        n_dirichlet = dirichlet.count_below(energy + tie, strict=False)
        n_neumann = neumann.count_below(energy - tie, strict=True)
        if energy + tie >= neumann.ceiling:
            raise TruncationError(f"Neumann spectrum complete only below {neumann.ceiling}")
    except TruncationError as e:
        raise ConfigurationError(f"Landau level {energy:g} is unresolved: {e}") from e
    return n_dirichlet, n_neumann


def spectrum_rows(spectrum: Spectrum, b: float, domain: str, bc: str, refine: Any) -> List[Dict[str, Any]]:
    """CSV rows ``(b, domain, bc, k, value, refine)`` of a spectrum."""
    return [
        {"b": b, "domain": domain, "bc": bc, "k": k, "value": float(value), "refine": refine}
        for k, value in enumerate(spectrum.values, start=1)
    ]

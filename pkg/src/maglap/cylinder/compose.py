"""
Spectra of right cylinders ``D x (0, L)`` in a field along the axis.

With ``A = (0, b x1, 0)`` the operator separates: every eigenvalue is a
cross-section eigenvalue plus an axial term ``(pi m / L)^2``, with
``m >= 1`` under Dirichlet and ``m >= 0`` under Neumann conditions.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import DEFAULT_TOLERANCES
from ..core.exceptions import InvalidInputError, TruncationError
from ..core.logging import get_logger
from ..disk.fibers import FiberKind
from ..disk.oracle import fiber_spectrum
from ..eigen.spectrum import Spectrum
from ..fem.assembly import BoundaryCondition

log = get_logger(__name__)


def axial_energy(m: int, length: float) -> float:
    """Axial eigenvalue ``(pi m / L)^2`` of the interval ``(0, L)``."""
    return (math.pi * m / length) ** 2


def _first_axial_mode(bc: BoundaryCondition) -> int:
    return 1 if bc is BoundaryCondition.DIRICHLET else 0


@dataclass(frozen=True)
class ComposedSpectrum:
    """
    Lowest eigenvalues of a cylinder with the pair each one comes from.

    Attributes:
        values: Nondecreasing composed eigenvalues.
        provenance: ``(i, m)`` per value: 1-based cross-section index and axial mode.
        cross_section: Cross-section eigenvalues the values were built from.
        length: Cylinder length ``L``.
        bc: Boundary condition.
        ceiling: Energy below which the composed list is complete.
    """

    values: np.ndarray
    provenance: Tuple[Tuple[int, int], ...]
    cross_section: np.ndarray
    length: float
    bc: BoundaryCondition
    ceiling: float = math.inf

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).reshape(-1)
        if values.size != len(self.provenance):
            raise InvalidInputError(
                f"{values.size} composed values but {len(self.provenance)} provenance pairs"
            )
        if values.size and np.any(np.diff(values) < 0.0):
            raise InvalidInputError("Composed values must be sorted nondecreasing.")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "cross_section", np.asarray(self.cross_section, dtype=float).reshape(-1))

    def __len__(self) -> int:
        return int(self.values.size)

    def value(self, k: int) -> float:
        if not 1 <= k <= len(self):
            raise TruncationError(f"Composed index {k} outside the resolved range 1..{len(self)}")
        return float(self.values[k - 1])

    def recompose(self, k: int) -> float:
        """Recomputes the ``k``-th value from its provenance pair."""
        i, m = self.provenance[k - 1]
        return float(self.cross_section[i - 1]) + axial_energy(m, self.length)


def compose_spectra(d2: Spectrum, length: float, bc: BoundaryCondition, count: int) -> ComposedSpectrum:
    """
    Merges cross-section eigenvalues with the axial modes of ``(0, L)``.

    Cross-section eigenvalues beyond ``d2.ceiling`` are unknown, so every
    cylinder eigenvalue they produce is at least ``d2.ceiling`` plus the
    lowest axial energy. The first ``count`` composed values must lie
    strictly below that bound.

    Args:
        d2: Cross-section spectrum with the same boundary condition.
        length: Cylinder length ``L`` (positive).
        bc: Dirichlet or Neumann.
        count: Number of composed values.

    Returns:
        The ``count`` lowest cylinder eigenvalues with their provenance.

    Raises:
        InvalidInputError: Non-positive ``length`` or ``count``, or an empty ``d2``.
        TruncationError: If ``d2`` does not reach far enough; solve more cross-section values.
    """
    bc = BoundaryCondition(bc)
    if not (math.isfinite(length) and length > 0.0):
        raise InvalidInputError(f"Cylinder length must be positive, got {length}")
    if int(count) != count or count < 1:
        raise InvalidInputError(f"count must be a positive integer, got {count}")
    if len(d2) == 0:
        raise InvalidInputError("Cross-section spectrum is empty.")
    count = int(count)

    m_start = _first_axial_mode(bc)
    d2_values = d2.values
    d2_ceiling = math.inf if d2.ceiling is None else float(d2.ceiling)
    bound = d2_ceiling + axial_energy(m_start, length)

    candidates: List[Tuple[float, int, int]] = []
    limit = bound
    m = m_start
    while d2_values[0] + axial_energy(m, length) < limit:
        axial = axial_energy(m, length)
        candidates.extend((float(value) + axial, i + 1, m) for i, value in enumerate(d2_values))
        if len(candidates) >= count:
            candidates.sort()
            limit = min(bound, candidates[count - 1][0])
            # values with a higher axial mode only tie or exceed the current count-th value
            if d2_values[0] + axial_energy(m + 1, length) > limit:
                break
        m += 1

    candidates.sort()
    if len(candidates) < count or not candidates[count - 1][0] < bound:
        raise TruncationError(
            f"Composing {count} {bc.value} cylinder values needs cross-section eigenvalues above "
            f"{d2_ceiling:.6g}; solve for more than {len(d2)} cross-section values."
        )

    kept = candidates[:count]
    log.debug(
        f"Composed {count} {bc.value} values for L={length:g} from {len(d2)} cross-section values "
        f"(axial modes up to {max(pair[2] for pair in kept)})"
    )
    return ComposedSpectrum(
        values=np.array([value for value, _, _ in kept]),
        provenance=tuple((i, m) for _, i, m in kept),
        cross_section=d2_values,
        length=length,
        bc=bc,
        ceiling=bound,
    )


def fiber_cross_section(b: float, bc: BoundaryCondition, count: int, grid: Optional[int] = None) -> Spectrum:
    """Unit-disk cross-section spectrum assembled from the radial fiber oracles."""
    kind = FiberKind.DIRICHLET_RADIAL if BoundaryCondition(bc) is BoundaryCondition.DIRICHLET else FiberKind.NEUMANN_FIBER
    if grid is None:
        return fiber_spectrum(b, kind, count)
    return fiber_spectrum(b, kind, count, grid)


@dataclass(frozen=True)
class IndexCheck:
    """One ``mu_{k+shift} <= lambda_k + tol`` comparison."""

    k: int
    lam: float
    mu: float
    tol: float
    simple: bool = True

    @property
    def margin(self) -> float:
        """``lambda_k + tol - mu``; non-negative when the inequality holds."""
        return self.lam + self.tol - self.mu

    @property
    def passed(self) -> bool:
        return self.margin >= 0.0


@dataclass
class InequalityReport:
    """
    Index-wise comparison of Neumann and Dirichlet cylinder eigenvalues.

    Attributes:
        shift: ``mu_{k+shift}`` is compared with ``lambda_k``.
        checks: Asserted comparisons.
        skipped: Indices left out because ``lambda_k`` is not simple.
    """

    shift: int
    checks: List[IndexCheck] = field(default_factory=list)
    skipped: List[int] = field(default_factory=list)

    @property
    def violations(self) -> List[IndexCheck]:
        return [check for check in self.checks if not check.passed]

    @property
    def passed(self) -> bool:
        return not self.violations


def _is_simple(values: np.ndarray, ceiling: float, k: int, gap: float) -> bool:
    lam = values[k - 1]
    threshold = gap * abs(lam)
    lower = values[k - 2] if k >= 2 else -math.inf
    upper = values[k] if k < values.size else ceiling
    return lam - lower >= threshold and upper - lam >= threshold


def _tested_range(dirichlet3: ComposedSpectrum, neumann3: ComposedSpectrum, shift: int) -> range:
    return range(1, min(len(dirichlet3), len(neumann3) - shift) + 1)


def thm12_report(
        dirichlet3: ComposedSpectrum,
        neumann3: ComposedSpectrum,
        gap: float = DEFAULT_TOLERANCES["simplicity_gap"],
        tol: float = 0.0,
) -> InequalityReport:
    """
    Checks ``mu_{k+2} <= lambda_k + tol`` wherever ``lambda_k`` is simple.

    ``lambda_k`` counts as simple when its relative distance to both
    neighbours is at least ``gap``; the neighbour above the last value is
    the Dirichlet ceiling. Other indices are listed in ``skipped``.

    Args:
        dirichlet3: Composed Dirichlet cylinder spectrum.
        neumann3: Composed Neumann cylinder spectrum.
        gap: Relative simplicity gap.
        tol: Additive tolerance of the inequality.

    Returns:
        The report; violations are entries, never exceptions.
    """
    report = InequalityReport(shift=2)
    for k in _tested_range(dirichlet3, neumann3, 2):
        if not _is_simple(dirichlet3.values, dirichlet3.ceiling, k, gap):
            report.skipped.append(k)
            continue
        report.checks.append(IndexCheck(k=k, lam=dirichlet3.value(k), mu=neumann3.value(k + 2), tol=tol))

    log.info(
        f"Cylinder k+2 check: {len(report.checks)} indices tested, {len(report.violations)} violations, "
        f"skipped {report.skipped}"
    )
    return report


def fl_baseline_report(
        dirichlet3: ComposedSpectrum,
        neumann3: ComposedSpectrum,
        tol: float = 0.0,
        indices: Optional[Sequence[int]] = None,
) -> InequalityReport:
    """Checks ``mu_{k+1} <= lambda_k + tol`` for every index, simple or not."""
    report = InequalityReport(shift=1)
    tested = _tested_range(dirichlet3, neumann3, 1) if indices is None else indices
    for k in tested:
        report.checks.append(IndexCheck(k=k, lam=dirichlet3.value(k), mu=neumann3.value(k + 1), tol=tol))
    log.info(f"Cylinder k+1 baseline: {len(report.checks)} indices, {len(report.violations)} violations")
    return report

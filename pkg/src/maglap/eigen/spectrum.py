"""
Spectrum container shared by the finite element and disk paths.
"""

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from ..core.exceptions import InvalidInputError, TruncationError


@dataclass(frozen=True)
class SpectrumMeta:
    """Provenance of a spectrum: domain label, field, gauge, boundary condition and mesh level."""

    domain: str = ""
    b: Optional[float] = None
    gauge: Optional[str] = None
    bc: Optional[str] = None
    refine: Optional[int] = None


@dataclass(frozen=True)
class Spectrum:
    """
    Nondecreasing eigenvalues with optional eigenvectors and residuals.

    Attributes:
        values: Eigenvalues, sorted nondecreasing.
        vectors: ``(n, k)`` M-orthonormal eigenvectors, or None.
        residuals: Residual norm per eigenpair (empty when no vectors).
        meta: Provenance.
        ceiling: Energy below which the list is known to be complete.
            Defaults to the last value.
    """

    values: np.ndarray
    vectors: Optional[np.ndarray] = None
    residuals: np.ndarray = field(default_factory=lambda: np.zeros(0))
    meta: SpectrumMeta = field(default_factory=SpectrumMeta)
    ceiling: Optional[float] = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).reshape(-1)
        if values.size and np.any(np.diff(values) < 0.0):
            raise InvalidInputError("Spectrum values must be sorted nondecreasing.")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "residuals", np.asarray(self.residuals, dtype=float).reshape(-1))
        if self.ceiling is None and values.size:
            object.__setattr__(self, "ceiling", float(values[-1]))

    def __len__(self) -> int:
        return int(self.values.size)

    def value(self, k: int) -> float:
        """The ``k``-th eigenvalue, counting from 1."""
        if not 1 <= k <= len(self):
            raise TruncationError(f"Eigenvalue index {k} outside the resolved range 1..{len(self)}")
        return float(self.values[k - 1])

    def truncated(self, count: int) -> "Spectrum":
        """The first ``count`` eigenpairs."""
        if count > len(self):
            raise TruncationError(f"Cannot keep {count} values of a spectrum with {len(self)}")
        vectors = None if self.vectors is None else self.vectors[:, :count]
        residuals = self.residuals[:count] if self.residuals.size else self.residuals
        return replace(
            self,
            values=self.values[:count],
            vectors=vectors,
            residuals=residuals,
            ceiling=float(self.values[count - 1]) if count else None,
        )

    def count_below(self, energy: float, strict: bool) -> int:
        """
        Number of eigenvalues below ``energy`` (``<`` if strict, else ``<=``).

        Raises:
            TruncationError: If ``energy`` is beyond the resolved part of the spectrum.
        """
        if self.ceiling is None or energy >= self.ceiling:
            raise TruncationError(
                f"Level {energy:g} is not resolved (spectrum complete only below {self.ceiling})"
            )
        if strict:
            return int(np.count_nonzero(self.values < energy))
        return int(np.count_nonzero(self.values <= energy))

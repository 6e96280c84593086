"""
Homogeneous magnetic field and its vector potentials.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..core.exceptions import InvalidInputError


class Gauge(str, Enum):
    """Choice of vector potential with curl ``b``."""

    LANDAU = "landau"
    SYMMETRIC = "symmetric"


@dataclass(frozen=True)
class MagneticField:
    """
    Constant field of intensity ``b`` in a fixed gauge.

    Negative and zero intensities are accepted; they are used by the
    conjugation check and the non-magnetic reference computations.

    Attributes:
        b: Field intensity.
        gauge: Gauge of the vector potential.
    """

    b: float
    gauge: Gauge = Gauge.LANDAU

    def __post_init__(self):
        if not math.isfinite(self.b):
            raise InvalidInputError(f"Field intensity must be finite, got {self.b}")
        object.__setattr__(self, "gauge", Gauge(self.gauge))

    def vector_potential(self, points: np.ndarray) -> np.ndarray:
        """
        Evaluates ``A`` at the given points.

        Landau gauge: ``A = (0, b*x1)``. Symmetric gauge: ``A = (-b*x2/2, b*x1/2)``.

        Args:
            points: Array of shape ``(..., 2)``.

        Returns:
            Array of the same shape holding ``A``.
        """
        pts = np.asarray(points, dtype=float)
        x1, x2 = pts[..., 0], pts[..., 1]
        if self.gauge is Gauge.LANDAU:
            return np.stack((np.zeros_like(x1), self.b * x1), axis=-1)
        half = 0.5 * self.b
        return np.stack((-half * x2, half * x1), axis=-1)

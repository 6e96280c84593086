"""
Integration-by-parts identity for second derivatives on convex polygons.

For ``u`` vanishing on the boundary of a convex polygon,

    integral of d_km u * conj(d_kj u)  and  integral of d_mj u * conj(d_kk u)

have equal real parts (and are equal outright for real ``u``). The functions
here evaluate both sides for manufactured ``u`` on rectangles.
"""

import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from ..core.exceptions import InvalidInputError
from .quadrature import gauss_rectangle

HessianFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class ManufacturedFunction:
    """
    A test function given through its Hessian.

    Attributes:
        name: Label used in reports.
        hessian: Maps ``(x, y)`` arrays to an array of shape ``(2, 2, *x.shape)``.
        x_range: Rectangle extent in ``x1`` on which the function vanishes at the boundary.
        y_range: Rectangle extent in ``x2``.
    """

    name: str
    hessian: HessianFunction
    x_range: Tuple[float, float] = (0.0, 1.0)
    y_range: Tuple[float, float] = (0.0, 1.0)


def _sine_hessian(p: int, q: int, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    a, c = p * math.pi, q * math.pi
    sx, cx = np.sin(a * x), np.cos(a * x)
    sy, cy = np.sin(c * y), np.cos(c * y)
    d11 = -a * a * sx * sy
    d22 = -c * c * sx * sy
    d12 = a * c * cx * cy
    return np.array([[d11, d12], [d12, d22]])


def sine_product(p: int = 1, q: int = 1) -> ManufacturedFunction:
    """``u = sin(p*pi*x1) * sin(q*pi*x2)`` on the unit square."""
    if p < 1 or q < 1:
        raise InvalidInputError(f"Sine frequencies must be positive integers, got {(p, q)}")
    return ManufacturedFunction(
        name=f"sin({p}pi x1) sin({q}pi x2)",
        hessian=lambda x, y: _sine_hessian(p, q, x, y),
    )


def complex_sine_combination() -> ManufacturedFunction:
    """``u = sin(pi x1) sin(pi x2) + i sin(2 pi x1) sin(pi x2)`` on the unit square."""
    return ManufacturedFunction(
        name="sin(pi x1) sin(pi x2) + i sin(2pi x1) sin(pi x2)",
        hessian=lambda x, y: _sine_hessian(1, 1, x, y) + 1j * _sine_hessian(2, 1, x, y),
    )


def polyhedral_identity_sides(
        function: ManufacturedFunction,
        k: int = 0,
        m: int = 1,
        j: int = 1,
        order: int = 24,
) -> Tuple[complex, complex]:
    """
    Evaluates both sides of the second-derivative identity by tensor Gauss quadrature.

    Args:
        function: Manufactured function vanishing on its rectangle boundary.
        k, m, j: Zero-based derivative indices in ``{0, 1}``.
        order: Gauss points per direction.

    Returns:
        ``(lhs, rhs)`` with ``lhs = int d_km u conj(d_kj u)`` and
        ``rhs = int d_mj u conj(d_kk u)``. For real ``u`` both are real.

    Raises:
        InvalidInputError: Indices outside ``{0, 1}`` or a non-positive order.
    """
    if any(idx not in (0, 1) for idx in (k, m, j)):
        raise InvalidInputError(f"Derivative indices must be 0 or 1, got {(k, m, j)}")
    if order < 1:
        raise InvalidInputError(f"Quadrature order must be positive, got {order}")

    X, Y, W = gauss_rectangle(order, function.x_range, function.y_range)
    H = function.hessian(X, Y)
    lhs = np.sum(W * H[k, m] * np.conj(H[k, j]))
    rhs = np.sum(W * H[m, j] * np.conj(H[k, k]))
    return complex(lhs), complex(rhs)

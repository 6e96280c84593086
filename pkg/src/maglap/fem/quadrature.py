"""
Quadrature rules on triangles and rectangles.
"""

from typing import Callable, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

# Symmetric 6-point rule on the reference triangle, exact to degree 4.
# Weights sum to 1 and are meant to be multiplied by the triangle area.
_W_A = 0.223381589678011
_W_B = 0.109951743655322
_A = 0.445948490915965
_B = 0.091576213509771

TRIANGLE_BARYCENTRIC = np.array([
    [1.0 - 2.0 * _A, _A, _A],
    [_A, 1.0 - 2.0 * _A, _A],
    [_A, _A, 1.0 - 2.0 * _A],
    [1.0 - 2.0 * _B, _B, _B],
    [_B, 1.0 - 2.0 * _B, _B],
    [_B, _B, 1.0 - 2.0 * _B],
])
TRIANGLE_WEIGHTS = np.array([_W_A, _W_A, _W_A, _W_B, _W_B, _W_B])
TRIANGLE_RULE_DEGREE = 4


def triangle_rule() -> Tuple[np.ndarray, np.ndarray]:
    """
    Returns the degree-4 triangle rule.

    Returns:
        ``(barycentric, weights)`` with shapes ``(6, 3)`` and ``(6,)``.
    """
    return TRIANGLE_BARYCENTRIC, TRIANGLE_WEIGHTS


def gauss_interval(order: int, a: float, b: float) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to ``[a, b]``."""
    x, w = leggauss(order)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def gauss_rectangle(
        order: int,
        x_range: Tuple[float, float],
        y_range: Tuple[float, float],
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Tensor Gauss-Legendre rule on a rectangle.

    Returns:
        ``(X, Y, W)`` as 2-D meshgrid arrays of nodes and weights.
    """
    x, wx = gauss_interval(order, *x_range)
    y, wy = gauss_interval(order, *y_range)
    X, Y = np.meshgrid(x, y, indexing="ij")
    return X, Y, np.outer(wx, wy)


def integrate_rectangle(
        func: Callable[[np.ndarray, np.ndarray], np.ndarray],
        order: int,
        x_range: Tuple[float, float] = (0.0, 1.0),
        y_range: Tuple[float, float] = (0.0, 1.0),
) -> complex:
    """Integrates a vectorised ``func(x, y)`` over a rectangle."""
    X, Y, W = gauss_rectangle(order, x_range, y_range)
    return np.sum(W * func(X, Y))

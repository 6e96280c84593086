"""
Generalized Laguerre functions of real degree and integer order.

For order ``alpha >= 0`` the function is the confluent hypergeometric form

    L_nu^alpha(x) = (nu+1)_alpha / alpha! * 1F1(-nu; alpha+1; x)

which is entire in ``nu``. For ``alpha = -m < 0`` the reduction

    L_nu^-m(x) = (-x)^m * Gamma(nu-m+1)/Gamma(nu+1) * L_{nu-m}^m(x)

collapses to ``(-x)^m / m! * 1F1(m-nu; m+1; x)``, again entire in ``nu``.
At non-negative integer degree the classical polynomial is returned; for
``alpha = -m`` and integer degree below ``m`` the classical polynomial
differs from the analytic continuation, which ``laguerre_analytic`` exposes.
"""

import math
from typing import Union

import numpy as np
from scipy.special import binom, eval_genlaguerre, hyp1f1

from ..core.exceptions import LaguerreDomainError

ArrayLike = Union[float, np.ndarray]


def rising_factorial(z: ArrayLike, m: int) -> np.ndarray:
    """Pochhammer symbol ``(z)_m = z (z+1) ... (z+m-1)`` for a non-negative integer ``m``."""
    result = np.ones_like(np.asarray(z, dtype=float))
    for j in range(m):
        result = result * (z + j)
    return result


def _validate(nu: np.ndarray, alpha, x: np.ndarray) -> int:
    if isinstance(alpha, bool) or int(alpha) != alpha:
        raise LaguerreDomainError(f"Laguerre order must be an integer, got {alpha}")
    if not (np.all(np.isfinite(nu)) and np.all(np.isfinite(x))):
        raise LaguerreDomainError("Laguerre degree and argument must be finite.")
    if np.any(x < 0.0):
        raise LaguerreDomainError("Laguerre argument must be non-negative.")
    return int(alpha)


def _analytic(nu: np.ndarray, alpha: int, x: np.ndarray) -> np.ndarray:
    if alpha >= 0:
        return rising_factorial(nu + 1.0, alpha) / math.factorial(alpha) * hyp1f1(-nu, alpha + 1, x)
    m = -alpha
    return (-x) ** m / math.factorial(m) * hyp1f1(m - nu, m + 1, x)


def _classical(n: int, alpha: int, x: np.ndarray) -> np.ndarray:
    if alpha > -1:
        return eval_genlaguerre(n, alpha, x)
    k = np.arange(n + 1)
    coefficients = binom(n + alpha, n - k) / np.array([math.factorial(int(i)) for i in k], dtype=float)
    powers = (-x[..., None]) ** k
    return np.sum(coefficients * powers, axis=-1)


def laguerre_analytic(nu: ArrayLike, alpha: int, x: ArrayLike) -> ArrayLike:
    """
    Analytic continuation of ``L_nu^alpha(x)`` in the degree.

    Agrees with ``laguerre`` everywhere except at ``alpha = -m`` with integer
    degree ``0 <= nu < m``.

    Args:
        nu: Real degree (scalar or array).
        alpha: Integer order.
        x: Non-negative argument (broadcast against ``nu``).

    Returns:
        Values with the broadcast shape; a float for scalar inputs.

    Raises:
        LaguerreDomainError: Non-integer order, non-finite input or negative argument.
    """
    nu_arr, x_arr = np.broadcast_arrays(np.asarray(nu, dtype=float), np.asarray(x, dtype=float))
    alpha = _validate(nu_arr, alpha, x_arr)
    result = _analytic(nu_arr, alpha, x_arr)
    return float(result) if np.ndim(result) == 0 else result


def laguerre(nu: ArrayLike, alpha: int, x: ArrayLike) -> ArrayLike:
    """
    Generalized Laguerre function ``L_nu^alpha(x)`` with real degree.

    Args:
        nu: Real degree (scalar or array).
        alpha: Integer order, possibly negative.
        x: Non-negative argument (broadcast against ``nu``).

    Returns:
        Values with the broadcast shape; a float for scalar inputs. At
        non-negative integer degree the classical Laguerre polynomial.

    Raises:
        LaguerreDomainError: Non-integer order, non-finite input or negative argument.
    """
    nu_arr, x_arr = np.broadcast_arrays(np.asarray(nu, dtype=float), np.asarray(x, dtype=float))
    alpha = _validate(nu_arr, alpha, x_arr)

    result = np.array(_analytic(nu_arr, alpha, x_arr), dtype=float)
    integer_degree = (nu_arr >= 0.0) & (nu_arr == np.round(nu_arr))
    for n in np.unique(nu_arr[integer_degree]):
        mask = integer_degree & (nu_arr == n)
        result[mask] = _classical(int(n), alpha, x_arr[mask])

    return float(result) if result.ndim == 0 else result

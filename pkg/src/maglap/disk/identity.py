"""
Rayleigh quotient of the x2-derivative of the disk Dirichlet ground state.

With the Landau gauge ``A_L = (0, b x1)`` the Dirichlet ground state of the
unit disk is ``v_L = exp(i chi) v_S`` with ``chi = b x1 x2 / 2`` and the
radial symmetric-gauge ground state ``v_S = h(b r^2/2)``,
``h(x) = exp(-x/2) L_nu^0(x)``. Then ``d2 v_L = exp(i chi) phi`` with
``phi = d2 v_S + i (b x1/2) v_S``, and

    |(grad - i A_L) d2 v_L|^2 = |(grad - i A_S) phi|^2
                              = lambda |phi|^2 + Re (boundary integral of conj(phi) d_r phi)

On convex polygons the boundary integral cancels against the second
derivative identity; on the disk it does not, so both terms are reported.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..core.config import QUAD_MAX_ORDER, QUAD_STABILITY_TOL, QUAD_START_ORDER
from ..core.exceptions import InvalidInputError, QuadratureError
from ..core.logging import get_logger
from ..fem.quadrature import gauss_interval
from .fibers import degree, lambda_01
from .laguerre import laguerre

log = get_logger(__name__)


@dataclass(frozen=True)
class DerivativeQuotient:
    """
    Terms of the quotient identity for the x2-derivative of the ground state.

    Attributes:
        b: Field intensity.
        lam: Dirichlet ground energy of the disk.
        ratio: ``|(grad - iA) d2 v|^2 / |d2 v|^2``.
        flux_ratio: ``Re(boundary integral of conj(phi) d_r phi) / |phi|^2``.
        order: Radial Gauss order at which the ratio stabilised.
        history: Ratio at every order tried.
    """

    b: float
    lam: float
    ratio: float
    flux_ratio: float
    order: int
    history: List[float] = field(default_factory=list)

    @property
    def defect(self) -> float:
        """``ratio - flux_ratio - lam``; zero up to quadrature error."""
        return self.ratio - self.flux_ratio - self.lam


def _polar_rule(order: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gauss in ``r`` times the trapezoid rule in ``theta`` over the unit disk."""
    r, wr = gauss_interval(order, 0.0, 1.0)
    n_theta = 2 * order
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    R, T = np.meshgrid(r, theta, indexing="ij")
    W = np.outer(wr * r, np.full(n_theta, 2.0 * np.pi / n_theta))
    return R * np.cos(T), R * np.sin(T), W


def _radial_profile(nu: float, x: np.ndarray) -> Dict[str, np.ndarray]:
    """``h``, ``h'`` and ``h''`` of ``h(x) = exp(-x/2) L_nu^0(x)``."""
    decay = np.exp(-0.5 * x)
    l0 = laguerre(nu, 0, x)
    l1 = laguerre(nu - 1.0, 1, x)
    l2 = laguerre(nu - 2.0, 2, x)
    return {
        "h": decay * l0,
        "dh": decay * (-0.5 * l0 - l1),
        "d2h": decay * (0.25 * l0 + l1 + l2),
    }


def _ground_state_fields(b: float, nu: float, x1: np.ndarray, x2: np.ndarray) -> Dict[str, np.ndarray]:
    """``v_S`` with its first and second derivatives at the given points."""
    x = 0.5 * b * (x1 * x1 + x2 * x2)
    prof = _radial_profile(nu, x)
    dh, d2h = prof["dh"], prof["d2h"]
    return {
        "v": prof["h"],
        "d1": b * dh * x1,
        "d2": b * dh * x2,
        "d11": b * dh + b * b * d2h * x1 * x1,
        "d12": b * b * d2h * x1 * x2,
        "d22": b * dh + b * b * d2h * x2 * x2,
    }


def _phi_fields(b: float, nu: float, x1: np.ndarray, x2: np.ndarray) -> Dict[str, np.ndarray]:
    """``phi = d2 v_S + i (b x1/2) v_S`` and its gradient."""
    f = _ground_state_fields(b, nu, x1, x2)
    half = 0.5 * b
    return {
        "phi": f["d2"] + 1j * half * x1 * f["v"],
        "dphi1": f["d12"] + 1j * half * f["v"] + 1j * half * x1 * f["d1"],
        "dphi2": f["d22"] + 1j * half * x1 * f["d2"],
    }


def _quotient(b: float, nu: float, order: int) -> Tuple[float, float]:
    """Returns ``(|(grad - i A_S) phi|^2, |phi|^2)``."""
    x1, x2, w = _polar_rule(order)
    p = _phi_fields(b, nu, x1, x2)
    half = 0.5 * b
    c1 = p["dphi1"] + 1j * half * x2 * p["phi"]
    c2 = p["dphi2"] - 1j * half * x1 * p["phi"]
    energy = np.sum(w * (np.abs(c1) ** 2 + np.abs(c2) ** 2))
    norm = np.sum(w * np.abs(p["phi"]) ** 2)
    return float(energy), float(norm)


def _boundary_flux(b: float, nu: float, n_theta: int) -> float:
    """``Re`` of the circle integral of ``conj(phi) d_r phi`` by the trapezoid rule."""
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    x1, x2 = np.cos(theta), np.sin(theta)
    p = _phi_fields(b, nu, x1, x2)
    radial = x1 * p["dphi1"] + x2 * p["dphi2"]
    return float(np.real(np.sum(np.conj(p["phi"]) * radial)) * 2.0 * np.pi / n_theta)


def derivative_quotient(b: float, quad_order: Optional[int] = None) -> DerivativeQuotient:
    """
    Evaluates the quotient identity for the x2-derivative of the disk ground state.

    The polar quadrature order doubles from ``quad_order`` until the ratio
    moves by less than ``1e-6``.

    Args:
        b: Field intensity (positive).
        quad_order: Starting Gauss order in ``r`` (``2*order`` angles).

    Returns:
        The quotient, the boundary flux term and the ground energy.

    Raises:
        InvalidInputError: Non-positive ``b`` or order.
        QuadratureError: If the ratio is not stable by the maximum order.
    """
    if not b > 0.0:
        raise InvalidInputError(f"Field intensity must be positive, got {b}")
    order = QUAD_START_ORDER if quad_order is None else int(quad_order)
    if order < 1:
        raise InvalidInputError(f"Quadrature order must be positive, got {quad_order}")

    lam = lambda_01(b).value
    nu = float(degree(b, lam))

    energy, norm = _quotient(b, nu, order)
    history: List[float] = [energy / norm]
    while order < QUAD_MAX_ORDER:
        order *= 2
        energy, norm = _quotient(b, nu, order)
        history.append(energy / norm)
        change = abs(history[-1] - history[-2])
        log.debug(f"Derivative quotient b={b}: order {order}, ratio {history[-1]:.12g}, change {change:.3e}")
        if change < QUAD_STABILITY_TOL:
            flux = _boundary_flux(b, nu, 2 * order)
            return DerivativeQuotient(
                b=b,
                lam=lam,
                ratio=history[-1],
                flux_ratio=flux / norm,
                order=order,
                history=history,
            )

    raise QuadratureError(
        f"Ratio did not stabilise below {QUAD_STABILITY_TOL:g} up to order {QUAD_MAX_ORDER}", history
    )


def verify_314(b: float, quad_order: Optional[int] = None) -> Tuple[float, float]:
    """
    Rayleigh quotient of the x2-derivative of the Landau-gauge disk ground state.

    Returns:
        ``(ratio, lambda)``. On the disk ``ratio`` equals ``lambda`` plus the
        boundary flux term of ``derivative_quotient``.
    """
    result = derivative_quotient(b, quad_order)
    return result.ratio, result.lam


def gauge_phase_norms(b: float, order: int = 64) -> Tuple[float, float]:
    """
    ``|d2 v_L|^2`` computed with the Landau phase and through the symmetric gauge.

    The first value differentiates ``exp(i chi) v_S`` by the product rule,
    the second is ``|(d2 + i b x1/2) v_S|^2``; they agree up to rounding.
    """
    if not b > 0.0:
        raise InvalidInputError(f"Field intensity must be positive, got {b}")
    nu = float(degree(b, lambda_01(b).value))
    x1, x2, w = _polar_rule(order)
    f = _ground_state_fields(b, nu, x1, x2)

    phase = np.exp(0.5j * b * x1 * x2)
    direct = phase * f["d2"] + (0.5j * b * x1) * phase * f["v"]
    via_symmetric = f["d2"] + 0.5j * b * x1 * f["v"]
    return float(np.sum(w * np.abs(direct) ** 2)), float(np.sum(w * np.abs(via_symmetric) ** 2))

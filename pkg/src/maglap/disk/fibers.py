"""
Fiber equations of the magnetic Laplacian on the unit disk.

In the symmetric gauge the disk operator splits into radial fiber operators
indexed by the angular momentum ``n``. With ``nu = (E/b - 1)/2`` the regular
radial solution is ``exp(-b r^2/4) r^n L_nu^n(b r^2/2)``; the lowest Neumann
fiber eigenvalue is the smallest positive zero of its radial derivative at
``r = 1`` and the lowest Dirichlet fiber eigenvalue the smallest positive
zero of its value there.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from ..core.config import ROOT_BISECTION_RTOL, ROOT_SCAN_CHUNK, ROOT_STEP_DIVISOR
from ..core.exceptions import InvalidInputError, NoRootError
from ..core.logging import get_logger
from .laguerre import laguerre, laguerre_analytic

log = get_logger(__name__)

# Scan points start this fraction of a step above zero so that very small roots are seen
SCAN_ORIGIN_FRACTION = 1e-6
# Number of ceiling doublings when a caller asks for automatic extension
MAX_CEILING_DOUBLINGS = 6


class FiberKind(str, Enum):
    NEUMANN_FIBER = "neumann_fiber"
    DIRICHLET_RADIAL = "dirichlet_radial"


@dataclass(frozen=True)
class FiberResult:
    """
    Lowest eigenvalue of one fiber operator.

    Attributes:
        n: Angular index.
        b: Field intensity.
        value: The eigenvalue.
        bracket: ``(lo, hi)`` across which the defining function changes sign.
        kind: Neumann fiber or Dirichlet radial problem.
    """

    n: int
    b: float
    value: float
    bracket: Tuple[float, float]
    kind: FiberKind

    def __post_init__(self):
        lo, hi = self.bracket
        if not (0.0 < self.value and lo < self.value < hi):
            raise InvalidInputError(
                f"Fiber value {self.value!r} must be positive and inside its bracket {self.bracket!r}"
            )

    @property
    def curve_id(self) -> str:
        prefix = "mu" if self.kind is FiberKind.NEUMANN_FIBER else "lambda"
        return f"{prefix}_{self.n},1"


def _check_field(b: float) -> None:
    if not (math.isfinite(b) and b > 0.0):
        raise InvalidInputError(f"Field intensity must be positive, got {b}")


def _check_index(n: int) -> int:
    if isinstance(n, bool) or int(n) != n:
        raise InvalidInputError(f"Angular index must be an integer, got {n}")
    return int(n)


def degree(b: float, energy):
    """Laguerre degree ``nu = (energy/b - 1)/2``."""
    return 0.5 * (np.asarray(energy, dtype=float) / b - 1.0)


def _as_output(values):
    return float(values) if np.ndim(values) == 0 else values


def F(n: int, b: float, mu):
    """
    Neumann fiber function: radial derivative at ``r = 1`` of the regular solution.

    Evaluates ``exp(-b/4) * [(n - b/2) L_nu^n(b/2) - b L_{nu-1}^{n+1}(b/2)]``.
    Negative ``n`` uses the analytic continuation of the Laguerre function in
    the degree, so the function has no poles in ``mu``.

    Args:
        n: Angular index.
        b: Field intensity (positive).
        mu: Energy (scalar or array).

    Returns:
        ``F_{n,b}(mu)`` with the shape of ``mu``.
    """
    n = _check_index(n)
    _check_field(b)
    nu = degree(b, mu)
    x = 0.5 * b
    lag = laguerre if n >= 0 else laguerre_analytic
    values = math.exp(-0.25 * b) * ((n - x) * lag(nu, n, x) - b * lag(nu - 1.0, n + 1, x))
    return _as_output(values)


def G(b: float, lam):
    """
    Dirichlet radial function of the zero angular index: ``L_nu^0(b/2)``.

    Args:
        b: Field intensity (positive).
        lam: Energy (scalar or array).
    """
    _check_field(b)
    return _as_output(laguerre(degree(b, lam), 0, 0.5 * b))


def dirichlet_fiber_function(n: int, b: float, lam):
    """
    Dirichlet fiber function of angular index ``n``: ``L_nu^n(b/2)``.

    The zeros in ``lam`` are the Dirichlet fiber eigenvalues; ``n = 0`` gives ``G``.
    """
    n = _check_index(n)
    _check_field(b)
    lag = laguerre if n >= 0 else laguerre_analytic
    return _as_output(lag(degree(b, lam), n, 0.5 * b))


def _bisect(f: Callable, lo: float, hi: float, f_lo: float, tol: float) -> Tuple[float, float, float]:
    """Bisects a sign change down to relative width ``tol``; returns ``(root, lo, hi)``."""
    s_lo = np.sign(f_lo)
    while hi - lo > tol * abs(hi):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = float(f(mid))
        if f_mid == 0.0:
            return mid, lo, hi
        if np.sign(f_mid) == s_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), lo, hi


def bracket_smallest_root(
        f: Callable,
        upper: float,
        step: float,
        tol: float = ROOT_BISECTION_RTOL,
        lower: Optional[float] = None,
) -> Tuple[float, float, float]:
    """
    Locates the first sign change of ``f`` on ``(0, upper]`` and bisects it.

    ``f`` is evaluated on whole chunks of scan points at once, so it must
    accept numpy arrays. Exact zeros on scan points are skipped, so a
    tangential zero without a sign change is not reported.

    Args:
        f: Vectorised real function.
        upper: Scan ceiling.
        step: Scan increment.
        tol: Relative bracket width at which bisection stops.
        lower: Optional extra scan point below ``step``.

    Returns:
        ``(root, lo, hi)`` with the final bracket.

    Raises:
        InvalidInputError: Non-positive ``step``/``tol`` or ``step >= upper``.
        NoRootError: No sign change up to ``upper``.
    """
    if not (step > 0.0 and tol > 0.0):
        raise InvalidInputError(f"step and tol must be positive, got step={step}, tol={tol}")
    if not step < upper:
        raise InvalidInputError(f"step ({step}) must be smaller than upper ({upper})")

    n_points = int(math.floor(upper / step))
    prev_x: Optional[float] = None
    prev_f: Optional[float] = None

    if lower is not None and 0.0 < lower < step:
        value = float(f(lower))
        if value != 0.0:
            prev_x, prev_f = lower, value

    for start in range(1, n_points + 1, ROOT_SCAN_CHUNK):
        stop = min(start + ROOT_SCAN_CHUNK, n_points + 1)
        xs = step * np.arange(start, stop, dtype=float)
        if stop == n_points + 1 and xs[-1] < upper:
            xs = np.append(xs, upper)
        values = np.asarray(f(xs), dtype=float)

        nonzero = values != 0.0
        xs, values = xs[nonzero], values[nonzero]
        if prev_x is not None:
            xs = np.concatenate(([prev_x], xs))
            values = np.concatenate(([prev_f], values))
        if values.size == 0:
            continue

        changes = np.flatnonzero(np.sign(values[:-1]) != np.sign(values[1:]))
        if changes.size:
            i = int(changes[0])
            root, lo, hi = _bisect(f, float(xs[i]), float(xs[i + 1]), float(values[i]), tol)
            log.debug(f"Root {root:.15g} bracketed in ({lo:.15g}, {hi:.15g})")
            return root, lo, hi

        prev_x, prev_f = float(xs[-1]), float(values[-1])

    raise NoRootError(f"No sign change found on (0, {upper:g}] with step {step:g}", upper)


def smallest_positive_root(
        f: Callable,
        upper: float,
        step: float,
        tol: float = ROOT_BISECTION_RTOL,
) -> float:
    """
    Smallest positive root of ``f`` by a scan from ``step`` to ``upper`` and bisection.

    Args:
        f: Vectorised real function, continuous on ``(0, upper]``.
        upper: Scan ceiling.
        step: Scan increment.
        tol: Relative bisection tolerance.

    Returns:
        The root.

    Raises:
        NoRootError: No sign change below ``upper``; the error carries the ceiling.
    """
    root, _, _ = bracket_smallest_root(f, upper, step, tol)
    return root


def default_ceiling(b: float, k: int = 1) -> float:
    """Scan ceiling ``b(2k+3) + 10`` above the ``k``-th Landau level."""
    return b * (2 * k + 3) + 10.0


def _fiber_root(
        n: int,
        b: float,
        kind: FiberKind,
        upper: Optional[float],
        step: Optional[float],
) -> FiberResult:
    n = _check_index(n)
    _check_field(b)
    upper = default_ceiling(b) if upper is None else upper
    step = b / ROOT_STEP_DIVISOR if step is None else step

    if kind is FiberKind.NEUMANN_FIBER:
        func = lambda e: F(n, b, e)
    else:
        func = lambda e: dirichlet_fiber_function(n, b, e)

    try:
        root, lo, hi = bracket_smallest_root(func, upper, step, lower=SCAN_ORIGIN_FRACTION * step)
    except NoRootError as e:
        raise NoRootError(f"{kind.value} n={n}, b={b}: {e}", e.upper) from e

    return FiberResult(n=n, b=b, value=root, bracket=(lo, hi), kind=kind)


def mu_n1(n: int, b: float, upper: Optional[float] = None, step: Optional[float] = None) -> FiberResult:
    """
    Lowest eigenvalue of the Neumann fiber operator with angular index ``n``.

    Args:
        n: Angular index.
        b: Field intensity (positive).
        upper: Scan ceiling, ``5b + 10`` by default.
        step: Scan step, ``b/50`` by default.

    Raises:
        NoRootError: No root below the ceiling (the error reports the ceiling).
    """
    return _fiber_root(n, b, FiberKind.NEUMANN_FIBER, upper, step)


def lambda_n1(n: int, b: float, upper: Optional[float] = None, step: Optional[float] = None) -> FiberResult:
    """Lowest eigenvalue of the Dirichlet fiber operator with angular index ``n``."""
    return _fiber_root(n, b, FiberKind.DIRICHLET_RADIAL, upper, step)


def lambda_01(b: float, upper: Optional[float] = None, step: Optional[float] = None) -> FiberResult:
    """Lowest Dirichlet eigenvalue of the disk: the radial (``n = 0``) fiber."""
    return lambda_n1(0, b, upper, step)


def fiber_root_with_extension(n: int, b: float, kind: FiberKind) -> FiberResult:
    """Fiber root with the scan ceiling doubled on failure."""
    upper = default_ceiling(b)
    for _ in range(MAX_CEILING_DOUBLINGS):
        try:
            return _fiber_root(n, b, kind, upper, None)
        except NoRootError:
            log.debug(f"No {kind.value} root for n={n}, b={b} below {upper:g}; doubling the ceiling")
            upper *= 2.0
    return _fiber_root(n, b, kind, upper, None)


def disk_reference_values(
        b: float,
        kind: FiberKind,
        count: int = 1,
        n_max: Optional[int] = None,
) -> Dict[int, FiberResult]:
    """
    First radial modes of every fiber with ``|n| <= n_max``, sorted by value.

    The smallest entry is the ground energy of the disk for the given
    boundary condition. Higher entries are the lowest first radial modes;
    second radial modes of low fibers may interleave with them.

    Args:
        b: Field intensity.
        kind: Neumann fibers or Dirichlet fibers.
        count: Number of entries to keep.
        n_max: Largest ``|n|``, ``ceil(b/2) + count + 2`` by default.

    Returns:
        Mapping from angular index to its fiber result, ordered by value.
    """
    _check_field(b)
    if count < 1:
        raise InvalidInputError(f"count must be positive, got {count}")
    n_max = int(math.ceil(0.5 * b)) + count + 2 if n_max is None else int(n_max)

    results = [fiber_root_with_extension(n, b, FiberKind(kind)) for n in range(-n_max, n_max + 1)]
    results.sort(key=lambda result: (result.value, result.n))
    return {result.n: result for result in results[:count]}

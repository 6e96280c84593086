"""
Radial finite element oracle for the disk fiber operators.

Each fiber form

    t[f] = int_0^1 |f'|^2 r dr + int_0^1 (n/r - b r/2)^2 |f|^2 r dr

is discretised with piecewise-linear elements on a uniform grid of (0, 1].
The oracle does not touch the Laguerre path, so the two cross-validate.
"""

import math
from typing import Optional, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.sparse import coo_matrix, csr_matrix
from scipy.sparse.linalg import ArpackNoConvergence, eigsh
from scipy.special import jn_zeros

from ..core.config import FIBER_DEFAULT_GRID, FIBER_DEFAULT_MODES, FIBER_MIN_GRID
from ..core.exceptions import ConfigurationError, InvalidInputError, SolverConvergenceError, TruncationError
from ..core.logging import get_logger
from ..eigen.spectrum import Spectrum, SpectrumMeta
from .fibers import FiberKind

log = get_logger(__name__)

ELEMENT_GAUSS_ORDER = 6
SHIFT = -1.0
MAX_SPECTRUM_ROUNDS = 6


def bessel_dirichlet_limit() -> float:
    """Square of the first zero of ``J_0``: the non-magnetic Dirichlet ground energy of the unit disk."""
    return float(jn_zeros(0, 1)[0] ** 2)


def fiber_pencil(
        n: int,
        b: float,
        kind: FiberKind,
        grid: int = FIBER_DEFAULT_GRID,
        pin_origin: Optional[bool] = None,
) -> Tuple[csr_matrix, csr_matrix]:
    """
    Sparse stiffness and mass matrices of one fiber form.

    Args:
        n: Angular index.
        b: Field intensity (``b >= 0``).
        kind: Natural (Neumann) or essential (Dirichlet) condition at ``r = 1``.
        grid: Number of elements on (0, 1].
        pin_origin: Impose ``f(0) = 0``; defaults to ``n != 0``.

    Returns:
        ``(K, M)`` over the retained nodes.

    Raises:
        InvalidInputError: Bad ``b`` or ``grid``.
        ConfigurationError: ``n != 0`` with an unpinned origin, where the form is infinite.
    """
    if not (math.isfinite(b) and b >= 0.0):
        raise InvalidInputError(f"Field intensity must be non-negative, got {b}")
    if int(grid) != grid or grid < FIBER_MIN_GRID:
        raise InvalidInputError(f"grid must be an integer >= {FIBER_MIN_GRID}, got {grid}")
    pin_origin = (n != 0) if pin_origin is None else pin_origin
    if n != 0 and not pin_origin:
        raise ConfigurationError(
            f"Angular index {n} needs f(0) = 0: the potential n^2/r^2 makes the origin basis function singular."
        )

    grid = int(grid)
    h = 1.0 / grid
    left = np.arange(grid) * h
    xi, wi = leggauss(ELEMENT_GAUSS_ORDER)
    r = left[:, None] + 0.5 * h * (xi[None, :] + 1.0)
    w = 0.5 * h * wi[None, :]

    phi = np.stack(((left[:, None] + h - r) / h, (r - left[:, None]) / h), axis=1)
    dphi = np.array([-1.0 / h, 1.0 / h])

    # (n/r - b r/2)^2 r = n^2/r - n b r + b^2 r^3 / 4
    potential = n * n / r - n * b * r + 0.25 * b * b * r ** 3

    weight = np.sum(w * r, axis=1)
    stiffness = weight[:, None, None] * np.outer(dphi, dphi)[None, :, :]
    stiffness = stiffness + np.einsum("eq,eiq,ejq->eij", w * potential, phi, phi)
    mass = np.einsum("eq,eiq,ejq->eij", w * r, phi, phi)

    element_nodes = np.column_stack((np.arange(grid), np.arange(1, grid + 1)))
    rows = np.repeat(element_nodes, 2, axis=1).reshape(-1)
    cols = np.tile(element_nodes, (1, 2)).reshape(-1)
    shape = (grid + 1, grid + 1)
    K = coo_matrix((stiffness.reshape(-1), (rows, cols)), shape=shape).tocsr()
    M = coo_matrix((mass.reshape(-1), (rows, cols)), shape=shape).tocsr()

    keep = np.ones(grid + 1, dtype=bool)
    if pin_origin:
        keep[0] = False
    if FiberKind(kind) is FiberKind.DIRICHLET_RADIAL:
        keep[-1] = False
    index = np.flatnonzero(keep)
    return K[index][:, index], M[index][:, index]


def fiber_oracle(
        n: int,
        b: float,
        kind: FiberKind,
        grid: int = FIBER_DEFAULT_GRID,
        modes: int = FIBER_DEFAULT_MODES,
) -> np.ndarray:
    """
    Lowest eigenvalues of one discretised fiber operator.

    Args:
        n: Angular index.
        b: Field intensity (``b >= 0``).
        kind: Neumann fiber or Dirichlet radial problem.
        grid: Number of elements (at least 100).
        modes: Number of eigenvalues.

    Returns:
        Sorted array of ``modes`` eigenvalues (upper bounds of the exact ones).

    Raises:
        SolverConvergenceError: If ARPACK does not converge.
    """
    K, M = fiber_pencil(n, b, kind, grid)
    dimension = K.shape[0]
    if not 1 <= modes < dimension:
        raise InvalidInputError(f"modes must be in 1..{dimension - 1}, got {modes}")

    try:
        values = eigsh(K, k=modes, M=M, sigma=SHIFT, which="LM", v0=np.ones(dimension),
                       return_eigenvectors=False)
    except ArpackNoConvergence as e:
        log.error(f"ARPACK did not converge for fiber n={n}, b={b}, kind={kind}: {e}")
        raise SolverConvergenceError(
            f"Fiber oracle did not converge (n={n}, b={b})",
            {"n": n, "b": b, "grid": grid, "modes": modes},
        ) from e
    return np.sort(values)


def potential_floor(n: int, b: float) -> float:
    """Minimum over ``0 < r <= 1`` of ``(n/r - b r/2)^2``; a lower bound for the fiber spectrum."""
    m = abs(n)
    if m == 0:
        return 0.0
    if b == 0.0:
        return float(m * m)
    turning = math.sqrt(2.0 * m / b)
    if n > 0:
        return 0.0 if turning <= 1.0 else (n - 0.5 * b) ** 2
    return 2.0 * m * b if turning <= 1.0 else (m + 0.5 * b) ** 2


def fiber_spectrum(
        b: float,
        kind: FiberKind,
        count: int,
        grid: int = FIBER_DEFAULT_GRID,
) -> Spectrum:
    """
    Lowest ``count`` eigenvalues of the disk assembled from the fiber oracles.

    Fibers ``|n| <= N`` are solved for a number of modes; the result is
    complete below the smallest of the largest computed mode per fiber and
    the potential floor of the first unsolved fibers. ``N`` and the mode
    count double until ``count`` values are resolved.

    Args:
        b: Field intensity (``b >= 0``).
        kind: Neumann or Dirichlet disk spectrum.
        count: Number of eigenvalues.
        grid: Radial elements per fiber.

    Returns:
        Spectrum whose ``ceiling`` marks the resolved range.

    Raises:
        TruncationError: If ``count`` values are not resolved after the doubling rounds.
    """
    kind = FiberKind(kind)
    if count < 1:
        raise InvalidInputError(f"count must be positive, got {count}")

    n_max = int(math.ceil(0.5 * b)) + 3
    modes = max(FIBER_DEFAULT_MODES, int(math.ceil(count / 2)))
    for round_ in range(MAX_SPECTRUM_ROUNDS):
        values, ceiling = [], np.inf
        for n in range(-n_max, n_max + 1):
            fiber_values = fiber_oracle(n, b, kind, grid, modes)
            values.append(fiber_values)
            ceiling = min(ceiling, float(fiber_values[-1]))
        ceiling = min(ceiling, potential_floor(n_max + 1, b), potential_floor(-n_max - 1, b))

        merged = np.sort(np.concatenate(values))
        resolved = merged[merged < ceiling]
        log.debug(
            f"Disk {kind.value} spectrum (b={b}, round {round_}): |n| <= {n_max}, {modes} modes, "
            f"{resolved.size} values below {ceiling:.6g}"
        )
        if resolved.size >= count:
            next_ceiling = float(resolved[count]) if resolved.size > count else ceiling
            bc = "neumann" if kind is FiberKind.NEUMANN_FIBER else "dirichlet"
            return Spectrum(
                values=resolved[:count],
                meta=SpectrumMeta(domain="disk", b=b, bc=bc, refine=grid),
                ceiling=next_ceiling,
            )
        n_max *= 2
        modes *= 2

    raise TruncationError(
        f"Could not resolve {count} disk eigenvalues (b={b}, {kind.value}) after {MAX_SPECTRUM_ROUNDS} rounds"
    )

"""
Dense generalized Hermitian eigensolver for ``K v = lambda M v``.

The mass matrix is factored ``M = L L^T`` and the problem reduced to the
standard Hermitian matrix ``C = L^-1 K L^-H``. Two routes solve ``C``:

* ``hermitian``: LAPACK's complex Hermitian driver.
* ``embedded``: the real symmetric ``2n x 2n`` embedding ``[[Re C, -Im C], [Im C, Re C]]``,
  whose spectrum is that of ``C`` with every value doubled; complex
  eigenvectors are recovered from the doubled subspace by Rayleigh-Ritz.

Eigenvectors inside a cluster of equal eigenvalues are basis-arbitrary.
"""

from typing import Dict, Optional

import numpy as np
import scipy.linalg

from ..core.config import DEFAULT_EIGEN_TOL, ORTHONORMALITY_TOL
from ..core.exceptions import FactorizationError, InvalidInputError, SolverConvergenceError
from ..core.logging import get_logger
from ..fem.assembly import HermitianPencil
from .spectrum import Spectrum, SpectrumMeta

log = get_logger(__name__)

SUPPORTED_METHODS = ("hermitian", "embedded")


def _reduce(pencil: HermitianPencil):
    try:
        chol = scipy.linalg.cholesky(pencil.M, lower=True)
    except np.linalg.LinAlgError as e:
        log.error(f"Cholesky factorization of the {pencil.dimension}x{pencil.dimension} mass matrix failed: {e}")
        raise FactorizationError(f"Mass matrix is not positive definite: {e}") from e

    half = scipy.linalg.solve_triangular(chol, pencil.K.astype(complex), lower=True)
    reduced = scipy.linalg.solve_triangular(chol, half.conj().T, lower=True).conj().T
    reduced = 0.5 * (reduced + reduced.conj().T)
    return chol, reduced


def _solve_hermitian(reduced: np.ndarray, k: int):
    return scipy.linalg.eigh(reduced, subset_by_index=[0, k - 1], driver="evr")


def _solve_embedded(reduced: np.ndarray, k: int):
    n = reduced.shape[0]
    re, im = reduced.real, reduced.imag
    embedded = np.block([[re, -im], [im, re]])
    doubled, real_vectors = scipy.linalg.eigh(embedded, subset_by_index=[0, 2 * k - 1], driver="evr")

    values = doubled[0::2]

    # Each real pair [x; y] maps to the complex eigenvector x + iy
    candidates = real_vectors[:n, :] + 1j * real_vectors[n:, :]
    basis, _, _ = scipy.linalg.svd(candidates, full_matrices=False)
    basis = basis[:, :k]
    projected = basis.conj().T @ reduced @ basis
    projected = 0.5 * (projected + projected.conj().T)
    _, ritz = scipy.linalg.eigh(projected)
    return values, basis @ ritz


def _residual_norms(pencil: HermitianPencil, values: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    residual = pencil.K @ vectors - (pencil.M @ vectors) * values[None, :]
    return np.linalg.norm(residual, axis=0)


def smallest_eigenpairs(
        pencil: HermitianPencil,
        k: int,
        tol: float = DEFAULT_EIGEN_TOL,
        method: str = "hermitian",
        meta: Optional[SpectrumMeta] = None,
) -> Spectrum:
    """
    Computes the ``k`` smallest generalized eigenpairs of a pencil.

    Args:
        pencil: Hermitian pencil ``(K, M)``.
        k: Number of eigenpairs (``1 <= k <= dimension``).
        tol: Relative residual tolerance: every pair must satisfy
            ``|Kv - lambda Mv| <= tol * max|K| * |v|``.
        method: ``"hermitian"`` or ``"embedded"``.
        meta: Provenance attached to the result.

    Returns:
        Spectrum with M-orthonormal eigenvectors and residuals.

    Raises:
        InvalidInputError: Bad ``k``, ``tol`` or ``method``.
        FactorizationError: If ``M`` is not positive definite.
        SolverConvergenceError: LAPACK failure, residual or orthonormality miss.
    """
    n = pencil.dimension
    if int(k) != k or not 1 <= k <= n:
        raise InvalidInputError(f"k must be an integer in 1..{n}, got {k}")
    if not tol > 0.0:
        raise InvalidInputError(f"Tolerance must be positive, got {tol}")
    if method not in SUPPORTED_METHODS:
        raise InvalidInputError(f"Unknown eigen method '{method}'. Available: {', '.join(SUPPORTED_METHODS)}")
    k = int(k)

    chol, reduced = _reduce(pencil)
    diagnostics: Dict[str, object] = {
        "dimension": n,
        "k": k,
        "method": method,
    }

    try:
        if method == "hermitian":
            values, reduced_vectors = _solve_hermitian(reduced, k)
        else:
            values, reduced_vectors = _solve_embedded(reduced, k)
    except np.linalg.LinAlgError as e:
        log.error(f"Eigen solve did not converge: {e} ({diagnostics})")
        raise SolverConvergenceError(f"Eigen solve did not converge: {e}", diagnostics) from e

    vectors = scipy.linalg.solve_triangular(chol, reduced_vectors, lower=True, trans="T")
    residuals = _residual_norms(pencil, values, vectors)

    limit = tol * pencil.stiffness_scale * np.linalg.norm(vectors, axis=0)
    if np.any(residuals > limit):
        worst = int(np.argmax(residuals / np.maximum(limit, np.finfo(float).tiny)))
        diagnostics["residuals"] = residuals.tolist()
        raise SolverConvergenceError(
            f"Eigenpair {worst + 1} misses its residual target ({residuals[worst]:.3e} > {limit[worst]:.3e})",
            diagnostics,
        )

    gram = vectors.conj().T @ pencil.M @ vectors
    orthonormality_defect = float(np.max(np.abs(gram - np.eye(k))))
    if orthonormality_defect > ORTHONORMALITY_TOL:
        diagnostics["orthonormality_defect"] = orthonormality_defect
        raise SolverConvergenceError(
            f"Eigenvectors are not M-orthonormal (defect {orthonormality_defect:.3e})", diagnostics
        )

    log.debug(
        f"Solved {n}-dimensional pencil for {k} pairs via {method}: "
        f"lambda_1={values[0]:.10g}, max residual {float(np.max(residuals)):.3e}"
    )
    return Spectrum(
        values=values,
        vectors=vectors,
        residuals=residuals,
        meta=meta if meta is not None else SpectrumMeta(bc=pencil.bc.value),
    )


def residual_report(pencil: HermitianPencil, spectrum: Spectrum) -> np.ndarray:
    """
    Recomputes ``|K v_j - lambda_j M v_j|`` for every eigenpair.

    Raises:
        InvalidInputError: If the spectrum has no vectors or their dimension differs from the pencil.
    """
    if spectrum.vectors is None:
        raise InvalidInputError("Spectrum carries no eigenvectors.")
    if spectrum.vectors.shape[0] != pencil.dimension or spectrum.vectors.shape[1] != len(spectrum):
        raise InvalidInputError(
            f"Spectrum vectors have shape {spectrum.vectors.shape}, "
            f"pencil dimension is {pencil.dimension} with {len(spectrum)} values"
        )
    return _residual_norms(pencil, spectrum.values, spectrum.vectors)

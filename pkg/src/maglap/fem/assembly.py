"""
Piecewise-linear assembly of the magnetic stiffness and mass matrices.

The stiffness matrix realises the quadratic form

    h[u] = integral of |(grad - iA) u|^2

on the span of the nodal hat functions. Neumann conditions are natural;
Dirichlet conditions are imposed by deleting boundary rows and columns,
which keeps the Dirichlet trial space a subspace of the Neumann one.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional

import numpy as np
import scipy.linalg
from scipy.sparse import coo_matrix

from ..core.config import DEFAULT_EIGEN_TOL, DEGENERATE_TRIANGLE_RTOL
from ..core.exceptions import AssemblyError, EmptySystemError, InvalidInputError
from ..core.logging import get_logger
from ..geometry.mesh import TriangleMesh
from .field import MagneticField
from .quadrature import triangle_rule

log = get_logger(__name__)

HERMITIAN_RTOL = 1e-12
RAYLEIGH_IMAG_RTOL = 1e-12


class BoundaryCondition(str, Enum):
    NEUMANN = "neumann"
    DIRICHLET = "dirichlet"


@dataclass(frozen=True)
class HermitianPencil:
    """
    Stiffness/mass pair ``(K, M)`` with boundary-condition metadata.

    Attributes:
        K: Complex Hermitian stiffness matrix.
        M: Real symmetric positive definite mass matrix.
        bc: Boundary condition the pencil realises.
        dof_map: Mesh node index of every retained degree of freedom.
        field: Field the pencil was assembled for, when known.
    """

    K: np.ndarray
    M: np.ndarray
    bc: BoundaryCondition
    dof_map: np.ndarray
    field: Optional[MagneticField] = None

    @property
    def dimension(self) -> int:
        return int(self.K.shape[0])

    @property
    def stiffness_scale(self) -> float:
        """Largest entry modulus of ``K``."""
        return float(np.max(np.abs(self.K))) if self.K.size else 0.0

    def check_invariants(self, rng: Optional[np.random.Generator] = None, samples: int = 8) -> Dict[str, float]:
        """
        Verifies the Hermitian, positive definite mass and semidefinite stiffness properties.

        Args:
            rng: Generator for the random test vectors.
            samples: Number of random vectors for the semidefiniteness check.

        Returns:
            Measured ``hermitian_defect`` (relative), ``min_mass_pivot`` and
            ``min_energy_ratio`` (smallest ``x*Kx / (|x|^2 max|K|)`` seen).

        Raises:
            AssemblyError: If any of the three properties fails.
        """
        rng = rng if rng is not None else np.random.default_rng(0)
        scale = self.stiffness_scale or 1.0

        hermitian_defect = float(np.max(np.abs(self.K - self.K.conj().T))) / scale
        if hermitian_defect > HERMITIAN_RTOL:
            raise AssemblyError(f"Stiffness matrix is not Hermitian (relative defect {hermitian_defect:.3e}).")

        try:
            chol = scipy.linalg.cholesky(self.M, lower=True)
        except np.linalg.LinAlgError as e:
            raise AssemblyError(f"Mass matrix is not positive definite: {e}") from e
        min_pivot = float(np.min(np.diag(chol)))

        min_ratio = np.inf
        for _ in range(samples):
            x = rng.standard_normal(self.dimension) + 1j * rng.standard_normal(self.dimension)
            energy = float(np.real(np.vdot(x, self.K @ x)))
            min_ratio = min(min_ratio, energy / (np.vdot(x, x).real * scale))
        if min_ratio < -DEFAULT_EIGEN_TOL:
            raise AssemblyError(f"Stiffness matrix is not positive semidefinite (ratio {min_ratio:.3e}).")

        return {
            "hermitian_defect": hermitian_defect,
            "min_mass_pivot": min_pivot,
            "min_energy_ratio": float(min_ratio),
        }


def _local_matrices(mesh: TriangleMesh, field: MagneticField):
    """Element stiffness ``(T, 3, 3)`` complex and mass ``(T, 3, 3)`` real arrays."""
    nodes, tri = mesh.nodes, mesh.triangles
    p0, p1, p2 = nodes[tri[:, 0]], nodes[tri[:, 1]], nodes[tri[:, 2]]
    area = mesh.triangle_areas

    # Gradients of the barycentric coordinates: rotate the opposite edge by 90 degrees
    opposite = np.stack((p2 - p1, p0 - p2, p1 - p0), axis=1)
    grads = np.stack((-opposite[..., 1], opposite[..., 0]), axis=-1) / (2.0 * area)[:, None, None]

    bary, weights = triangle_rule()
    qpoints = np.einsum("qi,tid->tqd", bary, np.stack((p0, p1, p2), axis=1))
    potential = field.vector_potential(qpoints)
    wa = weights[None, :] * area[:, None]

    stiffness = np.einsum("tid,tjd->tij", grads, grads) * area[:, None, None]
    # drift[t, i, j] = integral of phi_i * (A . grad phi_j)
    a_dot_grad = np.einsum("tqd,tjd->tqj", potential, grads)
    drift = np.einsum("tq,qi,tqj->tij", wa, bary, a_dot_grad)
    a_sq = np.sum(potential * potential, axis=-1)
    potential_mass = np.einsum("tq,qi,qj->tij", wa * a_sq, bary, bary)
    mass = np.einsum("tq,qi,qj->tij", wa, bary, bary)

    local_k = stiffness + potential_mass + 1j * (drift - np.transpose(drift, (0, 2, 1)))
    return local_k, mass


def assemble(mesh: TriangleMesh, field: MagneticField) -> HermitianPencil:
    """
    Assembles the Neumann pencil of the magnetic Laplacian on a mesh.

    Args:
        mesh: Conforming triangulation.
        field: Field intensity and gauge.

    Returns:
        A Neumann ``HermitianPencil`` over all mesh nodes.

    Raises:
        AssemblyError: If a triangle is degenerate relative to the mesh scale.
    """
    threshold = DEGENERATE_TRIANGLE_RTOL * mesh.scale ** 2
    if np.any(mesh.triangle_areas < threshold):
        bad = int(np.argmin(mesh.triangle_areas))
        raise AssemblyError(
            f"Degenerate triangle {bad}: area {mesh.triangle_areas[bad]:.3e} below {threshold:.3e}"
        )

    local_k, local_m = _local_matrices(mesh, field)
    tri = mesh.triangles
    rows = np.repeat(tri, 3, axis=1).reshape(-1)
    cols = np.tile(tri, (1, 3)).reshape(-1)
    shape = (mesh.n_nodes, mesh.n_nodes)

    K = coo_matrix((local_k.reshape(-1), (rows, cols)), shape=shape).toarray()
    M = coo_matrix((local_m.reshape(-1), (rows, cols)), shape=shape).toarray()

    log.debug(
        f"Assembled {mesh.n_nodes}x{mesh.n_nodes} pencil from {mesh.n_triangles} triangles "
        f"(b={field.b}, gauge={field.gauge.value})"
    )
    return HermitianPencil(
        K=K,
        M=M,
        bc=BoundaryCondition.NEUMANN,
        dof_map=np.arange(mesh.n_nodes),
        field=field,
    )


def restrict_dirichlet(pencil: HermitianPencil, mesh: TriangleMesh) -> HermitianPencil:
    """
    Deletes the boundary rows and columns of a Neumann pencil.

    Args:
        pencil: Neumann pencil assembled on ``mesh``.
        mesh: The mesh providing the boundary nodes.

    Returns:
        The Dirichlet pencil on the interior nodes.

    Raises:
        InvalidInputError: If the pencil is not a Neumann pencil of this mesh.
        EmptySystemError: If no interior node remains.
    """
    if pencil.bc is not BoundaryCondition.NEUMANN:
        raise InvalidInputError("Dirichlet restriction needs a Neumann pencil.")
    if pencil.dimension != mesh.n_nodes:
        raise InvalidInputError(
            f"Pencil dimension {pencil.dimension} does not match the mesh ({mesh.n_nodes} nodes)."
        )
    if len(mesh.boundary_nodes) == 0:
        raise InvalidInputError("Mesh has no boundary nodes.")

    keep = mesh.interior_nodes
    if keep.size == 0:
        raise EmptySystemError("No interior nodes remain after removing the boundary.")

    index = np.ix_(keep, keep)
    log.debug(f"Dirichlet restriction keeps {keep.size} of {mesh.n_nodes} nodes")
    return HermitianPencil(
        K=pencil.K[index],
        M=pencil.M[index],
        bc=BoundaryCondition.DIRICHLET,
        dof_map=pencil.dof_map[keep],
        field=pencil.field,
    )


def rayleigh(pencil: HermitianPencil, v: np.ndarray) -> float:
    """
    Rayleigh quotient ``v*Kv / v*Mv``.

    Args:
        pencil: The pencil.
        v: Coefficient vector of matching dimension.

    Returns:
        The real quotient.

    Raises:
        InvalidInputError: Zero vector or dimension mismatch.
        AssemblyError: If the numerator carries a non-negligible imaginary part.
    """
    vec = np.asarray(v, dtype=complex).reshape(-1)
    if vec.shape[0] != pencil.dimension:
        raise InvalidInputError(f"Vector has dimension {vec.shape[0]}, pencil has {pencil.dimension}")
    if not np.any(vec):
        raise InvalidInputError("Rayleigh quotient of the zero vector is undefined.")

    numerator = np.vdot(vec, pencil.K @ vec)
    denominator = np.vdot(vec, pencil.M @ vec).real

    reference = max(abs(numerator.real), pencil.stiffness_scale * np.vdot(vec, vec).real)
    if abs(numerator.imag) > RAYLEIGH_IMAG_RTOL * reference:
        raise AssemblyError(f"Rayleigh numerator has imaginary part {numerator.imag:.3e}")

    return float(numerator.real / denominator)

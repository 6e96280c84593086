"""
Conforming triangle meshes of convex polygons.

Meshes are built by a fan from the polygon centroid followed by uniform
midpoint subdivision, which keeps the construction deterministic.
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from ..core.config import AREA_RTOL
from ..core.exceptions import GeometryError, InvalidInputError
from ..core.logging import get_logger
from .polygon import ConvexPolygon

log = get_logger(__name__)


def _triangle_signed_areas(nodes: np.ndarray, triangles: np.ndarray) -> np.ndarray:
    p0, p1, p2 = nodes[triangles[:, 0]], nodes[triangles[:, 1]], nodes[triangles[:, 2]]
    e1, e2 = p1 - p0, p2 - p0
    return 0.5 * (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])


def _unique_edges(triangles: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Returns the unique undirected edges, the inverse map from the ``3T`` local
    edges (ordered 01, 12, 20 per triangle) and the multiplicity of each edge.
    """
    local = np.concatenate(
        (triangles[:, [0, 1]], triangles[:, [1, 2]], triangles[:, [2, 0]]),
        axis=0,
    )
    local = np.sort(local, axis=1)
    edges, inverse, counts = np.unique(local, axis=0, return_inverse=True, return_counts=True)
    return edges, inverse.reshape(-1), counts


def _boundary_edges(triangles: np.ndarray) -> np.ndarray:
    edges, _, counts = _unique_edges(triangles)
    return edges[counts == 1]


@dataclass(frozen=True)
class TriangleMesh:
    """
    Conforming triangulation with boundary-node flags.

    Attributes:
        nodes: ``(N, 2)`` node coordinates.
        triangles: ``(T, 3)`` node indices, positively oriented.
        boundary_nodes: Sorted indices of nodes on the domain boundary.
        refine: Number of subdivision rounds applied after the fan.
    """

    nodes: np.ndarray
    triangles: np.ndarray
    boundary_nodes: np.ndarray
    refine: int = 0
    _areas: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("nodes", "triangles", "boundary_nodes"):
            getattr(self, name).setflags(write=False)
        areas = _triangle_signed_areas(self.nodes, self.triangles)
        areas.setflags(write=False)
        object.__setattr__(self, "_areas", areas)

    @property
    def n_nodes(self) -> int:
        return int(self.nodes.shape[0])

    @property
    def n_triangles(self) -> int:
        return int(self.triangles.shape[0])

    @property
    def triangle_areas(self) -> np.ndarray:
        return self._areas

    @property
    def area(self) -> float:
        return float(np.sum(self._areas))

    @property
    def interior_nodes(self) -> np.ndarray:
        mask = np.ones(self.n_nodes, dtype=bool)
        mask[self.boundary_nodes] = False
        return np.flatnonzero(mask)

    @property
    def scale(self) -> float:
        """Length of the bounding-box diagonal."""
        extent = self.nodes.max(axis=0) - self.nodes.min(axis=0)
        return float(np.hypot(extent[0], extent[1]))

    def max_edge_length(self) -> float:
        edges, _, _ = _unique_edges(self.triangles)
        vectors = self.nodes[edges[:, 1]] - self.nodes[edges[:, 0]]
        return float(np.max(np.hypot(vectors[:, 0], vectors[:, 1])))

    def scaled(self, factor: float) -> "TriangleMesh":
        """Same connectivity with node coordinates multiplied by ``factor``."""
        if not factor > 0.0:
            raise InvalidInputError(f"Scale factor must be positive, got {factor}")
        return TriangleMesh(
            nodes=self.nodes * factor,
            triangles=self.triangles.copy(),
            boundary_nodes=self.boundary_nodes.copy(),
            refine=self.refine,
        )

    def validate(self, expected_area: Optional[float] = None) -> None:
        """
        Checks the mesh invariants.

        Args:
            expected_area: Polygon area the triangle areas must sum to.

        Raises:
            GeometryError: On a negatively oriented triangle, an area mismatch,
                or a boundary that is not a single closed loop through exactly
                the flagged boundary nodes.
        """
        if np.any(self._areas <= 0.0):
            bad = int(np.argmin(self._areas))
            raise GeometryError(f"Triangle {bad} is not positively oriented (area {self._areas[bad]:.3e}).")

        if expected_area is not None:
            mismatch = abs(self.area - expected_area)
            if mismatch > AREA_RTOL * expected_area:
                raise GeometryError(
                    f"Triangle areas sum to {self.area!r}, polygon area is {expected_area!r}"
                )

        boundary = _boundary_edges(self.triangles)
        endpoints = np.unique(boundary)
        if not np.array_equal(endpoints, np.sort(self.boundary_nodes)):
            raise GeometryError("Boundary edge endpoints differ from the flagged boundary nodes.")

        degree = np.bincount(boundary.reshape(-1), minlength=self.n_nodes)[endpoints]
        if np.any(degree != 2):
            raise GeometryError("Boundary nodes must each touch exactly two boundary edges.")

        # Walk the loop from the first boundary edge; it must visit every boundary edge.
        neighbours = {int(node): [] for node in endpoints}
        for a, b in boundary:
            neighbours[int(a)].append(int(b))
            neighbours[int(b)].append(int(a))
        start = int(boundary[0, 0])
        previous, current, steps = start, int(boundary[0, 1]), 1
        while current != start:
            a, b = neighbours[current]
            previous, current = current, (b if a == previous else a)
            steps += 1
            if steps > len(boundary):
                break
        if steps != len(boundary):
            raise GeometryError(
                f"Boundary splits into several loops ({steps} of {len(boundary)} edges in the first loop)."
            )


def _fan(poly: ConvexPolygon) -> TriangleMesh:
    n = poly.n_vertices
    nodes = np.vstack((poly.vertices, poly.centroid[None, :]))
    i = np.arange(n)
    triangles = np.column_stack((i, (i + 1) % n, np.full(n, n)))
    return TriangleMesh(nodes=nodes, triangles=triangles, boundary_nodes=np.arange(n), refine=0)


def refine_uniform(mesh: TriangleMesh) -> TriangleMesh:
    """
    One round of midpoint subdivision: every triangle becomes four.

    Args:
        mesh: Mesh to refine.

    Returns:
        The refined mesh; the maximum edge length halves.
    """
    edges, inverse, counts = _unique_edges(mesh.triangles)
    n_old = mesh.n_nodes
    midpoints = 0.5 * (mesh.nodes[edges[:, 0]] + mesh.nodes[edges[:, 1]])
    nodes = np.vstack((mesh.nodes, midpoints))

    n_tri = mesh.n_triangles
    m01 = n_old + inverse[:n_tri]
    m12 = n_old + inverse[n_tri:2 * n_tri]
    m20 = n_old + inverse[2 * n_tri:]
    a, b, c = mesh.triangles[:, 0], mesh.triangles[:, 1], mesh.triangles[:, 2]

    triangles = np.concatenate((
        np.column_stack((a, m01, m20)),
        np.column_stack((m01, b, m12)),
        np.column_stack((m20, m12, c)),
        np.column_stack((m01, m12, m20)),
    ), axis=0)

    boundary_midpoints = n_old + np.flatnonzero(counts == 1)
    boundary_nodes = np.union1d(mesh.boundary_nodes, boundary_midpoints)

    return TriangleMesh(nodes=nodes, triangles=triangles, boundary_nodes=boundary_nodes, refine=mesh.refine + 1)


def triangulate(poly: ConvexPolygon, refine: int = 0) -> TriangleMesh:
    """
    Fan triangulation from the centroid followed by ``refine`` subdivision rounds.

    Args:
        poly: Convex polygon to mesh.
        refine: Number of uniform midpoint subdivision rounds (>= 0).

    Returns:
        A mesh with ``n_vertices * 4**refine`` triangles.

    Raises:
        InvalidInputError: If ``refine`` is negative.
    """
    if int(refine) != refine or refine < 0:
        raise InvalidInputError(f"refine must be a non-negative integer, got {refine}")

    mesh = _fan(poly)
    for _ in range(int(refine)):
        mesh = refine_uniform(mesh)

    mesh.validate(expected_area=poly.area)
    log.debug(
        f"Triangulated {poly!r} at refine={refine}: {mesh.n_nodes} nodes, "
        f"{mesh.n_triangles} triangles, {len(mesh.boundary_nodes)} boundary nodes"
    )
    return mesh

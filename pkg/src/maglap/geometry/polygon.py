"""
Convex polygons and J-symmetric right cylinders.
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
from scipy.spatial import ConvexHull, QhullError
from scipy.spatial.distance import pdist

from ..core.config import SYMMETRY_RTOL, VERTEX_DEDUP_RTOL
from ..core.exceptions import DegenerateInputError, GeometryError, InvalidInputError
from ..core.logging import get_logger

log = get_logger(__name__)

PointArray = Union[np.ndarray, Sequence[Sequence[float]]]


class ConvexPolygon:
    """
    Strictly convex polygon given by its counterclockwise vertex loop.

    The vertex array is validated on construction and frozen afterwards, so
    instances can be shared freely between sweep cells.

    Attributes:
        vertices (np.ndarray): ``(n, 2)`` read-only array of vertices, CCW.
    """

    def __init__(self, vertices: PointArray):
        """
        Args:
            vertices: Ordered vertex loop (at least three points).

        Raises:
            DegenerateInputError: Fewer than three vertices or repeated vertices.
            GeometryError: Clockwise orientation or a non-strictly-convex corner.
        """
        points = np.array(vertices, dtype=float)
        if points.ndim != 2 or points.shape[1] != 2:
            raise InvalidInputError(f"Vertices must have shape (n, 2), got {points.shape}")
        if points.shape[0] < 3:
            raise DegenerateInputError(f"A polygon needs at least 3 vertices, got {points.shape[0]}")
        if not np.all(np.isfinite(points)):
            raise InvalidInputError("Polygon vertices must be finite.")

        self._vertices = points
        self._vertices.setflags(write=False)
        self._validate()

    def _validate(self) -> None:
        """Checks orientation, strict convexity and vertex separation."""
        diameter = self.diameter
        if diameter <= 0.0:
            raise DegenerateInputError("Polygon has zero diameter.")

        min_separation = float(np.min(pdist(self._vertices)))
        if min_separation <= VERTEX_DEDUP_RTOL * diameter:
            raise DegenerateInputError(
                f"Repeated vertices: minimum separation {min_separation:.3e} "
                f"is below {VERTEX_DEDUP_RTOL:g} x diameter"
            )

        if self.signed_area <= 0.0:
            raise GeometryError(f"Polygon must be counterclockwise (signed area {self.signed_area:.6g}).")

        crosses = self.corner_cross_products()
        if np.any(crosses <= 0.0):
            bad = int(np.argmin(crosses))
            raise GeometryError(
                f"Polygon is not strictly convex at vertex {bad} (cross product {crosses[bad]:.3e})."
            )

    @property
    def vertices(self) -> np.ndarray:
        return self._vertices

    @property
    def n_vertices(self) -> int:
        return int(self._vertices.shape[0])

    @property
    def edges(self) -> np.ndarray:
        """Edge vectors ``v[i+1] - v[i]``, shape ``(n, 2)``."""
        return np.roll(self._vertices, -1, axis=0) - self._vertices

    @property
    def signed_area(self) -> float:
        x, y = self._vertices[:, 0], self._vertices[:, 1]
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

    @property
    def area(self) -> float:
        return abs(self.signed_area)

    @property
    def diameter(self) -> float:
        return float(np.max(pdist(self._vertices)))

    @property
    def centroid(self) -> np.ndarray:
        """Area centroid of the polygon."""
        x, y = self._vertices[:, 0], self._vertices[:, 1]
        xn, yn = np.roll(x, -1), np.roll(y, -1)
        cross = x * yn - xn * y
        factor = 1.0 / (6.0 * self.signed_area)
        return np.array([factor * np.sum((x + xn) * cross), factor * np.sum((y + yn) * cross)])

    def corner_cross_products(self) -> np.ndarray:
        """Cross product of consecutive edge vectors at every vertex."""
        incoming = np.roll(self.edges, 1, axis=0)
        outgoing = self.edges
        return incoming[:, 0] * outgoing[:, 1] - incoming[:, 1] * outgoing[:, 0]

    def edge_line_distances(self, point: Optional[Sequence[float]] = None) -> np.ndarray:
        """
        Distance from a point to every edge line (positive inside).

        Args:
            point: Reference point, the origin when omitted.

        Returns:
            Array of ``n`` signed distances.
        """
        p = np.zeros(2) if point is None else np.asarray(point, dtype=float)
        edges = self.edges
        lengths = np.hypot(edges[:, 0], edges[:, 1])
        rel = p - self._vertices
        return (edges[:, 0] * rel[:, 1] - edges[:, 1] * rel[:, 0]) / lengths

    def contains(self, points: PointArray, tol: float = 0.0) -> np.ndarray:
        """
        Point-in-polygon test by half-planes.

        Args:
            points: ``(m, 2)`` query points.
            tol: Absolute slack; points within ``tol`` outside an edge count as inside.

        Returns:
            Boolean array of length ``m``.
        """
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        edges = self.edges
        lengths = np.hypot(edges[:, 0], edges[:, 1])
        rel = pts[:, None, :] - self._vertices[None, :, :]
        signed = (edges[None, :, 0] * rel[:, :, 1] - edges[None, :, 1] * rel[:, :, 0]) / lengths[None, :]
        return np.all(signed >= -tol, axis=1)

    def is_pi_symmetric(self, rtol: float = SYMMETRY_RTOL) -> bool:
        """True when every vertex ``p`` has ``-p`` among the vertices, within ``rtol`` x diameter."""
        tol = rtol * self.diameter
        gaps = np.linalg.norm(self._vertices[:, None, :] + self._vertices[None, :, :], axis=2)
        return bool(np.all(np.min(gaps, axis=1) <= tol))

    def scaled(self, factor: float) -> "ConvexPolygon":
        if factor <= 0.0:
            raise InvalidInputError(f"Scale factor must be positive, got {factor}")
        return ConvexPolygon(self._vertices * factor)

    def translated(self, dx: float, dy: float) -> "ConvexPolygon":
        return ConvexPolygon(self._vertices + np.array([dx, dy]))

    def __repr__(self) -> str:
        return f"ConvexPolygon(n_vertices={self.n_vertices}, area={self.area:.6g})"


def _symmetrize_even(points: np.ndarray) -> np.ndarray:
    """Makes the second half of an even vertex loop the exact negation of the first half."""
    n = points.shape[0]
    if n % 2 == 0:
        half = n // 2
        points[half:] = -points[:half]
    return points


def regular_polygon(n: int, radius: float) -> ConvexPolygon:
    """
    Regular polygon inscribed in the circle of the given radius about the origin.

    Vertex ``j`` sits at angle ``2*pi*j/n``. For even ``n`` the loop is exactly
    symmetric under rotation by pi.

    Args:
        n: Number of vertices (at least 3).
        radius: Circumradius (positive).

    Returns:
        The polygon.

    Raises:
        InvalidInputError: If ``n < 3`` or ``radius <= 0``.
    """
    if int(n) != n or n < 3:
        raise InvalidInputError(f"A regular polygon needs an integer n >= 3, got {n}")
    if not radius > 0.0:
        raise InvalidInputError(f"Radius must be positive, got {radius}")

    n = int(n)
    angles = 2.0 * np.pi * np.arange(n) / n
    points = radius * np.column_stack((np.cos(angles), np.sin(angles)))
    return ConvexPolygon(_symmetrize_even(points))


def circumscribed_polygon(radius: float, n: int) -> ConvexPolygon:
    """
    Tangent polygon with ``n`` edges around the disk of the given radius.

    Edge ``j`` touches the circle at angle ``2*pi*j/n``, so every edge line
    lies at distance ``radius`` from the origin, the polygon contains the
    disk, and for ``n`` dividing ``m`` the ``m``-gon is contained in the
    ``n``-gon. The area is ``n * radius**2 * tan(pi/n)``.

    Args:
        radius: Radius of the inscribed disk.
        n: Number of edges (at least 3).

    Returns:
        The polygon.

    Raises:
        InvalidInputError: If ``n < 3`` or ``radius <= 0``.
    """
    if int(n) != n or n < 3:
        raise InvalidInputError(f"A circumscribed polygon needs an integer n >= 3, got {n}")
    if not radius > 0.0:
        raise InvalidInputError(f"Radius must be positive, got {radius}")

    n = int(n)
    half_angle = math.pi / n
    angles = 2.0 * np.pi * np.arange(n) / n + half_angle
    points = (radius / math.cos(half_angle)) * np.column_stack((np.cos(angles), np.sin(angles)))
    return ConvexPolygon(_symmetrize_even(points))


def rectangle(x0: float, y0: float, x1: float, y1: float) -> ConvexPolygon:
    """Axis-aligned rectangle ``[x0, x1] x [y0, y1]``."""
    if not (x1 > x0 and y1 > y0):
        raise InvalidInputError(f"Rectangle corners must satisfy x0 < x1 and y0 < y1, got {(x0, y0, x1, y1)}")
    return ConvexPolygon([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])


def convex_hull_polygon(points: PointArray) -> ConvexPolygon:
    """
    Counterclockwise convex hull of a point set.

    Points lying on hull edges are not kept as vertices.

    Args:
        points: ``(m, 2)`` points, at least three of them non-collinear.

    Returns:
        The hull polygon.

    Raises:
        DegenerateInputError: Fewer than three points or all points collinear.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise InvalidInputError(f"Points must have shape (m, 2), got {pts.shape}")
    if pts.shape[0] < 3:
        raise DegenerateInputError(f"A convex hull needs at least 3 points, got {pts.shape[0]}")

    try:
        hull = ConvexHull(pts)
    except QhullError as e:
        log.error(f"Qhull rejected {pts.shape[0]} points: {e}")
        raise DegenerateInputError(f"Points are degenerate (collinear or coincident): {e}") from e

    # Qhull lists 2-D hull vertices counterclockwise
    return ConvexPolygon(pts[hull.vertices])


def random_convex_polygon(
        n_vertices: int,
        seed: int,
        radius: float = 1.0,
        max_attempts: int = 10000,
) -> ConvexPolygon:
    """
    Seeded random convex polygon with an exact vertex count.

    Draws ``n_vertices`` uniform points in the disk of the given radius and
    keeps their hull once it has exactly ``n_vertices`` vertices.

    Args:
        n_vertices: Required number of hull vertices.
        seed: Seed for ``numpy.random.default_rng``.
        radius: Radius of the sampling disk.
        max_attempts: Resampling cap.

    Returns:
        The polygon.

    Raises:
        InvalidInputError: Invalid arguments or no suitable sample within the cap.
    """
    if int(n_vertices) != n_vertices or n_vertices < 3:
        raise InvalidInputError(f"n_vertices must be an integer >= 3, got {n_vertices}")
    if not radius > 0.0:
        raise InvalidInputError(f"Radius must be positive, got {radius}")

    rng = np.random.default_rng(seed)
    for attempt in range(1, max_attempts + 1):
        r = radius * np.sqrt(rng.random(n_vertices))
        theta = 2.0 * np.pi * rng.random(n_vertices)
        sample = np.column_stack((r * np.cos(theta), r * np.sin(theta)))
        try:
            hull = ConvexHull(sample)
        except QhullError:
            continue
        if len(hull.vertices) == n_vertices:
            log.debug(f"Random convex {n_vertices}-gon (seed={seed}) accepted after {attempt} attempts")
            return ConvexPolygon(sample[hull.vertices])

    raise InvalidInputError(
        f"No convex {n_vertices}-gon found in {max_attempts} attempts (seed={seed})"
    )


@dataclass(frozen=True)
class CylinderDomain:
    """
    Right cylinder ``D x (0, L)`` over a cross-section symmetric under rotation by pi.

    Attributes:
        cross_section: The planar cross-section ``D``.
        length: Axial extent ``L``.
    """

    cross_section: ConvexPolygon
    length: float

    def __post_init__(self):
        if not self.length > 0.0:
            raise InvalidInputError(f"Cylinder length must be positive, got {self.length}")
        if not self.cross_section.is_pi_symmetric():
            raise GeometryError(
                "Cylinder cross-section must be symmetric under rotation by pi about the origin."
            )

    @property
    def volume(self) -> float:
        return self.cross_section.area * self.length

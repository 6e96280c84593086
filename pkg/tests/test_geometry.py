import math

import numpy as np
import pytest

from maglap.core.exceptions import DegenerateInputError, GeometryError, InvalidInputError
from maglap.geometry.mesh import refine_uniform, triangulate
from maglap.geometry.polygon import (
    ConvexPolygon,
    CylinderDomain,
    circumscribed_polygon,
    convex_hull_polygon,
    random_convex_polygon,
    rectangle,
    regular_polygon,
)


class TestConvexPolygon:
    def test_rectangle_measures(self):
        poly = rectangle(0.0, 0.0, 2.0, 1.0)
        assert poly.area == pytest.approx(2.0)
        assert poly.diameter == pytest.approx(math.sqrt(5.0))
        np.testing.assert_allclose(poly.centroid, [1.0, 0.5])
        assert poly.n_vertices == 4

    def test_vertices_are_read_only(self, unit_square):
        with pytest.raises(ValueError):
            unit_square.vertices[0, 0] = 5.0

    def test_clockwise_loop_rejected(self):
        with pytest.raises(GeometryError):
            ConvexPolygon([(0, 0), (0, 1), (1, 1), (1, 0)])

    def test_collinear_corner_rejected(self):
        with pytest.raises(GeometryError):
            ConvexPolygon([(0, 0), (1, 0), (2, 0), (2, 1), (0, 1)])

    def test_reflex_corner_rejected(self):
        with pytest.raises(GeometryError):
            ConvexPolygon([(0, 0), (2, 0), (1, 0.5), (2, 2), (0, 2)])

    @pytest.mark.parametrize("points", [
        [(0, 0), (1, 0)],
        [(0, 0), (1, 0), (1, 0), (0, 1)],
    ])
    def test_degenerate_input(self, points):
        with pytest.raises(DegenerateInputError):
            ConvexPolygon(points)

    def test_non_finite_vertices(self):
        with pytest.raises(InvalidInputError):
            ConvexPolygon([(0, 0), (1, 0), (np.nan, 1)])

    def test_contains_with_tolerance(self, unit_square):
        inside = unit_square.contains([(0.5, 0.5), (1.0, 0.5), (1.0 + 1e-9, 0.5), (2.0, 2.0)], tol=1e-8)
        assert inside.tolist() == [True, True, True, False]

    def test_pi_symmetry(self):
        assert regular_polygon(6, 1.0).is_pi_symmetric()
        assert rectangle(-1.0, -0.5, 1.0, 0.5).is_pi_symmetric()
        assert not regular_polygon(5, 1.0).is_pi_symmetric()
        assert not rectangle(0.0, 0.0, 1.0, 1.0).is_pi_symmetric()

    def test_scaled_and_translated(self, unit_square):
        assert unit_square.scaled(3.0).area == pytest.approx(9.0)
        np.testing.assert_allclose(unit_square.translated(1.0, -1.0).centroid, [1.5, -0.5])
        with pytest.raises(InvalidInputError):
            unit_square.scaled(0.0)


class TestConstructors:
    def test_regular_polygon_area(self):
        assert regular_polygon(4, 1.0).area == pytest.approx(2.0)
        assert regular_polygon(6, 2.0).area == pytest.approx(6.0 * math.sqrt(3.0))

    @pytest.mark.parametrize("n", [3, 4, 8, 16])
    def test_circumscribed_polygon_touches_unit_circle(self, n):
        poly = circumscribed_polygon(1.0, n)
        assert poly.area == pytest.approx(n * math.tan(math.pi / n))
        np.testing.assert_allclose(poly.edge_line_distances(), np.ones(n))

    def test_circumscribed_polygons_nest(self):
        outer = circumscribed_polygon(1.0, 8)
        inner = circumscribed_polygon(1.0, 16)
        assert np.all(outer.contains(inner.vertices, tol=1e-12))

    @pytest.mark.parametrize("n", [2, 3.5])
    def test_bad_vertex_count(self, n):
        with pytest.raises(InvalidInputError):
            regular_polygon(n, 1.0)

    def test_hull_drops_interior_points(self):
        poly = convex_hull_polygon([(0, 0), (1, 0), (1, 1), (0, 1), (0.5, 0.5), (0.5, 0.0)])
        assert poly.n_vertices == 4
        assert poly.area == pytest.approx(1.0)

    def test_hull_of_collinear_points(self):
        with pytest.raises(DegenerateInputError):
            convex_hull_polygon([(0, 0), (1, 1), (2, 2), (3, 3)])

    def test_random_polygon_is_reproducible(self):
        first = random_convex_polygon(6, seed=3)
        second = random_convex_polygon(6, seed=3)
        assert first.n_vertices == 6
        np.testing.assert_array_equal(first.vertices, second.vertices)
        assert not np.array_equal(first.vertices, random_convex_polygon(6, seed=4).vertices)


class TestCylinderDomain:
    def test_volume(self):
        cylinder = CylinderDomain(rectangle(-1.0, -1.0, 1.0, 1.0), 2.0)
        assert cylinder.volume == pytest.approx(8.0)

    def test_asymmetric_cross_section(self):
        with pytest.raises(GeometryError):
            CylinderDomain(regular_polygon(5, 1.0), 1.0)

    def test_non_positive_length(self):
        with pytest.raises(InvalidInputError):
            CylinderDomain(regular_polygon(6, 1.0), 0.0)


class TestMesh:
    @pytest.mark.parametrize("refine", [0, 1, 3])
    def test_triangle_count_and_area(self, unit_square, refine):
        mesh = triangulate(unit_square, refine)
        assert mesh.n_triangles == 4 * 4 ** refine
        assert mesh.area == pytest.approx(1.0, rel=1e-12)
        assert np.all(mesh.triangle_areas > 0.0)
        assert len(mesh.boundary_nodes) == 4 * 2 ** refine

    def test_boundary_nodes_lie_on_the_boundary(self):
        poly = regular_polygon(5, 1.0)
        mesh = triangulate(poly, 2)
        distances = np.array([poly.edge_line_distances(node).min() for node in mesh.nodes[mesh.boundary_nodes]])
        np.testing.assert_allclose(distances, 0.0, atol=1e-12)
        interior = np.array([poly.edge_line_distances(node).min() for node in mesh.nodes[mesh.interior_nodes]])
        assert np.all(interior > 1e-6)

    def test_refinement_halves_edges(self, unit_square):
        coarse = triangulate(unit_square, 1)
        fine = refine_uniform(coarse)
        assert fine.refine == 2
        assert fine.max_edge_length() == pytest.approx(0.5 * coarse.max_edge_length())

    def test_scaled_mesh(self, square_mesh):
        assert square_mesh.scaled(2.0).area == pytest.approx(4.0)

    def test_negative_refine(self, unit_square):
        with pytest.raises(InvalidInputError):
            triangulate(unit_square, -1)

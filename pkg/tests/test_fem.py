import math

import numpy as np
import pytest

from maglap.core.exceptions import InvalidInputError
from maglap.eigen.solver import smallest_eigenpairs
from maglap.fem.assembly import BoundaryCondition, assemble, rayleigh, restrict_dirichlet
from maglap.fem.field import Gauge, MagneticField
from maglap.fem.identity import complex_sine_combination, polyhedral_identity_sides, sine_product
from maglap.fem.quadrature import TRIANGLE_WEIGHTS, integrate_rectangle
from maglap.geometry.mesh import triangulate
from maglap.harness.pipeline import pencils


def test_triangle_weights_sum_to_one():
    assert TRIANGLE_WEIGHTS.sum() == pytest.approx(1.0, abs=1e-14)


def test_integrate_rectangle_polynomial():
    value = integrate_rectangle(lambda x, y: x * x * y, order=4, x_range=(0.0, 2.0), y_range=(0.0, 1.0))
    assert value == pytest.approx(4.0 / 3.0)


@pytest.mark.parametrize("gauge, expected", [
    (Gauge.LANDAU, [0.0, 3.0]),
    (Gauge.SYMMETRIC, [-3.0, 1.5]),
])
def test_vector_potential(gauge, expected):
    field = MagneticField(3.0, gauge)
    np.testing.assert_allclose(field.vector_potential(np.array([1.0, 2.0])), expected)


def test_field_rejects_non_finite_intensity():
    with pytest.raises(InvalidInputError):
        MagneticField(math.inf)


class TestAssembly:
    def test_non_magnetic_neumann_pencil(self, square_mesh):
        pencil = assemble(square_mesh, MagneticField(0.0))
        ones = np.ones(pencil.dimension)
        np.testing.assert_allclose(pencil.K @ ones, 0.0, atol=1e-12)
        assert ones @ pencil.M @ ones == pytest.approx(1.0)
        assert pencil.bc is BoundaryCondition.NEUMANN

    def test_pencil_invariants(self, magnetic_pencils):
        for pencil in magnetic_pencils.values():
            measured = pencil.check_invariants(np.random.default_rng(0))
            assert measured["hermitian_defect"] <= 1e-12
            assert measured["min_mass_pivot"] > 0.0
            assert measured["min_energy_ratio"] >= -1e-10

    def test_stiffness_is_genuinely_complex(self, magnetic_pencils):
        assert np.max(np.abs(magnetic_pencils[BoundaryCondition.NEUMANN].K.imag)) > 0.0

    def test_dirichlet_restriction(self, square_mesh, magnetic_pencils):
        dirichlet = magnetic_pencils[BoundaryCondition.DIRICHLET]
        assert dirichlet.dimension == square_mesh.interior_nodes.size
        np.testing.assert_array_equal(dirichlet.dof_map, square_mesh.interior_nodes)
        with pytest.raises(InvalidInputError):
            restrict_dirichlet(dirichlet, square_mesh)

    def test_rayleigh_of_constant(self, square_mesh):
        pencil = assemble(square_mesh, MagneticField(0.0))
        assert rayleigh(pencil, np.ones(pencil.dimension)) == pytest.approx(0.0, abs=1e-12)
        with pytest.raises(InvalidInputError):
            rayleigh(pencil, np.zeros(pencil.dimension))

    def test_conjugate_field_conjugates_stiffness(self, square_mesh):
        plus = assemble(square_mesh, MagneticField(2.0))
        minus = assemble(square_mesh, MagneticField(-2.0))
        np.testing.assert_allclose(minus.K, plus.K.conj(), atol=1e-13)


class TestSecondDerivativeIdentity:
    def test_real_sine_product(self):
        lhs, rhs = polyhedral_identity_sides(sine_product())
        assert lhs.real == pytest.approx(math.pi ** 4 / 4.0, rel=1e-10)
        assert rhs.real == pytest.approx(math.pi ** 4 / 4.0, rel=1e-10)
        assert abs(lhs.imag) < 1e-12 and abs(rhs.imag) < 1e-12

    def test_complex_combination_real_parts(self):
        lhs, rhs = polyhedral_identity_sides(complex_sine_combination())
        assert lhs.real == pytest.approx(rhs.real, rel=1e-10)

    def test_bad_indices(self):
        with pytest.raises(InvalidInputError):
            polyhedral_identity_sides(sine_product(), k=2)


class TestDirichletRestriction:
    def test_cauchy_interlacing(self, unit_square):
        mesh = triangulate(unit_square, 2)
        pair = pencils(mesh, MagneticField(1.5))
        neumann, dirichlet = pair[BoundaryCondition.NEUMANN], pair[BoundaryCondition.DIRICHLET]
        mu = smallest_eigenpairs(neumann, neumann.dimension).values
        lam = smallest_eigenpairs(dirichlet, dirichlet.dimension).values
        removed = neumann.dimension - dirichlet.dimension
        assert removed == len(mesh.boundary_nodes)
        eps = 1e-9 * mu[-1]
        assert np.all(mu[:lam.size] <= lam + eps)
        assert np.all(lam <= mu[removed:removed + lam.size] + eps)

    def test_gauge_discrepancy_shrinks_under_refinement(self, unit_square):
        gaps = []
        for refine in (4, 5):
            mesh = triangulate(unit_square, refine)
            values = [
                smallest_eigenpairs(pencils(mesh, MagneticField(1.0, gauge))[BoundaryCondition.DIRICHLET], 1).value(1)
                for gauge in (Gauge.LANDAU, Gauge.SYMMETRIC)
            ]
            gaps.append(abs(values[0] - values[1]) / values[0])
        assert gaps[1] < gaps[0]
        assert gaps[1] < 0.05

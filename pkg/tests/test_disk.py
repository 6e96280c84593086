import math

import numpy as np
import pytest
import scipy.linalg
from scipy.special import hyp1f1

from maglap.core.exceptions import ConfigurationError, InvalidInputError, LaguerreDomainError, NoRootError
from maglap.disk.fibers import (
    F,
    G,
    FiberKind,
    bracket_smallest_root,
    disk_reference_values,
    fiber_root_with_extension,
    lambda_01,
    mu_n1,
    smallest_positive_root,
)
from maglap.disk.identity import derivative_quotient, gauge_phase_norms, verify_314
from maglap.disk.laguerre import laguerre, laguerre_analytic, rising_factorial
from maglap.disk.oracle import (
    bessel_dirichlet_limit,
    fiber_oracle,
    fiber_pencil,
    fiber_spectrum,
    potential_floor,
)

X = np.linspace(0.0, 3.0, 7)
INTERIOR = np.linspace(0.2, 3.0, 9)


def radial_solution(n, b, energy, r):
    """Regular radial solution exp(-b r^2/4) r^n L_nu^n(b r^2/2) of the fiber equation."""
    lag = laguerre if n >= 0 else laguerre_analytic
    nu = 0.5 * (energy / b - 1.0)
    return np.exp(-0.25 * b * r * r) * r ** n * lag(nu, n, 0.5 * b * r * r)


class TestLaguerre:
    @pytest.mark.parametrize("alpha, expected", [
        (0, 1.0 - X),
        (-1, -X),
        (2, 3.0 - X),
    ])
    def test_degree_one_closed_forms(self, alpha, expected):
        np.testing.assert_allclose(laguerre(1.0, alpha, X), expected, atol=1e-13)

    def test_real_degree_is_confluent_hypergeometric(self):
        np.testing.assert_allclose(laguerre(0.5, 0, X), hyp1f1(-0.5, 1, X), rtol=1e-12)

    def test_continuous_in_the_degree(self):
        at = laguerre(2.0, 1, 0.7)
        assert laguerre(2.0 + 1e-9, 1, 0.7) == pytest.approx(at, rel=1e-7)
        assert laguerre(2.0 - 1e-9, 1, 0.7) == pytest.approx(at, rel=1e-7)

    def test_analytic_form_matches_classical_above_the_order(self):
        assert laguerre_analytic(3.0, -2, 1.3) == pytest.approx(laguerre(3.0, -2, 1.3), rel=1e-12)

    def test_scalar_in_scalar_out(self):
        assert isinstance(laguerre(0.3, 1, 0.5), float)

    @pytest.mark.parametrize("nu, alpha, x", [
        (1.0, 0.5, 1.0),
        (1.0, 0, -1.0),
        (np.nan, 0, 1.0),
    ])
    def test_domain_errors(self, nu, alpha, x):
        with pytest.raises(LaguerreDomainError):
            laguerre(nu, alpha, x)

    def test_rising_factorial(self):
        assert rising_factorial(2.0, 3) == pytest.approx(24.0)
        assert rising_factorial(2.0, 0) == pytest.approx(1.0)

    @pytest.mark.parametrize("nu", [0.3, 1.7, 2.5])
    @pytest.mark.parametrize("alpha", [0, 1, 3])
    def test_derivative_lowers_degree_and_raises_order(self, nu, alpha):
        h = 1e-6
        slope = (laguerre(nu, alpha, INTERIOR + h) - laguerre(nu, alpha, INTERIOR - h)) / (2.0 * h)
        np.testing.assert_allclose(slope, -laguerre(nu - 1.0, alpha + 1, INTERIOR), rtol=1e-6, atol=1e-8)

    @pytest.mark.parametrize("nu", [0.3, 1.7])
    @pytest.mark.parametrize("alpha", [-1, -2])
    def test_analytic_form_derivative(self, nu, alpha):
        h = 1e-6
        upper = laguerre_analytic(nu, alpha, INTERIOR + h)
        lower = laguerre_analytic(nu, alpha, INTERIOR - h)
        expected = -laguerre_analytic(nu - 1.0, alpha + 1, INTERIOR)
        np.testing.assert_allclose((upper - lower) / (2.0 * h), expected, rtol=1e-6, atol=1e-8)

    @pytest.mark.parametrize("nu, alpha", [(0.3, 0), (1.7, 1), (2.5, 3), (0.6, -1)])
    def test_solves_the_laguerre_equation(self, nu, alpha):
        h = 1e-4
        y = laguerre_analytic(nu, alpha, INTERIOR)
        y_plus = laguerre_analytic(nu, alpha, INTERIOR + h)
        y_minus = laguerre_analytic(nu, alpha, INTERIOR - h)
        first = (y_plus - y_minus) / (2.0 * h)
        second = (y_plus - 2.0 * y + y_minus) / (h * h)
        residual = INTERIOR * second + (alpha + 1.0 - INTERIOR) * first + nu * y
        np.testing.assert_allclose(residual, 0.0, atol=1e-5)

    @pytest.mark.parametrize("nu", [0.3, 1.7, 2.5])
    def test_order_two_confluent_form(self, nu):
        expected = (nu + 1.0) * (nu + 2.0) / 2.0 * hyp1f1(-nu, 3, X)
        np.testing.assert_allclose(laguerre(nu, 2, X), expected, rtol=1e-12)


class TestFiberFunctions:
    def test_dirichlet_radial_zero_at_crossing(self):
        assert G(2.0, 6.0) == pytest.approx(0.0, abs=1e-13)

    @pytest.mark.parametrize("n", [-1, 2])
    def test_neumann_fibers_vanish_at_crossing(self, n):
        assert F(n, 2.0, 6.0) == pytest.approx(0.0, abs=1e-13)

    @pytest.mark.parametrize("b, mu", [(1.3, 3.7), (2.0, 5.1)])
    @pytest.mark.parametrize("n", [-2, -1, 0, 1, 3])
    def test_neumann_function_is_the_radial_slope(self, n, b, mu):
        h = 1e-6
        slope = (radial_solution(n, b, mu, 1.0 + h) - radial_solution(n, b, mu, 1.0 - h)) / (2.0 * h)
        assert F(n, b, mu) == pytest.approx(slope, rel=1e-6, abs=1e-8)

    @pytest.mark.parametrize("b, lam", [(1.3, 3.7), (2.0, 5.1), (0.5, 7.0)])
    def test_dirichlet_function_is_the_boundary_value(self, b, lam):
        assert G(b, lam) * math.exp(-0.25 * b) == pytest.approx(radial_solution(0, b, lam, 1.0), rel=1e-12)

    def test_vectorised_evaluation(self):
        energies = np.array([1.0, 3.0, 6.0])
        np.testing.assert_allclose(F(0, 1.0, energies), [F(0, 1.0, e) for e in energies])

    @pytest.mark.parametrize("n, b", [(0.5, 1.0), (0, 0.0), (0, -1.0)])
    def test_invalid_arguments(self, n, b):
        with pytest.raises(InvalidInputError):
            F(n, b, 1.0)


class TestRootScan:
    def test_linear_root(self):
        assert smallest_positive_root(lambda x: x - 0.55, upper=1.0, step=0.1) == pytest.approx(0.55, rel=1e-10)

    def test_first_of_several_roots(self):
        root, lo, hi = bracket_smallest_root(np.sin, upper=10.0, step=0.5)
        assert root == pytest.approx(math.pi, rel=1e-10)
        assert lo <= root <= hi

    def test_no_root_reports_ceiling(self):
        with pytest.raises(NoRootError) as info:
            smallest_positive_root(lambda x: x + 1.0, upper=2.0, step=0.1)
        assert info.value.upper == 2.0

    def test_step_must_be_below_ceiling(self):
        with pytest.raises(InvalidInputError):
            smallest_positive_root(lambda x: x - 0.5, upper=1.0, step=1.0)


class TestFiberRoots:
    def test_crossing_at_b_two(self):
        assert lambda_01(2.0).value == pytest.approx(6.0, rel=1e-9)
        assert mu_n1(-1, 2.0).value == pytest.approx(6.0, rel=1e-9)
        assert mu_n1(2, 2.0).value == pytest.approx(6.0, rel=1e-9)

    def test_curve_ids(self):
        assert mu_n1(-1, 1.0).curve_id == "mu_-1,1"
        assert lambda_01(1.0).curve_id == "lambda_0,1"

    def test_small_field_recovers_bessel_zero(self):
        assert lambda_01(1e-3).value == pytest.approx(bessel_dirichlet_limit(), rel=1e-2)
        assert bessel_dirichlet_limit() == pytest.approx(5.783185962946784, rel=1e-12)

    @pytest.mark.parametrize("b", [0.5, 1.0, 3.0])
    def test_dirichlet_above_and_neumann_below_landau_level(self, b):
        assert lambda_01(b).value > b
        ground = next(iter(disk_reference_values(b, FiberKind.NEUMANN_FIBER).values()))
        assert ground.value < b

    def test_reference_values_sorted(self):
        values = [result.value for result in disk_reference_values(1.0, FiberKind.NEUMANN_FIBER, count=4).values()]
        assert values == sorted(values)
        assert len(values) == 4

    def test_no_root_below_small_ceiling(self):
        with pytest.raises(NoRootError):
            lambda_01(1.0, upper=1.0)


class TestFiberOracle:
    @pytest.mark.parametrize("n", [-1, 0, 1, 2])
    def test_agrees_with_laguerre_roots(self, n):
        oracle = fiber_oracle(n, 2.0, FiberKind.NEUMANN_FIBER, grid=2000, modes=1)[0]
        assert oracle == pytest.approx(mu_n1(n, 2.0).value, rel=1e-3)

    @pytest.mark.parametrize("b", [0.5, 1.0, 2.0, 4.0])
    @pytest.mark.parametrize("n", range(-2, 4))
    def test_converges_to_laguerre_roots(self, n, b):
        exact = fiber_root_with_extension(n, b, FiberKind.NEUMANN_FIBER).value
        coarse = fiber_oracle(n, b, FiberKind.NEUMANN_FIBER, grid=400, modes=1)[0]
        fine = fiber_oracle(n, b, FiberKind.NEUMANN_FIBER, grid=800, modes=1)[0]
        assert abs(fine - exact) <= 0.35 * abs(coarse - exact) + 1e-9 * exact
        assert fine == pytest.approx(exact, rel=1e-4)

    def test_dirichlet_radial_agrees(self):
        oracle = fiber_oracle(0, 1.0, FiberKind.DIRICHLET_RADIAL, grid=1000, modes=1)[0]
        exact = lambda_01(1.0).value
        assert oracle == pytest.approx(exact, rel=1e-3)
        assert oracle >= exact

    def test_shift_invert_matches_dense_solve(self):
        K, M = fiber_pencil(1, 1.5, FiberKind.NEUMANN_FIBER, grid=200)
        dense = scipy.linalg.eigh(K.toarray(), M.toarray(), eigvals_only=True, subset_by_index=[0, 2])
        np.testing.assert_allclose(fiber_oracle(1, 1.5, FiberKind.NEUMANN_FIBER, grid=200, modes=3), dense, rtol=1e-8)

    def test_non_magnetic_limit(self):
        value = fiber_oracle(0, 0.0, FiberKind.DIRICHLET_RADIAL, grid=400, modes=1)[0]
        assert value == pytest.approx(bessel_dirichlet_limit(), rel=1e-3)

    def test_unpinned_origin_rejected(self):
        with pytest.raises(ConfigurationError):
            fiber_pencil(1, 1.0, FiberKind.NEUMANN_FIBER, pin_origin=False)

    def test_coarse_grid_rejected(self):
        with pytest.raises(InvalidInputError):
            fiber_pencil(0, 1.0, FiberKind.NEUMANN_FIBER, grid=50)

    @pytest.mark.parametrize("n, b, expected", [
        (0, 2.0, 0.0),
        (3, 2.0, 4.0),
        (1, 4.0, 0.0),
        (-1, 4.0, 8.0),
        (-3, 2.0, 16.0),
    ])
    def test_potential_floor(self, n, b, expected):
        assert potential_floor(n, b) == pytest.approx(expected)

    def test_disk_spectrum(self):
        spectrum = fiber_spectrum(1.0, FiberKind.DIRICHLET_RADIAL, 3, grid=400)
        assert len(spectrum) == 3
        assert spectrum.ceiling >= spectrum.values[-1]
        assert spectrum.meta.domain == "disk" and spectrum.meta.bc == "dirichlet"
        assert spectrum.value(1) == pytest.approx(lambda_01(1.0).value, rel=2e-3)


class TestDerivativeQuotient:
    @pytest.mark.parametrize("b", [1.0, 2.0])
    def test_quotient_equals_energy_plus_flux(self, b):
        result = derivative_quotient(b)
        assert abs(result.defect) <= 1e-4
        assert result.lam == pytest.approx(lambda_01(b).value)

    def test_flux_term_in_the_non_magnetic_limit(self):
        assert derivative_quotient(0.01).flux_ratio == pytest.approx(-2.0, abs=0.05)

    def test_ratio_and_energy_pair(self):
        ratio, lam = verify_314(1.0)
        result = derivative_quotient(1.0)
        assert (ratio, lam) == (result.ratio, result.lam)

    def test_landau_phase(self):
        direct, symmetric = gauge_phase_norms(1.5)
        assert direct == pytest.approx(symmetric, rel=1e-10)

    def test_non_positive_field(self):
        with pytest.raises(InvalidInputError):
            derivative_quotient(0.0)

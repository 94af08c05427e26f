import math

import numpy as np
import pytest

from freeprob import measures as M
from freeprob.exceptions import ConvergenceError, PoleError
from freeprob.transforms import (
    ConeSpec,
    EvalMethod,
    cauchy_transform,
    char_function_meixner,
    default_cone,
    f_inverse_numeric,
    f_of,
    g_contour_shift,
    g_logistic,
    g_logistic_curve_im,
    g_meixner_continued,
    g_meixner_series,
    g_quadrature,
    logistic_curve_series,
    recursion_residual,
    stieltjes_invert,
    voiculescu_phi,
)

GRID = (np.linspace(-5, 5, 20)[None, :] + 1j * np.linspace(0.2, 5, 20)[:, None]).ravel()


# --------------------------------------------------------------- quadrature

def test_quadrature_examples():
    assert abs(g_quadrature(M.cauchy(), 1j) + 0.5j) < 1e-9
    assert abs(g_quadrature(M.semicircle(), 2j) - 1j * (1 - math.sqrt(2))) < 1e-9
    y = 1e6
    assert abs(g_quadrature(M.meixner(0.5), 1j * y) * 1j * y - 1) < 1e-9


def test_quadrature_refuses_points_near_axis():
    with pytest.raises(ValueError):
        g_quadrature(M.logistic(), 1 + 0.01j)
    with pytest.raises(ValueError):
        g_quadrature(M.logistic(), 1 - 1j)


def test_quadrature_error_estimate_reported():
    val, err = g_quadrature(M.meixner(0.3), 0.4 + 0.06j, full_output=True)
    ref = g_meixner_series(0.3, 0.4 + 0.06j)
    assert abs(val - ref) < 1e-9
    assert err < 1e-9


# ------------------------------------------------------------ Meixner routes

def test_series_matches_quadrature():
    assert abs(g_meixner_series(0.5, 1j) - g_quadrature(M.meixner(0.5), 1j)) < 1e-8


def test_series_symmetry_and_decay():
    for z in (0.7 + 0.3j, -2 - 0.1j, 3 + 4j):
        assert abs(g_meixner_series(0.3, -np.conj(z)) + np.conj(g_meixner_series(0.3, z))) < 1e-12
    assert abs(g_meixner_series(0.5, 1e6j) + 1e-6j) < 1e-12


def test_series_domain():
    with pytest.raises(ValueError):
        g_meixner_series(0.7, 1j)
    with pytest.raises(PoleError):
        g_meixner_series(0.3, -1.3j)


def test_series_cap_raises():
    with pytest.raises(ConvergenceError):
        g_meixner_series(0.5, 0.3 + 0.2j, tol=0.0, max_terms=500)


def test_continuation_examples():
    assert abs(g_meixner_continued(0.3, 1j) - g_meixner_series(0.3, 1j)) < 1e-8
    assert g_meixner_continued(0.3, 1 - 0.3j).imag > 0
    with pytest.raises(PoleError):
        g_meixner_continued(0.3, -0.3j)
    with pytest.raises(PoleError):
        g_meixner_continued(0.3, -2.3j)
    with pytest.raises(ConvergenceError):
        g_meixner_continued(0.3, 1 - 40j)


def test_continuation_matches_series_below_axis():
    z = np.array([0.5 - 0.25j, -3 - 1.7j, 10 - 0.29j, 0.01 - 0.31j])
    assert np.max(np.abs(g_meixner_continued(0.3, z) - g_meixner_series(0.3, z))) < 1e-9


def test_continuation_for_large_t():
    # t > 1/2 has no residue series; compare with quadrature where both apply
    z = np.array([1 + 0.7j, -2 + 3j])
    assert np.max(np.abs(g_meixner_continued(1.7, z) - g_quadrature(M.meixner(1.7), z))) < 1e-10


@pytest.mark.parametrize("t, z", [(0.3, 2j), (0.5, 1 + 1j), (0.1, 5 + 0.2j)])
def test_recursion_residual_examples(t, z):
    assert recursion_residual(t, z) < 1e-8


def test_recursion_residual_precondition():
    with pytest.raises(ValueError):
        recursion_residual(0.3, 1 + 0.3j)


@pytest.mark.parametrize("t", [0.1, 0.3, 0.45])
def test_curve_identity(t):
    # Im G_t(x - t i) = (t / x) Re G_{t+1/2}(x + (1/2 - t) i), series against quadrature
    x = np.geomspace(0.1, 20, 120)
    lhs = np.imag(g_meixner_series(t, x - 1j * t))
    rhs = t / x * np.real(g_quadrature(M.meixner(t + 0.5), x + (0.5 - t) * 1j))
    assert np.max(np.abs(lhs - rhs)) < 1e-8


# ------------------------------------------------------------ logistic routes

def test_logistic_at_i():
    ref = -1j * (math.pi**2 / 2 - 4)
    assert abs(g_logistic(1j) - ref) < 1e-13
    assert abs(g_logistic(1j, EvalMethod.RESIDUE_SERIES) - ref) < 1e-10
    assert abs(g_logistic(1e6j) + 1e-6j) < 1e-15


def test_logistic_imaginary_axis_sign():
    for y in (-0.4, 0.0, 1.0, 10.0):
        assert g_logistic(1j * y).imag < 0


def test_trigamma_form_validated_against_direct_sum():
    z = np.concatenate([GRID, GRID - 0.45j, GRID.real - 0.5j + 0.0])
    z = z[np.abs(z + 0.5j) > 1e-3]
    direct, bound = g_logistic(z, EvalMethod.RESIDUE_SERIES, n_terms=10**4, full_output=True)
    assert np.max(bound) < 1e-10
    assert np.max(np.abs(g_logistic(z) - direct)) < 1e-10


def test_logistic_poles():
    with pytest.raises(PoleError):
        g_logistic(-0.5j)
    with pytest.raises(PoleError):
        g_logistic(-2.5j, EvalMethod.RESIDUE_SERIES)


def test_curve_closed_form():
    g1 = 0.5 * (1 + math.pi**2 / math.sinh(math.pi) ** 2)
    assert g_logistic_curve_im(1.0) == pytest.approx(g1, rel=1e-15)
    assert g_logistic_curve_im(1.0) == pytest.approx(logistic_curve_series(1.0), abs=1e-9)
    x = np.linspace(0.05, 30, 200)
    assert np.array_equal(g_logistic_curve_im(x), g_logistic_curve_im(-x))
    assert np.all(g_logistic_curve_im(x) > 0)
    assert np.max(np.abs(np.imag(g_logistic(x - 0.5j)) - g_logistic_curve_im(x))) < 1e-10
    with pytest.raises(PoleError):
        g_logistic_curve_im(0.0)


def test_curve_series_tail_bound_holds():
    x = np.geomspace(0.1, 20, 50)
    for n in (50, 200, 1000):
        val, bound = logistic_curve_series(x, n_terms=n, full_output=True)
        assert np.all(np.abs(val - g_logistic_curve_im(x)) <= bound)
    with pytest.raises(ValueError):
        logistic_curve_series(20.0, n_terms=30)


# ----------------------------------------------------------- agreement

def _pairwise_max(values):
    worst = 0.0
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            worst = max(worst, float(np.max(np.abs(values[i] - values[j]))))
    return worst


@pytest.mark.parametrize("t", [0.25, 0.5])
def test_agreement_matrix_meixner(t):
    vals = [g_meixner_series(t, GRID), g_quadrature(M.meixner(t), GRID),
            g_meixner_continued(t, GRID, min_im=3.0)]
    assert _pairwise_max(vals) < 1e-7


def test_agreement_matrix_logistic():
    vals = [g_logistic(GRID), g_logistic(GRID, EvalMethod.RESIDUE_SERIES),
            g_quadrature(M.logistic(), GRID)]
    assert _pairwise_max(vals) < 1e-7


@pytest.mark.parametrize("measure", [M.semicircle, M.free_poisson, M.cauchy, lambda: M.beta(0.75)])
def test_agreement_matrix_closed_forms(measure):
    mu = measure()
    vals = [cauchy_transform(mu, GRID), cauchy_transform(mu, GRID, EvalMethod.QUADRATURE)]
    assert _pairwise_max(vals) < 1e-7


def test_contour_shift_continues_below_axis():
    mu = M.user_defined(M.hyperbolic_secant().density, strip=0.5, complex_density=True,
                        scale=0.5, name="sech")
    z = np.array([0.3 - 0.2j, -2 - 0.1j, 1 + 2j, 0.5 + 0.1j])
    assert np.max(np.abs(g_contour_shift(mu, z) - g_meixner_series(0.5, z))) < 1e-9
    with pytest.raises(ValueError):
        g_contour_shift(M.user_defined(lambda x: np.exp(-np.asarray(x) ** 2)), z)


def test_method_validation():
    with pytest.raises(ValueError):
        cauchy_transform(M.logistic(), 1j, EvalMethod.CONTINUATION)
    with pytest.raises(ValueError):
        cauchy_transform(M.semicircle(), 1j, EvalMethod.TRIGAMMA_CLOSED)
    with pytest.raises(ValueError):
        cauchy_transform(M.meixner(0.3), 1j, EvalMethod.CLOSED_FORM)


# ------------------------------------------------------- Herglotz and F

CATALOG = [lambda: M.meixner(0.3), M.hyperbolic_secant, lambda: M.meixner(1.5), M.logistic,
           M.semicircle, M.free_poisson, M.cauchy, lambda: M.beta(0.6), M.two_point]


@pytest.mark.parametrize("measure", CATALOG)
def test_herglotz(measure):
    mu = measure()
    z = GRID[np.abs(GRID.real) < 4.9]  # the two-point law has poles on the axis only
    g = cauchy_transform(mu, z)
    assert np.all(g.imag < 0)
    assert np.all((1 / g).imag >= z.imag * (1 - 1e-12))


def test_f_of_examples():
    z = np.array([1 + 2j, -3 + 0.5j])
    assert np.max(np.abs(f_of(M.cauchy(), z) - (z + 1j))) < 1e-10
    assert f_of(M.meixner(0.3), -0.3j) == 0
    assert f_of(M.logistic(), -1.5j) == 0
    for measure in CATALOG:
        assert f_of(measure(), 2j).imag >= 2
    with pytest.raises(ZeroDivisionError):
        f_of(M.two_point(), 0j)


# ------------------------------------------------------------- inversion

def test_cone_membership():
    cone = ConeSpec(1.0, 8.0)
    assert cone.contains(1 + 9j)
    assert not cone.contains(10 + 9j)
    assert not cone.contains(7j)
    assert default_cone(M.semicircle()).M == 16.0


def test_inverse_semicircle_at_5i():
    w = f_inverse_numeric(M.semicircle(), 5j, ConeSpec(1.0, 1.0))
    assert abs(w - 4.8j) < 1e-10
    assert abs(voiculescu_phi(M.semicircle(), 5j, ConeSpec(1.0, 1.0)) + 0.2j) < 1e-10


def test_inverse_cauchy_and_free_poisson():
    for z in (20j, 3 + 18j, -10 + 30j):
        assert abs(f_inverse_numeric(M.cauchy(), z) - (z - 1j)) < 1e-10
        assert abs(voiculescu_phi(M.cauchy(), z) + 1j) < 1e-10
    cone = ConeSpec(1.5, 7.0)  # 8 + 8i sits on the boundary of the unit-aperture cone
    z = 8 + 8j
    w = f_inverse_numeric(M.free_poisson(), z, cone)
    assert abs(w - M.closed_form_F_inverse("free_poisson", z)) < 1e-10


def test_inverse_outside_cone():
    with pytest.raises(ValueError):
        f_inverse_numeric(M.semicircle(), 5j)


@pytest.mark.parametrize("measure", [lambda: M.meixner(0.3), lambda: M.meixner(0.5), M.logistic,
                                     M.semicircle, M.free_poisson, M.cauchy, lambda: M.beta(0.75)])
def test_inversion_round_trip(measure):
    mu = measure()
    cone = default_cone(mu)
    rng = np.random.default_rng(3)
    for _ in range(6):
        y = cone.M + rng.uniform(0.5, 30)
        z = complex(rng.uniform(-0.95, 0.95) * y, y)
        w = f_inverse_numeric(mu, z, cone)
        assert w.imag > 0
        assert abs(f_of(mu, w) - z) < 1e-10 * abs(z)


@pytest.mark.parametrize("measure, variance", [(lambda: M.meixner(0.5), 0.25),
                                               (M.logistic, 1 / 12),
                                               (M.semicircle, 1.0)])
def test_phi_asymptotics(measure, variance):
    # phi(z) ~ r_2 / z, so phi(iy) * iy tends to the variance
    y = 400.0
    assert (voiculescu_phi(measure(), 1j * y) * 1j * y).real == pytest.approx(variance, rel=1e-3)


# ---------------------------------------------------- other integrals

def test_char_function():
    assert abs(char_function_meixner(0.3, 0.0) - 1) < 1e-12
    assert abs(char_function_meixner(0.5, 1.0) - 1 / math.cosh(0.5)) < 1e-10
    assert abs(char_function_meixner(0.25, 2.0) - (1 / math.cosh(1.0)) ** 0.5) < 1e-10
    assert abs(char_function_meixner(1.5, 3.0) - (1 / math.cosh(1.5)) ** 3) < 1e-10


def test_stieltjes_inversion():
    assert stieltjes_invert(M.logistic(), 0.0) == pytest.approx(math.pi / 2, abs=1e-6)
    short = stieltjes_invert(M.logistic(), 0.0, eps_ladder=(0.1, 0.05, 0.025))
    assert short == pytest.approx(math.pi / 2, abs=1e-2)
    assert stieltjes_invert(M.meixner(0.5), 1.0) == pytest.approx(1 / math.cosh(math.pi), abs=1e-6)
    assert stieltjes_invert(M.semicircle(), 0.0) == pytest.approx(1 / math.pi, abs=1e-6)
    x = 0.7
    assert stieltjes_invert(M.meixner(0.1), x) == pytest.approx(float(M.meixner(0.1).density(x)),
                                                                abs=1e-6)

import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import special as sc

from freeprob import measures as M
from freeprob.quadrature import integrate


@pytest.mark.parametrize("t", [0.1, 0.25, 0.5, 1.0, 2.5])
def test_meixner_mass(t):
    mu = M.meixner(t)
    assert integrate(mu.density, breakpoints=(0.0,), X=mu.tail_start) == pytest.approx(1.0, abs=1e-10)


def test_meixner_density_against_scipy_gamma():
    t = 0.3
    x = np.linspace(-4, 4, 33)
    ref = 4**t / (2 * math.pi * sc.gamma(2 * t)) * np.abs(sc.gamma(t + 1j * x)) ** 2
    assert np.allclose(M.density_meixner(t, x), ref, rtol=1e-12)


def test_secant_identity():
    x = np.linspace(-5, 5, 1001)
    assert np.max(np.abs(M.density_meixner(0.5, x) - 1 / np.cosh(math.pi * x))) < 1e-12
    assert np.allclose(M.hyperbolic_secant().density(x), M.meixner(0.5).density(x), rtol=1e-12)


def test_densities_do_not_overflow():
    x = np.array([-1e4, -800.0, 0.0, 800.0, 1e4])
    with np.errstate(over="raise", invalid="raise", divide="raise"):
        assert np.all(np.isfinite(M.density_logistic(x)))
        assert np.all(np.isfinite(M.hyperbolic_secant().density(x)))


def test_meixner_density_accepts_complex_argument():
    # |Gamma(t + ix)|^2 continues as Gamma(t + ix) Gamma(t - ix)
    t, w = 0.4, 0.7 - 0.2j
    val = M.density_meixner(t, w)
    ref = 4**t / (2 * math.pi * sc.gamma(2 * t)) * sc.gamma(t + 1j * w) * sc.gamma(t - 1j * w)
    assert abs(val - ref) < 1e-12


def test_logistic_mass_and_peak():
    mu = M.logistic()
    assert integrate(mu.density, breakpoints=(0.0,), X=mu.tail_start) == pytest.approx(1.0, abs=1e-12)
    assert mu.density(0.0) == pytest.approx(math.pi / 2)


def test_tail_cutoff_bounds_mass():
    for t in (0.1, 0.5, 2.0):
        X = M.meixner_tail_cutoff(t, 1e-10)
        mu = M.meixner(t)
        tail = 2 * integrate(mu.density, support=(X, math.inf), X=X)
        assert tail < 1e-10


@pytest.mark.parametrize("tag, expected", [
    ("meixner:t=0.3", "meixner:t=0.3"),
    ("meixner:t=1/2", "meixner:t=0.5"),
    ("secant", "secant"),
    ("mu2", "logistic"),
    ("semicircle", "semicircle"),
    ("free_poisson", "free_poisson"),
    ("cauchy", "cauchy"),
    ("beta:a=0.5", "beta:a=0.5"),
    ("two_point", "two_point"),
])
def test_parse_measure(tag, expected):
    assert M.parse_measure(tag).name == expected


@pytest.mark.parametrize("tag", ["meixner", "nope", "semicircle:t=1", "beta:a=0.2", "meixner:t=-1"])
def test_parse_measure_rejects(tag):
    with pytest.raises(ValueError):
        M.parse_measure(tag)


def test_unimplemented_tags():
    for tag in M.UNIMPLEMENTED_TAGS:
        with pytest.raises(NotImplementedError):
            M.parse_measure(tag)


def test_meixner_is_cached():
    assert M.meixner(0.3) is M.meixner(np.float64(0.3))


def test_reference_moments():
    assert M.reference_moments("rescaled_secant", 10).even() == (1, 5, 61, 1385, 50521)
    assert M.reference_moments("rescaled_logistic", 8).even() == (
        Fraction(1, 3), Fraction(7, 15), Fraction(31, 21), Fraction(127, 15))
    assert M.reference_moments("semicircle", 6).even() == (1, 2, 5)
    assert M.reference_moments("free_poisson", 4).values == (1, 2, 5, 14)
    with pytest.raises(ValueError):
        M.reference_moments("semicircle", 41)


def test_rescaled_tables_match_catalog_recurrences():
    assert M.rescale_moments(M.hyperbolic_secant().moments(12), 2) == M.reference_moments("rescaled_secant", 12)
    assert M.rescale_moments(M.logistic().moments(12), 2) == M.reference_moments("rescaled_logistic", 12)


@pytest.mark.parametrize("measure", [M.semicircle, M.free_poisson, M.cauchy, lambda: M.beta(0.5),
                                     lambda: M.beta(0.75)])
def test_closed_form_cauchy_against_quadrature(measure):
    mu = measure()
    for z in (0.3 + 1j, -1.5 + 0.4j, 2 + 3j):
        X = mu.tail_start if math.isinf(mu.support[0]) else 30.0
        q = integrate(lambda x: mu.density(x) / (z - x), support=mu.support,
                      breakpoints=mu.features + (z.real,), X=X, tol=1e-11)
        assert abs(q - mu.cauchy(z)) < 1e-8


@pytest.mark.parametrize("tag, a", [("semicircle", None), ("free_poisson", None), ("cauchy", None),
                                    ("beta", 0.5), ("beta", -0.7)])
def test_closed_form_inverse_inverts_g(tag, a):
    mu = M.beta(a) if tag == "beta" else M.parse_measure(tag)
    for z in (30j, 5 + 40j, -10 + 25j):
        w = M.closed_form_F_inverse(tag, z, a=a)
        assert abs(1 / mu.cauchy(w) - z) < 1e-10 * abs(z)


def test_semicircle_inverse_is_z_plus_reciprocal():
    assert M.closed_form_F_inverse("semicircle", 5j) == pytest.approx(4.8j)
    with pytest.raises(ZeroDivisionError):
        M.closed_form_F_inverse("semicircle", 0)


def test_beta_half_is_scaled_free_poisson():
    # beta_{1/2} is the free Poisson law scaled by 1/4
    z = 0.2 + 0.3j
    assert abs(M.beta(0.5).cauchy(z) - 4 * M.free_poisson().cauchy(4 * z)) < 1e-13


def test_two_point_poles_and_moments():
    mu = M.two_point()
    assert mu.poles(2) == [-1, 1]
    assert mu.moments(4).values == (0, 1, 0, 1)


def test_user_defined_measure():
    mu = M.user_defined(lambda x: np.exp(-np.asarray(x) ** 2 / 2) / math.sqrt(2 * math.pi), name="gauss")
    assert mu.name == "user:name=gauss"
    assert integrate(mu.density, X=mu.tail_start) == pytest.approx(1.0, abs=1e-12)

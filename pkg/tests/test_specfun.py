import cmath
import math

import mpmath
import numpy as np
import pytest
import scipy.special as sc
from hypothesis import given, settings
from hypothesis import strategies as st

from freeprob.exceptions import PoleError
from freeprob.specfun import EULER_GAMMA, digamma, gamma_abs_sq, log_gamma, trigamma

finite = st.floats(min_value=-40, max_value=40, allow_nan=False)


def _away_from_poles(z):
    return not (abs(z.imag) < 1e-3 and z.real <= 0.5 and abs(z.real - round(z.real)) < 1e-3)


def test_log_gamma_matches_scipy_on_grid():
    x, y = np.meshgrid(np.linspace(-30.3, 40, 81), np.linspace(-45, 45, 61))
    z = (x + 1j * y).ravel()
    ref = sc.loggamma(z)
    got = log_gamma(z)
    assert np.max(np.abs(got - ref) / np.maximum(1.0, np.abs(ref))) < 1e-13


def test_log_gamma_real_values():
    for x in (0.5, 1.0, 2.5, 10.0, 171.3):
        assert log_gamma(x).real == pytest.approx(math.lgamma(x), rel=1e-14, abs=1e-14)
    assert log_gamma(0.5).real == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)


@settings(max_examples=200, deadline=None)
@given(finite, finite)
def test_gamma_recurrence(x, y):
    z = complex(x, y)
    if not _away_from_poles(z) or not _away_from_poles(z + 1):
        return
    lhs = cmath.exp(log_gamma(z + 1) - log_gamma(z))
    assert abs(lhs - z) <= 1e-11 * max(1.0, abs(z))


@settings(max_examples=200, deadline=None)
@given(st.floats(-5, 5), st.floats(0.05, 8))
def test_reflection_formula(x, y):
    z = complex(x, y)
    prod = cmath.exp(log_gamma(z) + log_gamma(1 - z))
    assert abs(prod * cmath.sin(math.pi * z) / math.pi - 1) < 1e-11


def test_conjugate_symmetry():
    z = np.array([0.3 + 2j, -4.7 + 0.1j, 12 - 30j])
    assert np.allclose(log_gamma(np.conj(z)), np.conj(log_gamma(z)), rtol=1e-14, atol=1e-14)


def test_gamma_abs_sq_half_is_secant():
    x = np.linspace(-6, 6, 121)
    assert np.allclose(gamma_abs_sq(0.5, x), math.pi / np.cosh(math.pi * x), rtol=1e-13)


def test_gamma_abs_sq_one():
    x = np.linspace(-5, 5, 41)
    with np.errstate(invalid="ignore", divide="ignore"):
        ref = np.where(x == 0, 1.0, math.pi * x / np.sinh(math.pi * x))
    assert np.allclose(gamma_abs_sq(1.0, x), ref, rtol=1e-13)


def test_poles_raise():
    for z in (0, -1, -7):
        with pytest.raises(PoleError):
            log_gamma(z)
        with pytest.raises(PoleError):
            digamma(z)
        with pytest.raises(PoleError):
            trigamma(z)


def test_digamma_known_values():
    assert digamma(1.0).real == pytest.approx(-EULER_GAMMA, abs=1e-15)
    assert digamma(0.5).real == pytest.approx(-EULER_GAMMA - 2 * math.log(2), abs=1e-14)


def test_digamma_matches_scipy():
    x, y = np.meshgrid(np.linspace(-20.25, 30, 41), np.linspace(-25, 25, 31))
    z = (x + 1j * y).ravel()
    ref = sc.psi(z)
    assert np.max(np.abs(digamma(z) - ref) / np.maximum(1.0, np.abs(ref))) < 1e-13


def test_digamma_full_output_reports_shift():
    val, shift = digamma(0.3 + 0.1j, full_output=True)
    assert shift > 0
    assert abs(val - digamma(0.3 + 0.1j)) == 0


def test_trigamma_known_values():
    assert trigamma(1.0).real == pytest.approx(math.pi**2 / 6, rel=1e-15)
    assert trigamma(0.5).real == pytest.approx(math.pi**2 / 2, rel=1e-15)
    assert trigamma(1.5).real == pytest.approx(math.pi**2 / 2 - 4, rel=1e-14)


def test_trigamma_matches_mpmath():
    for z in (0.5 + 1j, -3.3 + 0.2j, 2 - 7j, 25 + 0.5j, -0.5 - 10j):
        ref = complex(mpmath.psi(1, z))
        assert abs(trigamma(z) - ref) <= 1e-13 * max(1, abs(ref))


@settings(max_examples=100, deadline=None)
@given(st.floats(-10, 10), st.floats(-10, 10))
def test_trigamma_reflection(x, y):
    z = complex(x, y)
    if not (_away_from_poles(z) and _away_from_poles(1 - z)):
        return
    s = cmath.sin(math.pi * z)
    if abs(s) < 1e-3 or abs(s) > 1e6:
        return
    lhs = trigamma(z) + trigamma(1 - z)
    rhs = (math.pi / s) ** 2
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))

"""
Complex log-gamma, digamma and trigamma.

All three use the same scheme: shift the argument upward with the recurrence
until its real part is large, then apply the Stirling (asymptotic) series.
Arguments with negative real part go through the reflection formulas first.

Every function accepts a scalar or an array and returns a value of the same
shape (a Python ``complex`` for scalar input).
"""

import math

import numpy as np

from ._numbers import bernoulli_numbers
from .exceptions import PoleError

__all__ = ["log_gamma", "gamma_abs_sq", "digamma", "trigamma", "EULER_GAMMA"]

EULER_GAMMA = 0.57721566490153286060651209008240243
LOG_PI = math.log(math.pi)
HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

_N_TERMS = 10
_B2K = [float(b) for b in bernoulli_numbers(2 * _N_TERMS)[2::2]]  # B_2, B_4, ..., B_20

# Stirling coefficients B_2k / (2k (2k-1)) for log-gamma
_LG_COEF = [b / ((2 * k) * (2 * k - 1)) for k, b in enumerate(_B2K, start=1)]
# B_2k / (2k) for digamma; B_2k for trigamma
_DG_COEF = [b / (2 * k) for k, b in enumerate(_B2K, start=1)]
_TG_COEF = list(_B2K)

_LG_SHIFT = 15.0
_PSI_SHIFT = 10.0


def _as_complex(z):
    arr = np.asarray(z, dtype=complex)
    return arr, arr.ndim == 0


def _out(arr, scalar):
    return complex(arr) if scalar else arr


def _check_poles(z):
    bad = (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))
    if np.any(bad):
        raise PoleError(f"pole at nonpositive integer {z[bad].ravel()[0].real:g}")


def _shift_counts(z, target):
    return np.maximum(0, np.ceil(target - z.real)).astype(int)


def _poly_inv(w, coef, first_power, step=2):
    """Sum ``coef[k] * w**-(first_power + step*k)`` by Horner in ``w**-step``."""
    inv = 1.0 / w
    inv_step = inv**step
    acc = np.zeros_like(w)
    for c in reversed(coef):
        acc = acc * inv_step + c
    return acc * inv**first_power


def _log_gamma_right(z):
    # Re z >= 0 region: upward shift then Stirling
    k = _shift_counts(z, _LG_SHIFT)
    w = z + k
    acc = np.zeros_like(z)
    for j in range(int(k.max(initial=0))):
        m = k > j
        acc[m] += np.log(z[m] + j)
    stirling = (w - 0.5) * np.log(w) - w + HALF_LOG_2PI + _poly_inv(w, _LG_COEF, 1)
    return stirling - acc


def log_gamma(z):
    """
    Principal branch of ``log Gamma(z)``.

    The branch is continuous on the plane cut along ``(-inf, 0]`` and real on
    the positive axis. For ``Re z < 0`` the reflection formula is used with an
    integer multiple of ``2 pi i`` that keeps the branch continuous.

    Raises
    ------
    PoleError
        If any element is a nonpositive integer.
    """
    z, scalar = _as_complex(z)
    _check_poles(z)
    z1 = np.atleast_1d(z)
    out = np.empty_like(z1)
    left = z1.real < 0
    if np.any(~left):
        out[~left] = _log_gamma_right(z1[~left])
    if np.any(left):
        zl = z1[left]
        # log(pi) - log(sin(pi z)) - log Gamma(1 - z), branch-corrected
        corr = np.copysign(2.0 * np.pi, zl.imag) * np.floor(0.5 * zl.real + 0.25)
        out[left] = LOG_PI + 1j * corr - _log_sinpi(zl) - _log_gamma_right(1.0 - zl)
    return _out(out[0] if scalar else out.reshape(z.shape), scalar)


def _log_sinpi(z):
    """Principal ``log sin(pi z)``, stable for large ``|Im z|``."""
    w = np.pi * z
    big = np.abs(z.imag) > 20.0
    res = np.empty_like(z)
    if np.any(~big):
        res[~big] = np.log(np.sin(w[~big]))
    if np.any(big):
        wb = w[big]
        s = np.where(wb.imag > 0, 1.0, -1.0)
        # sin(w) = (i s / 2) exp(-i s w) (1 - exp(2 i s w)); second factor ~ 1
        val = np.log(0.5j * s) - 1j * s * wb + np.log1p(-np.exp(2j * s * wb))
        res[big] = val.real + 1j * np.angle(np.exp(1j * val.imag))
    return res


def gamma_abs_sq(t, x):
    """``|Gamma(t + i x)|**2`` for real ``t > 0`` and real ``x``.

    Only the real part of log-gamma is exponentiated, so the branch of the
    logarithm never matters.
    """
    if np.any(np.asarray(t) <= 0):
        raise ValueError("gamma_abs_sq requires t > 0")
    lg = log_gamma(np.asarray(t) + 1j * np.asarray(x, dtype=float))
    return np.exp(2.0 * np.real(lg))


def _digamma_right(z):
    k = _shift_counts(z, _PSI_SHIFT)
    w = z + k
    acc = np.zeros_like(z)
    for j in range(int(k.max(initial=0))):
        m = k > j
        acc[m] += 1.0 / (z[m] + j)
    asym = np.log(w) - 0.5 / w - _poly_inv(w, _DG_COEF, 2)
    return asym - acc, k


def digamma(z, full_output=False):
    """
    Digamma ``psi(z) = d/dz log Gamma(z)``.

    With ``full_output=True`` also returns the number of upward recurrence
    steps taken before the asymptotic series was applied.
    """
    z, scalar = _as_complex(z)
    _check_poles(z)
    z1 = np.atleast_1d(z)
    out = np.empty_like(z1)
    shifts = np.zeros(z1.shape, dtype=int)
    left = z1.real < 0
    if np.any(~left):
        out[~left], shifts[~left] = _digamma_right(z1[~left])
    if np.any(left):
        zl = z1[left]
        # psi(z) = psi(1 - z) - pi cot(pi z)
        val, shifts[left] = _digamma_right(1.0 - zl)
        out[left] = val - np.pi / np.tan(np.pi * zl)
    res = _out(out[0] if scalar else out.reshape(z.shape), scalar)
    if full_output:
        return res, (int(shifts[0]) if scalar else shifts.reshape(z.shape))
    return res


def _trigamma_right(z):
    k = _shift_counts(z, _PSI_SHIFT)
    w = z + k
    acc = np.zeros_like(z)
    for j in range(int(k.max(initial=0))):
        m = k > j
        acc[m] += 1.0 / (z[m] + j) ** 2
    asym = 1.0 / w + 0.5 / w**2 + _poly_inv(w, _TG_COEF, 3)
    return asym + acc, k


def trigamma(z, full_output=False):
    """Trigamma ``psi'(z) = sum_{k>=0} (z + k)**-2``."""
    z, scalar = _as_complex(z)
    _check_poles(z)
    z1 = np.atleast_1d(z)
    out = np.empty_like(z1)
    shifts = np.zeros(z1.shape, dtype=int)
    left = z1.real < 0
    if np.any(~left):
        out[~left], shifts[~left] = _trigamma_right(z1[~left])
    if np.any(left):
        zl = z1[left]
        # psi'(z) = pi^2 / sin^2(pi z) - psi'(1 - z)
        val, shifts[left] = _trigamma_right(1.0 - zl)
        out[left] = (np.pi / np.sin(np.pi * zl)) ** 2 - val
    res = _out(out[0] if scalar else out.reshape(z.shape), scalar)
    if full_output:
        return res, (int(shifts[0]) if scalar else shifts.reshape(z.shape))
    return res

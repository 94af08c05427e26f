"""
Free cumulants in exact rational arithmetic.

Two independent routes from moments to free cumulants:

* the triangular moment-cumulant relation
  ``m_n = sum_{k=1}^n r_k [x^{n-k}] M(x)^k`` with ``M(x) = sum_j m_j x^j``;
* series reversion: the reciprocal Cauchy transform ``F(z) = z h(1/z)``
  with ``h = 1/M``, inverted by Lagrange inversion, then ``r_n`` read off
  ``F^{-1}(z) - z = sum_n r_n z^{1-n}``.
"""

from collections import namedtuple
from fractions import Fraction

import numpy as np

from .sequences import FreeCumulantSequence, MomentSequence

__all__ = [
    "moments_to_free_cumulants",
    "free_cumulants_to_moments",
    "cumulants_by_series_reversion",
    "cond_psd_check",
    "free_convolve_moments",
    "PSDResult",
]

MAX_ORDER = 40

PSDResult = namedtuple("PSDResult", ["passed", "min_eigenvalue", "norm"])


def _check_order(n):
    if n > MAX_ORDER:
        raise ValueError(f"order {n} exceeds the supported maximum {MAX_ORDER}")


# ------------------------------------------------------- series helpers

def _mul(a, b, n):
    """Product of two truncated power series, keeping ``n`` coefficients."""
    out = [Fraction(0)] * n
    for i, ai in enumerate(a[:n]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[: n - i]):
            out[i + j] += ai * bj
    return out


def _reciprocal(a, n):
    """``1 / a`` as a power series; requires ``a[0] != 0``."""
    inv0 = 1 / Fraction(a[0])
    out = [inv0] + [Fraction(0)] * (n - 1)
    for k in range(1, n):
        s = sum(a[j] * out[k - j] for j in range(1, min(k, len(a) - 1) + 1))
        out[k] = -s * inv0
    return out


def _power_coeff_table(m, kmax, jmax):
    """``P[k][j] = [x^j] M(x)^k`` for ``k <= kmax``, ``j <= jmax``."""
    M = [Fraction(1)] + list(m[:jmax])
    M += [Fraction(0)] * (jmax + 1 - len(M))
    table = [[Fraction(1)] + [Fraction(0)] * jmax]
    for _ in range(kmax):
        table.append(_mul(table[-1], M, jmax + 1))
    return table


# ------------------------------------------------------------ transforms

def moments_to_free_cumulants(m):
    """Free cumulants from moments via the non-crossing moment-cumulant relation."""
    N = m.order
    _check_order(N)
    vals = list(m.values)
    P = _power_coeff_table(vals, N, N)
    r = []
    for n in range(1, N + 1):
        s = sum(r[k - 1] * P[k][n - k] for k in range(1, n))
        r.append(vals[n - 1] - s)
    return FreeCumulantSequence(r)


def free_cumulants_to_moments(r):
    """Inverse of :func:`moments_to_free_cumulants`."""
    N = r.order
    _check_order(N)
    rv = list(r.values)
    # P[k][j] = [x^j] M^k, filled column by column as moments become known
    P = [[Fraction(1)] + [Fraction(0)] * N for _ in range(N + 1)]
    m = []
    for n in range(1, N + 1):
        mn = sum(rv[k - 1] * P[k][n - k] for k in range(1, n + 1))
        m.append(mn)
        P[1][n] = mn
        for k in range(2, N + 1):
            P[k][n] = sum(P[k - 1][i] * (m[n - i - 1] if n - i > 0 else 1) for i in range(n + 1))
    return MomentSequence(m)


def cumulants_by_series_reversion(m):
    """
    Free cumulants as the coefficients of ``F^{-1}(z) - z``.

    With ``M(x) = 1 + sum_j m_j x^j`` and ``h = 1/M`` the reciprocal Cauchy
    transform is ``F(z) = z h(1/z)``. Putting ``u = 1/w`` and ``v = 1/F^{-1}(w)``
    turns ``F(F^{-1}(w)) = w`` into ``u = v / h(v)``, which Lagrange inversion
    solves coefficientwise: ``[u^n] v = (1/n) [v^{n-1}] h(v)^n``. Then
    ``F^{-1}(w) = w (u / v)`` so ``r_n = [u^n] (u / v)``.
    """
    N = m.order
    _check_order(N)
    n_coef = N + 1
    h = _reciprocal([Fraction(1)] + list(m.values), n_coef)
    c = [Fraction(0)] * (n_coef + 1)
    power = [Fraction(1)] + [Fraction(0)] * (n_coef - 1)
    for n in range(1, n_coef + 1):
        power = _mul(power, h, n_coef)
        c[n] = power[n - 1] / n
    k = _reciprocal(c[1:], n_coef)
    return FreeCumulantSequence(k[1:n_coef])


def cond_psd_check(r, N, rel_tol=1e-9):
    """
    Conditional nonnegative-definiteness test of free cumulants.

    Builds ``A[i, j] = r_{i+j}`` for ``i, j = 1..N`` and passes when the
    smallest eigenvalue is at least ``-rel_tol`` times the largest entry.
    """
    if r.order < 2 * N:
        raise ValueError(f"need cumulants up to order {2 * N}, have {r.order}")
    A = np.array([[float(r[i + j]) for j in range(1, N + 1)] for i in range(1, N + 1)])
    norm = float(np.max(np.abs(A))) if A.size else 0.0
    lam = float(np.linalg.eigvalsh(A).min())
    return PSDResult(lam >= -rel_tol * norm, lam, norm)


def free_convolve_moments(m1, m2):
    """Moments of ``mu1 [+] mu2``: free cumulants add."""
    if m1.order != m2.order:
        raise ValueError("moment sequences must have equal order")
    r1 = moments_to_free_cumulants(m1)
    r2 = moments_to_free_cumulants(m2)
    return free_cumulants_to_moments(FreeCumulantSequence([a + b for a, b in zip(r1.values, r2.values)]))

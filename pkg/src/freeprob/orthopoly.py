"""
Symmetric three-term recurrences and the moments they encode.

A monic family with recurrence ``x P_n = P_{n+1} + beta(n) P_{n-1}`` is
orthogonal for a symmetric measure whose moments are the corner entries of
powers of the Jacobi matrix. Moments are computed exactly with Fractions.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .quadrature import integrate
from .sequences import MomentSequence, to_fraction

__all__ = [
    "PolynomialRecurrence",
    "meixner_pollaczek",
    "continuous_hahn",
    "eval_poly",
    "moments_from_jacobi",
    "squared_norm",
    "verify_orthogonality",
]

MAX_ORDER = 40


@dataclass(frozen=True)
class PolynomialRecurrence:
    """Monic symmetric recurrence ``x P_n = P_{n+1} + beta(n) P_{n-1}``."""

    family: str
    t: Fraction = None

    def beta(self, n):
        if n < 1:
            raise ValueError("beta is defined for n >= 1")
        if self.family == "meixner_pollaczek":
            return Fraction(n) * (n + 2 * self.t - 1) / 4
        if self.family == "continuous_hahn":
            return Fraction(n**4, 4 * (4 * n * n - 1))
        raise ValueError(f"unknown family {self.family!r}")

    def alpha(self, n):
        return Fraction(0)

    @property
    def name(self):
        if self.family == "meixner_pollaczek":
            return f"meixner_pollaczek(t={self.t})"
        return self.family


def meixner_pollaczek(t):
    """Meixner-Pollaczek recurrence, ``beta(n) = n (n + 2t - 1) / 4``."""
    t = to_fraction(t)
    if t <= 0:
        raise ValueError("Meixner-Pollaczek recurrence needs t > 0")
    return PolynomialRecurrence("meixner_pollaczek", t)


def continuous_hahn():
    """Continuous Hahn recurrence of the logistic law, ``beta(n) = n^4 / (4 (4n^2 - 1))``."""
    return PolynomialRecurrence("continuous_hahn")


def eval_poly(rec, n, x):
    """
    Value of the monic ``P_n`` at ``x`` by forward recurrence.

    ``x`` may be a float, a numpy array or a Fraction; with a Fraction the
    result is exact.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    exact = isinstance(x, (Fraction, int))
    p_prev, p = (x * 0 + 1), x
    if n == 0:
        return p_prev
    for k in range(1, n):
        b = rec.beta(k) if exact else float(rec.beta(k))
        p_prev, p = p, x * p - b * p_prev
    return p


def moments_from_jacobi(rec, N):
    """
    Exact moments ``m_1..m_N`` of the orthogonality measure of ``rec``.

    Uses the non-symmetric tridiagonal form (ones below the diagonal, ``beta``
    above), which has the same moments as the symmetric Jacobi matrix but
    stays rational. ``m_n`` is the (0, 0) entry of ``J**n``; propagating the
    first unit vector on ``ceil(N/2) + 1`` states is exact up to order N.
    """
    if N > MAX_ORDER:
        raise ValueError(f"order {N} exceeds the supported maximum {MAX_ORDER}")
    size = (N + 1) // 2 + 1
    beta = [rec.beta(k) for k in range(1, size)]
    alpha = [rec.alpha(k) for k in range(size)]
    v = [Fraction(0)] * size
    v[0] = Fraction(1)
    moments = []
    for _ in range(N):
        # v <- v J  with J[k, k+1] = beta_{k+1}, J[k+1, k] = 1
        new = [Fraction(0)] * size
        for k in range(size):
            if v[k] == 0:
                continue
            new[k] += alpha[k] * v[k]
            if k + 1 < size:
                new[k + 1] += v[k] * beta[k]
            if k > 0:
                new[k - 1] += v[k]
        v = new
        moments.append(v[0])
    return MomentSequence(moments)


def squared_norm(rec, n):
    """``int P_n^2 dmu = beta(1) ... beta(n)`` (exact)."""
    out = Fraction(1)
    for k in range(1, n + 1):
        out *= rec.beta(k)
    return out


def verify_orthogonality(rec, measure, n, m, tol=1e-13):
    """Quadrature value of ``int P_n P_m dmu``; near zero when ``n != m``."""
    if max(n, m) > 8:
        raise ValueError("orthogonality check is limited to degrees <= 8")

    def f(x):
        return eval_poly(rec, n, x) * eval_poly(rec, m, x) * measure.density(x)

    return float(integrate(f, support=measure.support, breakpoints=measure.features,
                           tol=tol, X=measure.tail_start))

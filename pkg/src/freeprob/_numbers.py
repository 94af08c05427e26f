"""Exact Bernoulli, Euler (secant) and Catalan numbers."""

from fractions import Fraction
from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def bernoulli_numbers(n):
    """Return ``(B_0, ..., B_n)`` as Fractions, with ``B_1 = -1/2``.

    Uses the Akiyama-Tanigawa algorithm, which yields ``B_1 = +1/2``; the sign
    is flipped afterwards to the more common convention.
    """
    out = []
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    if n >= 1:
        out[1] = -out[1]
    return tuple(out)


@lru_cache(maxsize=None)
def secant_numbers(n):
    """Return the first ``n + 1`` secant numbers ``(1, 1, 5, 61, 1385, ...)``.

    ``secant_numbers(n)[k]`` is ``|E_{2k}|``. Computed with the Seidel
    boustrophedon (zigzag) triangle, which produces all Euler zigzag numbers;
    the secant numbers are the ones at even index.
    """
    zigzag = [1]
    row = [1]
    for k in range(1, 2 * n + 1):
        new = [0]
        for v in reversed(row):
            new.append(new[-1] + v)
        row = new
        zigzag.append(row[-1])
    return tuple(zigzag[2 * k] for k in range(n + 1))


def catalan(n):
    return comb(2 * n, n) // (n + 1)

"""Exact rational moment and free-cumulant sequences, plus the text file format."""

import numbers
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

__all__ = [
    "MomentSequence",
    "FreeCumulantSequence",
    "to_fraction",
    "read_sequence_file",
    "write_sequence_file",
    "format_rational",
    "hankel_is_psd",
]


def to_fraction(value):
    """Convert ints, Fractions, ``"p/q"`` strings and floats to a Fraction.

    Floats go through their shortest decimal repr, so ``0.3`` becomes ``3/10``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, numbers.Real):
        return Fraction(repr(float(value)))
    return Fraction(str(value).strip())


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class _ExactSequence:
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(to_fraction(v) for v in self.values))

    @property
    def order(self):
        return len(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n):
        """One-based access: ``seq[1]`` is the first-order entry."""
        if not 1 <= n <= len(self.values):
            raise IndexError(f"order {n} outside 1..{len(self.values)}")
        return self.values[n - 1]

    def even(self):
        """Entries of even order, ``(s_2, s_4, ...)``."""
        return self.values[1::2]

    def is_odd_vanishing(self):
        return all(v == 0 for v in self.values[0::2])

    def truncate(self, n):
        return type(self)(self.values[:n])


class MomentSequence(_ExactSequence):
    """Moments ``m_1, ..., m_N`` of a probability measure (``m_0 = 1`` implied)."""

    def with_zeroth(self):
        return (Fraction(1),) + self.values


class FreeCumulantSequence(_ExactSequence):
    """Free cumulants ``r_1, ..., r_N``."""


def hankel_is_psd(m):
    """Exact test that the Hankel matrix ``(m_{i+j})_{i,j=0..floor(N/2)}`` is PSD.

    Symmetric Gaussian elimination over the rationals; a zero pivot is allowed
    only if the rest of its row is zero (positive semidefinite, singular case).
    """
    full = m.with_zeroth()
    size = (len(full) - 1) // 2 + 1
    a = [[full[i + j] for j in range(size)] for i in range(size)]
    for k in range(size):
        piv = a[k][k]
        if piv < 0:
            return False
        if piv == 0:
            if any(a[k][j] != 0 for j in range(k + 1, size)):
                return False
            continue
        for i in range(k + 1, size):
            f = a[i][k] / piv
            for j in range(k, size):
                a[i][j] -= f * a[k][j]
    return True


def read_sequence_file(path, kind=MomentSequence):
    """Read one exact rational per line (``p/q`` or integer); ``#`` starts a comment."""
    values = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values.append(Fraction(line))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not a rational number: {line!r}") from None
    return kind(values)


def write_sequence_file(seq, path=None):
    text = "".join(format_rational(v) + "\n" for v in seq.values)
    if path is not None:
        Path(path).write_text(text)
    return text

from fractions import Fraction

import numpy as np
import pytest

from freeprob._numbers import bernoulli_numbers, catalan, secant_numbers
from freeprob.sequences import (
    FreeCumulantSequence,
    MomentSequence,
    format_rational,
    hankel_is_psd,
    read_sequence_file,
    to_fraction,
    write_sequence_file,
)


def test_bernoulli_numbers():
    B = bernoulli_numbers(12)
    assert list(B[:5]) == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]
    assert B[12] == Fraction(-691, 2730)


def test_secant_numbers():
    assert list(secant_numbers(6)) == [1, 1, 5, 61, 1385, 50521, 2702765]


def test_catalan():
    assert [catalan(n) for n in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]


@pytest.mark.parametrize("value, expected", [
    (3, Fraction(3)),
    ("7/15", Fraction(7, 15)),
    (0.3, Fraction(3, 10)),
    (np.float64(0.25), Fraction(1, 4)),
    (np.int64(-4), Fraction(-4)),
    (Fraction(2, 3), Fraction(2, 3)),
])
def test_to_fraction(value, expected):
    assert to_fraction(value) == expected


def test_one_based_indexing_and_views():
    m = MomentSequence([0, 1, 0, 2])
    assert m.order == 4 and m[2] == 1 and m[4] == 2
    assert m.even() == (1, 2)
    assert m.is_odd_vanishing()
    assert m.with_zeroth()[0] == 1
    assert m.truncate(2) == MomentSequence([0, 1])
    with pytest.raises(IndexError):
        m[0]
    with pytest.raises(IndexError):
        m[5]


def test_sequence_types_are_immutable():
    r = FreeCumulantSequence([1, 2])
    with pytest.raises(AttributeError):
        r.values = (3,)


def test_file_round_trip(tmp_path):
    seq = MomentSequence([0, Fraction(1, 3), 0, Fraction(7, 15), -2])
    path = tmp_path / "m.txt"
    write_sequence_file(seq, path)
    assert path.read_text() == "0\n1/3\n0\n7/15\n-2\n"
    assert read_sequence_file(path) == seq


def test_file_comments_and_errors(tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("# header\n1  # first\n\n5/2\n")
    assert read_sequence_file(path, FreeCumulantSequence).values == (1, Fraction(5, 2))
    path.write_text("1\nfoo\n")
    with pytest.raises(ValueError, match=":2:"):
        read_sequence_file(path)


def test_format_rational():
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-7, 15)) == "-7/15"


def test_hankel_psd():
    assert hankel_is_psd(MomentSequence([0, 1, 0, 2, 0, 5]))
    # m_2 = 1, m_4 = 1/2 violates m_4 >= m_2^2
    assert not hankel_is_psd(MomentSequence([0, 1, 0, Fraction(1, 2)]))
    # point mass at 1: singular but PSD
    assert hankel_is_psd(MomentSequence([1, 1, 1, 1]))

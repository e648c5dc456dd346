from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ladderlattice.field import (
    as_rational, exact_sqrt, format_scalar, is_exact, max_abs, relative_deviation, to_mpf,
)


def test_as_rational_reads_decimals_exactly():
    assert as_rational("0.3") == Fraction(3, 10)
    assert as_rational(0.5) == Fraction(1, 2)
    assert as_rational("7/4") == Fraction(7, 4)
    assert as_rational(3) == 3


def test_to_mpf_handles_fractions():
    assert to_mpf(Fraction(1, 4)) == mpmath.mpf("0.25")


def test_exact_sqrt_of_square_stays_rational():
    assert exact_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert not is_exact(exact_sqrt(Fraction(2)))


def test_relative_deviation_exact_and_mixed():
    assert relative_deviation([Fraction(1, 2)], [Fraction(1, 4)]) == 1
    mixed = relative_deviation([Fraction(1, 3)], [mpmath.mpf(1) / 3])
    assert not is_exact(mixed) and mixed < mpmath.mpf("1e-33")
    assert relative_deviation([], []) == 0


def test_max_abs_mixed():
    assert max_abs([Fraction(-3), mpmath.mpf(2)]) == 3


@given(st.fractions(max_denominator=10**6))
def test_format_rational_round_trip(value):
    assert Fraction(format_scalar(value)) == value


@given(st.floats(min_value=-1e30, max_value=1e30, allow_nan=False).filter(lambda v: v != 0),
       st.integers(min_value=1, max_value=999))
def test_format_float_round_trip(value, div):
    x = mpmath.mpf(value) / div
    assert mpmath.mpf(format_scalar(x)) == x


def test_format_is_short_for_simple_values():
    assert format_scalar(mpmath.mpf("0.25")) == "0.25"
    assert format_scalar(Fraction(-2)) == "-2"


def test_as_rational_rejects_garbage():
    with pytest.raises(ValueError):
        as_rational("abc")

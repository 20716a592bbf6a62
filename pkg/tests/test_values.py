from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semiband.errors import IndeterminateComparisonError
from semiband.values import (
    ExactValue,
    IntervalValue,
    SqrtValue,
    TARGET_WIDTH,
    compare,
    int_nth_root,
    multiply,
    pow_enclosure,
    root_enclosure,
    sqrt_value,
    value_max,
)


@given(st.integers(min_value=0, max_value=10**12), st.integers(min_value=1, max_value=7))
def test_int_nth_root_floor(n, k):
    r = int_nth_root(n, k)
    assert r**k <= n < (r + 1) ** k


def test_root_enclosure_exact_for_perfect_powers():
    lo, hi = root_enclosure(Fraction(25, 4), 2)
    assert lo == hi == Fraction(5, 2)
    lo, hi = root_enclosure(Fraction(27), 3)
    assert lo == hi == 3


@given(
    st.fractions(min_value=Fraction(1, 30), max_value=50, max_denominator=30),
    st.integers(min_value=2, max_value=5),
)
def test_root_enclosure_brackets_and_width(x, k):
    lo, hi = root_enclosure(x, k)
    assert hi - lo <= TARGET_WIDTH
    assert lo**k <= x <= hi**k or (lo <= 0 and x == 0)


@given(
    st.fractions(min_value=Fraction(1, 20), max_value=20, max_denominator=20),
    st.fractions(min_value=Fraction(-3), max_value=3, max_denominator=6),
)
def test_pow_enclosure_brackets(x, e):
    lo, hi = pow_enclosure(x, e)
    assert 0 <= lo <= hi
    # lo <= x**(a/b) <= hi is equivalent to lo**b <= x**a <= hi**b
    a, b = e.numerator, e.denominator
    assert lo**b <= x**a <= hi**b


def test_sqrt_value_simplifies_perfect_squares():
    assert sqrt_value(Fraction(25)) == ExactValue(Fraction(5))
    assert isinstance(sqrt_value(Fraction(2)), SqrtValue)


def test_comparisons_across_kinds():
    assert compare(ExactValue(Fraction(3)), ExactValue(Fraction(4))) == -1
    assert compare(SqrtValue(Fraction(2)), ExactValue(Fraction(1))) == 1
    assert compare(SqrtValue(Fraction(2)), SqrtValue(Fraction(3))) == -1
    assert compare(ExactValue(Fraction(-1)), SqrtValue(Fraction(2))) == -1
    assert compare(SqrtValue(Fraction(9, 4)), Fraction(3, 2)) == 0
    iv = IntervalValue(Fraction(1), Fraction(2))
    assert compare(iv, Fraction(3)) == -1
    assert compare(iv, Fraction(1, 2)) == 1


def test_indeterminate_comparison_raises():
    iv = IntervalValue(Fraction(1), Fraction(2))
    with pytest.raises(IndeterminateComparisonError):
        compare(iv, Fraction(3, 2))


def test_multiply_keeps_exactness():
    got = multiply(SqrtValue(Fraction(1, 2)), SqrtValue(Fraction(2)))
    assert got == ExactValue(Fraction(1))
    got = multiply(ExactValue(Fraction(2)), SqrtValue(Fraction(3)))
    assert got == SqrtValue(Fraction(12))


def test_value_max_mixed():
    best = value_max([ExactValue(Fraction(1)), SqrtValue(Fraction(2)), ExactValue(Fraction(1, 2))])
    assert best == SqrtValue(Fraction(2))

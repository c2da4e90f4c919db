from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qbialg.scalars import (
    I, ONE, R2, ZERO, AlgebraicScalar, DivisionByZero, UnknownPattern, ZSeries,
    format_scalar, parse_scalar, series_eval_pattern, series_mul,
)

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 100)
scalars = st.builds(AlgebraicScalar, fractions, fractions, fractions, fractions)


def test_units():
    assert I * I == -ONE
    assert R2 * R2 == 2 * ONE
    assert (ONE / R2) * R2 == ONE
    assert (ONE + I).inverse() * (ONE + I) == ONE


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        ONE / ZERO


@pytest.mark.parametrize("text", ["1/2 + 1/2*r2", "-3*i", "2/7*i*r2", "0", "-1/3 + 5*r2 - i"])
def test_text_round_trip(text):
    x = parse_scalar(text)
    assert parse_scalar(format_scalar(x)) == x


def test_format_examples():
    assert format_scalar(AlgebraicScalar(Fraction(1, 2), Fraction(1, 2))) == "1/2 + 1/2*r2"
    assert format_scalar(ZERO) == "0"


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_scalar("1/2*x")


@given(scalars)
def test_format_parse_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if not b.is_zero():
        assert (a / b) * b == a


def test_sqrt_of_squares():
    assert parse_scalar("9/4").sqrt() == parse_scalar("3/2")
    assert parse_scalar("2").sqrt() == R2
    assert parse_scalar("1/8").sqrt() * parse_scalar("1/8").sqrt() == parse_scalar("1/8")


def test_series_patterns():
    s = series_eval_pattern("sinh_over_arg", ONE, 6)
    assert [s.coefficient(k) for k in range(7)] == [
        ONE, ZERO, ONE / 6, ZERO, ONE / 120, ZERO, ONE / 5040]
    e = series_eval_pattern("exp", ONE / 2, 3)
    assert e.coefficient(3) == ONE / 48
    assert series_eval_pattern("cosh", ONE, 2).coefficient(2) == ONE / 2
    with pytest.raises(UnknownPattern):
        series_eval_pattern("tanh", ONE, 2)


def test_series_mul_exp():
    a = series_eval_pattern("exp", ONE / 2, 5)
    b = series_eval_pattern("exp", -ONE / 2, 5)
    prod = series_mul(a, b)
    assert [prod.coefficient(k) for k in range(6)] == [ONE] + [ZERO] * 5

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from curvesing.exactnum import (
    Ordering, parse_rational, rat_arith, rat_cmp, rat_make, render_rational,
)


@pytest.mark.parametrize("n, d, expected", [
    (2, 4, "1/2"),
    (3, -6, "-1/2"),
    (0, 7, "0"),
])
def test_rat_make_is_canonical(n, d, expected):
    q = rat_make(n, d)
    assert render_rational(q) == expected
    assert q.denominator > 0


def test_zero_is_zero_over_one():
    q = rat_make(0, 7)
    assert (q.numerator, q.denominator) == (0, 1)


def test_zero_denominator():
    with pytest.raises(ZeroDivisionError, match="division by zero"):
        rat_make(1, 0)


@pytest.mark.parametrize("a, b, op, expected", [
    (mpq(1, 2), mpq(1, 3), "add", mpq(5, 6)),
    (mpq(1, 2), 0, "mul", mpq(0)),
    (mpq(5, 6), mpq(5, 6), "div", mpq(1)),
    (mpq(1, 2), mpq(1, 3), "sub", mpq(1, 6)),
])
def test_arith(a, b, op, expected):
    assert rat_arith(a, b, op) == expected


def test_divide_by_zero():
    with pytest.raises(ZeroDivisionError):
        rat_arith(1, 0, "div")
    with pytest.raises(ValueError):
        rat_arith(1, 2, "pow")


@pytest.mark.parametrize("a, b, expected", [
    (mpq(4, 3), 2, Ordering.LESS),
    (mpq(1, 2), mpq(2, 4), Ordering.EQUAL),
    (mpq(-1, 3), mpq(-1, 2), Ordering.GREATER),
])
def test_compare(a, b, expected):
    assert rat_cmp(a, b) is expected


def test_parse_roundtrip():
    assert parse_rational(" -10/4 ") == mpq(-5, 2)
    assert parse_rational("7") == 7
    with pytest.raises(ValueError):
        parse_rational("1/2/3")


@given(st.integers(), st.integers().filter(bool))
def test_render_parse_roundtrip(n, d):
    q = rat_make(n, d)
    assert parse_rational(render_rational(q)) == q

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from curvesing.polyring import (
    Polynomial, PolynomialSyntaxError, VariableSet, jacobian_minors,
    leading_term, order_of, parse_polynomial,
)


def test_parse_family_member(P):
    f = P("x^5 + x^2*y^3 + y^4")
    assert f.terms == {(5, 0): 1, (2, 3): 1, (0, 4): 1}


def test_parse_expands_products(P):
    assert P("(x-y)*(x+y)") == P("x^2 - y^2")


def test_syntax_error_position():
    with pytest.raises(PolynomialSyntaxError) as exc:
        parse_polynomial("x + ", "x,y")
    assert exc.value.position == 4
    assert "position 4" in str(exc.value)


def test_unknown_variable():
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial("x + z", "x,y")


def test_rational_coefficients(P):
    f = P("1/2*x - 3/4*y^2")
    assert f.coefficient((1, 0)) == mpq(1, 2)
    assert f.coefficient((0, 2)) == mpq(-3, 4)


def test_ring_axioms(P):
    s = P("x+y")
    assert s * s == P("x^2 + 2*x*y + y^2")
    f = P("x^3 - 2*x*y + 7")
    assert (f + (-f)).is_zero()
    assert f * 1 == f


@pytest.mark.parametrize("var, expected", [("x", "3*x^2"), ("y", "-2*y")])
def test_diff(P, var, expected):
    assert P("x^3 - y^2").diff(var) == P(expected)


def test_diff_of_other_variable(P):
    assert P("y^4").diff("x").is_zero()


@pytest.mark.parametrize("text, k", [
    ("x^5 + x^2*y^3 + y^4", 4),
    ("x^3 - y^2", 2),
    ("1 + x", 0),
])
def test_order(P, text, k):
    assert order_of(P(text)) == k


def test_order_of_zero(P):
    with pytest.raises(ValueError, match="order undefined"):
        order_of(P("0"))


@pytest.mark.parametrize("text, mon, c", [
    ("x^2 + y^3", (2, 0), 1),
    ("y^2 - x^3", (0, 2), 1),
    # degree tie: the smaller y-exponent wins, so x^2 beats x*y
    ("3*x*y + 5*x^2", (2, 0), 5),
])
def test_leading_term(P, text, mon, c):
    assert leading_term(P(text)) == (mon, c)


def test_minors_of_single_generator(P):
    f = P("x^5 + y^4 + x^2*y^3")
    assert jacobian_minors([f]) == [f.diff("x"), f.diff("y")]


def test_minors_of_space_curve():
    v = "x,y,z"
    g1, g2 = parse_polynomial("z^2 - x^3", v), parse_polynomial("y^2 - x*z", v)
    # rows [-3x^2, 0, 2z] and [-z, 2y, -x]
    expected = [
        parse_polynomial("-6*x^2*y", v),
        parse_polynomial("3*x^3 + 2*z^2", v),
        parse_polynomial("-4*y*z", v),
    ]
    assert jacobian_minors([g1, g2]) == expected


def test_minors_of_repeated_row(P):
    v = "x,y,z"
    g = parse_polynomial("x*y + z^3", v)
    assert all(m.is_zero() for m in jacobian_minors([g, g]))


def test_minors_dimension_mismatch(P):
    with pytest.raises(ValueError):
        jacobian_minors([P("x"), P("y")])


def test_variable_set():
    vs = VariableSet.of("a, b")
    assert vs.names == ("a", "b")
    with pytest.raises(ValueError):
        VariableSet.of("x,x")


small = st.integers(-3, 3)
polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), small, max_size=5)


@given(polys, polys, polys)
def test_distributive(a, b, c):
    A, B, C = (Polynomial("x,y", t) for t in (a, b, c))
    assert A * (B + C) == A * B + A * C


@given(polys, polys)
def test_leibniz(a, b):
    A, B = Polynomial("x,y", a), Polynomial("x,y", b)
    assert (A * B).diff("x") == A.diff("x") * B + A * B.diff("x")


@given(polys)
def test_str_roundtrip(a):
    A = Polynomial("x,y", a)
    assert parse_polynomial(str(A), "x,y") == A

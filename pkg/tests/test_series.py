import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from curvesing.series import InsufficientPrecision, TruncatedSeries as S


def test_exact_arithmetic():
    a = S([0, 1, 1])
    assert a * a == S([0, 0, 1, 2, 1])
    assert a.order() == 1
    assert S([]).is_zero() and S([]).order() is None


def test_precision_propagates():
    a = S([1, 1], prec=5)
    b = S([0, 0, 1])
    assert (a * b).prec == 7
    assert (a + b).prec == 5


def test_reading_beyond_precision():
    a = S([1, 2, 3], prec=2)  # known modulo t^3
    assert a[2] == 3
    with pytest.raises(InsufficientPrecision):
        a[3]


def test_derivative_and_shift():
    a = S([1, 2, 3])
    assert a.derivative() == S([2, 6])
    assert a.shift(2) == S([0, 0, 1, 2, 3])


def test_power():
    assert S([1, 1]) ** 3 == S([1, 3, 3, 1])
    assert S.monomial(2, mpq(1, 2)) ** 2 == S.monomial(4, mpq(1, 4))


coeffs = st.lists(st.integers(-5, 5), max_size=6)


@given(coeffs, coeffs, st.integers(0, 8))
def test_mul_trunc_matches_truncated_product(a, b, n):
    A, B = S(a), S(b)
    assert A.mul_trunc(B, n) == (A * B).truncate(n)

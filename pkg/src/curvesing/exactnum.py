"""Exact integer and rational scalars.

Integers are Python ints (or ``gmpy2.mpz`` when they come out of a
rational).  Rationals are ``gmpy2.mpq``: always reduced, denominator
positive, zero stored as 0/1.  Every other module builds its coefficients
through :func:`rat_make` or :data:`Rational` so there is exactly one
scalar type in the hot loops.
"""

from __future__ import annotations

import re
from enum import Enum

from gmpy2 import mpq, mpz

__all__ = [
    "Rational",
    "Ordering",
    "is_rational",
    "rat_make",
    "rat_arith",
    "rat_cmp",
    "render_rational",
    "parse_rational",
]

Rational = mpq
SCALAR_TYPES = (int, type(mpz(0)), type(mpq(0)))

_RAT_RE = re.compile(r"^\s*([+-]?)(\d+)(?:\s*/\s*(\d+))?\s*$")


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def is_rational(value) -> bool:
    return isinstance(value, SCALAR_TYPES)


def rat_make(n, d=1) -> mpq:
    """Canonical reduced fraction ``n/d``.

    >>> rat_make(3, -6)
    mpq(-1,2)
    """
    if d == 0:
        raise ZeroDivisionError("division by zero")
    return mpq(n, d)


def rat_arith(a, b, op: str) -> mpq:
    a = mpq(a)
    b = mpq(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def rat_cmp(a, b) -> Ordering:
    a = mpq(a)
    b = mpq(b)
    if a < b:
        return Ordering.LESS
    if a > b:
        return Ordering.GREATER
    return Ordering.EQUAL


def render_rational(q) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = mpq(q)
    if q.denominator == 1:
        return str(int(q.numerator))
    return f"{int(q.numerator)}/{int(q.denominator)}"


def parse_rational(text: str) -> mpq:
    m = _RAT_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    sign, num, den = m.groups()
    value = rat_make(int(num), int(den) if den is not None else 1)
    return -value if sign == "-" else value

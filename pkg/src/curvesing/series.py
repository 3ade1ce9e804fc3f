"""Truncated power series in one variable ``t``.

Coefficients may be ``mpq`` or :class:`~curvesing.numberfield.AlgebraicNumber`;
the code only uses ring operators and truthiness.  A series with
``prec = N`` is known modulo ``t^(N+1)``; ``prec = None`` marks an exact
(polynomial) series.
"""

from __future__ import annotations

from typing import Sequence

__all__ = ["TruncatedSeries", "InsufficientPrecision"]


class InsufficientPrecision(ArithmeticError):
    pass


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class TruncatedSeries:
    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs: Sequence = (), prec: int | None = None):
        c = list(coeffs)
        if prec is not None:
            c = c[: prec + 1]
        while c and not c[-1]:
            c.pop()
        self.coeffs = c
        self.prec = prec

    @classmethod
    def monomial(cls, k: int, c=1, prec: int | None = None) -> "TruncatedSeries":
        if prec is not None and k > prec:
            return cls([], prec)
        return cls([0] * k + [c], prec)

    def __getitem__(self, i: int):
        if self.prec is not None and i > self.prec:
            raise InsufficientPrecision(f"coefficient {i} beyond truncation {self.prec}")
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.coeffs

    def order(self) -> int | None:
        """Least index with nonzero coefficient; None if no known coefficient is nonzero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def truncate(self, n: int) -> "TruncatedSeries":
        if self.prec is not None and n > self.prec:
            raise InsufficientPrecision(f"requested {n}, known to {self.prec}")
        return TruncatedSeries(self.coeffs[: n + 1], n)

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries([other])
        p = _min_prec(self.prec, other.prec)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
        return TruncatedSeries(out, p)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries([c * v for v in self.coeffs], self.prec)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        # precision of a product: min over operands of (prec + order of the other)
        oa, ob = self.order(), other.order()
        if oa is None or ob is None:
            p = _min_prec(self.prec if self.prec is None else self.prec + (ob or 0),
                          other.prec if other.prec is None else other.prec + (oa or 0))
            if oa is None and self.prec is not None:
                p = _min_prec(p, self.prec + (ob if ob is not None else 0))
            return TruncatedSeries([], p if p is not None else None)
        p = _min_prec(None if self.prec is None else self.prec + ob,
                      None if other.prec is None else other.prec + oa)
        return TruncatedSeries(_mul_lists(self.coeffs, other.coeffs, p), p)

    __rmul__ = __mul__

    def mul_trunc(self, other: "TruncatedSeries", n: int) -> "TruncatedSeries":
        """Product known modulo t^(n+1); caller guarantees the operands suffice."""
        return TruncatedSeries(_mul_lists(self.coeffs, other.coeffs, n), n)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by t^k (k >= 0)."""
        p = None if self.prec is None else self.prec + k
        return TruncatedSeries([0] * k + self.coeffs, p) if self.coeffs else TruncatedSeries([], p)

    def derivative(self) -> "TruncatedSeries":
        p = None if self.prec is None else self.prec - 1
        return TruncatedSeries([self.coeffs[i] * i for i in range(1, len(self.coeffs))], p)

    def __pow__(self, k: int):
        result = TruncatedSeries([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.coeffs == other.coeffs and self.prec == other.prec

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*t^{i}" if i else f"{c}")
        body = " + ".join(terms) if terms else "0"
        if self.prec is not None:
            body += f" + O(t^{self.prec + 1})"
        return body


def _mul_lists(a: list, b: list, n: int | None) -> list:
    if not a or not b:
        return []
    la, lb = len(a), len(b)
    size = la + lb - 1 if n is None else min(la + lb - 1, n + 1)
    out = [0] * size
    for i in range(min(la, size)):
        x = a[i]
        if not x:
            continue
        lim = min(lb, size - i)
        for j in range(lim):
            y = b[j]
            if y:
                out[i + j] = out[i + j] + x * y
    return out

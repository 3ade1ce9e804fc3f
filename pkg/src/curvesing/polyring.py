"""Sparse multivariate polynomials over Q with a local monomial order.

A polynomial is a mapping ``exponent tuple -> nonzero mpq`` over a fixed
:class:`VariableSet`.  The only monomial order used anywhere in the package
is the negative-degree reverse-lexicographic order :data:`NEG_DEG_REVLEX`,
for which 1 is the largest monomial; this is what makes standard bases
compute invariants of the local ring at the origin.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .exactnum import render_rational

__all__ = [
    "VariableSet",
    "LocalOrder",
    "NEG_DEG_REVLEX",
    "Polynomial",
    "PolynomialSyntaxError",
    "parse_polynomial",
    "poly_arith",
    "partial_derivative",
    "order_of",
    "leading_term",
    "jacobian_minors",
    "monomial_divides",
]

_NAME_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")

Monomial = tuple


@dataclass(frozen=True)
class VariableSet:
    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("a variable set needs at least one variable")
        for name in names:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")

    @classmethod
    def of(cls, spec) -> "VariableSet":
        """Build from ``"x,y"``, an iterable of names, or an existing set."""
        if isinstance(spec, VariableSet):
            return spec
        if isinstance(spec, str):
            spec = [s.strip() for s in spec.split(",") if s.strip()]
        return cls(tuple(spec))

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __str__(self):
        return ",".join(self.names)


class LocalOrder:
    """Negative-degree reverse-lexicographic order.

    ``a > b`` iff ``deg a < deg b``, or the degrees agree and, scanning the
    exponents from the last variable backwards, ``a`` has the smaller
    exponent at the first position where they differ.
    """

    tag = "negdegrevlex"

    @staticmethod
    def key(mon: Monomial) -> tuple:
        # larger key == larger monomial
        return (-sum(mon),) + tuple(-e for e in reversed(mon))

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __repr__(self):
        return f"LocalOrder({self.tag!r})"


NEG_DEG_REVLEX = LocalOrder()


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables, terms: Mapping | None = None):
        self.vars = VariableSet.of(variables)
        n = len(self.vars)
        clean = {}
        if terms:
            for mon, c in terms.items():
                mon = tuple(int(e) for e in mon)
                if len(mon) != n or any(e < 0 for e in mon):
                    raise ValueError(f"bad exponent vector {mon} for {n} variables")
                c = mpq(c)
                if c:
                    clean[mon] = clean.get(mon, 0) + c
                    if not clean[mon]:
                        del clean[mon]
        self.terms = clean
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def _raw(cls, variables: VariableSet, terms: dict) -> "Polynomial":
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p.vars = variables
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, variables, c) -> "Polynomial":
        variables = VariableSet.of(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, variables, name: str) -> "Polynomial":
        variables = VariableSet.of(variables)
        mon = [0] * len(variables)
        mon[variables.index(name)] = 1
        return cls(variables, {tuple(mon): 1})

    @classmethod
    def monomial(cls, variables, mon: Monomial, c=1) -> "Polynomial":
        return cls(variables, {tuple(mon): c})

    @classmethod
    def parse(cls, text: str, variables="x,y") -> "Polynomial":
        return parse_polynomial(text, variables)

    # -- basic queries ----------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, mon: Monomial):
        return self.terms.get(tuple(mon), mpq(0))

    def constant_term(self):
        return self.coefficient((0,) * self.nvars)

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of the zero polynomial")
        return max(sum(m) for m in self.terms)

    def order(self) -> int:
        return order_of(self)

    def leading_term(self, order: LocalOrder = NEG_DEG_REVLEX):
        return leading_term(self, order)

    def diff(self, var: str) -> "Polynomial":
        return partial_derivative(self, var)

    def truncate(self, degree: int) -> "Polynomial":
        """Drop all terms of total degree >= ``degree``."""
        return Polynomial._raw(
            self.vars, {m: c for m, c in self.terms.items() if sum(m) < degree}
        )

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.vars != self.vars:
                raise ValueError(
                    f"variable set mismatch: {self.vars} vs {other.vars}"
                )
            return other
        return Polynomial.constant(self.vars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial._raw(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = mpq(c)
        if not c:
            return Polynomial._raw(self.vars, {})
        return Polynomial._raw(self.vars, {m: c * v for m, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, type(mpq(0)))):
            return self == Polynomial.constant(self.vars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __call__(self, *values):
        """Evaluate at a point (any ring whose elements support + and *)."""
        if len(values) != self.nvars:
            raise ValueError("wrong number of arguments")
        total = 0
        for mon, c in self.terms.items():
            t = c
            for v, e in zip(values, mon):
                if e:
                    t = t * v**e
            total = total + t
        return total

    # -- rendering --------------------------------------------------------
    def sorted_terms(self, order: LocalOrder = NEG_DEG_REVLEX):
        return sorted(self.terms.items(), key=lambda mc: order.key(mc[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, (mon, c) in enumerate(self.sorted_terms()):
            factors = []
            for name, e in zip(self.vars.names, mon):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            neg = c < 0
            a = -c if neg else c
            if factors:
                body = "*".join(factors) if a == 1 else render_rational(a) + "*" + "*".join(factors)
            else:
                body = render_rational(a)
            if i == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({str(self)!r}, vars={str(self.vars)!r})"


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN_RE = re.compile(r"(\d+(?:/\d+)?)|([a-zA-Z][a-zA-Z0-9_]*)|(\S)")


class _Parser:
    def __init__(self, text: str, variables: VariableSet):
        self.text = text
        self.vars = variables
        self.tokens = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN_RE.match(text, pos)
            kind = ("num", "name", "op")[m.lastindex - 1]
            self.tokens.append((kind, m.group(), pos))
            pos = m.end()
        self.end = len(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eof", "", self.end)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value):
        kind, text, pos = self.take()
        if text != value or kind != "op":
            raise PolynomialSyntaxError(f"expected {value!r}", pos)

    def parse(self) -> Polynomial:
        result = self.expr()
        kind, text, pos = self.peek()
        if kind != "eof":
            raise PolynomialSyntaxError(f"unexpected {text!r}", pos)
        return result

    def expr(self) -> Polynomial:
        kind, text, _ = self.peek()
        sign = 1
        if kind == "op" and text in "+-":
            self.take()
            sign = -1 if text == "-" else 1
        acc = self.term().scale(sign)
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.take()
                t = self.term()
                acc = acc + t if text == "+" else acc - t
            else:
                return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while True:
            kind, text, pos = self.peek()
            if kind == "op" and text == "*":
                self.take()
                acc = acc * self.factor()
            elif kind in ("num", "name") or (kind == "op" and text == "("):
                raise PolynomialSyntaxError("implicit multiplication is not allowed", pos)
            else:
                return acc

    def factor(self) -> Polynomial:
        base = self.base()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.take()
            kind, text, pos = self.take()
            if kind != "num" or "/" in text:
                raise PolynomialSyntaxError("expected a natural exponent", pos)
            return base ** int(text)
        return base

    def base(self) -> Polynomial:
        kind, text, pos = self.take()
        if kind == "num":
            num, _, den = text.partition("/")
            if den and int(den) == 0:
                raise PolynomialSyntaxError("division by zero", pos)
            return Polynomial.constant(self.vars, mpq(int(num), int(den) if den else 1))
        if kind == "name":
            if text not in self.vars.names:
                raise PolynomialSyntaxError(f"unknown variable {text!r}", pos)
            return Polynomial.variable(self.vars, text)
        if kind == "op" and text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "eof":
            raise PolynomialSyntaxError("unexpected end of input", pos)
        raise PolynomialSyntaxError(f"unexpected {text!r}", pos)


def parse_polynomial(text: str, variables="x,y") -> Polynomial:
    """Parse ``text`` into canonical sparse form.

    Grammar: ``expr := term (('+'|'-') term)*``, ``term := factor ('*' factor)*``,
    ``factor := base ('^' natural)?``, ``base := rational | variable | '(' expr ')'``.
    A leading sign is accepted at the start of an expression.  Implicit
    multiplication (``2x``) is rejected.
    """
    return _Parser(text, VariableSet.of(variables)).parse()


# --------------------------------------------------------------------------
# operations
# --------------------------------------------------------------------------


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if a.vars != b.vars:
        raise ValueError(f"variable set mismatch: {a.vars} vs {b.vars}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(f: Polynomial, var: str) -> Polynomial:
    k = f.vars.index(var)
    out = {}
    for mon, c in f.terms.items():
        e = mon[k]
        if e:
            m = list(mon)
            m[k] = e - 1
            out[tuple(m)] = c * e
    return Polynomial._raw(f.vars, out)


def order_of(f: Polynomial) -> int:
    """Minimal total degree of the support."""
    if not f.terms:
        raise ValueError("order undefined for the zero polynomial")
    return min(sum(m) for m in f.terms)


def leading_term(f: Polynomial, order: LocalOrder = NEG_DEG_REVLEX):
    if not f.terms:
        raise ValueError("leading term of the zero polynomial")
    mon = max(f.terms, key=order.key)
    return mon, f.terms[mon]


def _det(rows: Sequence[Sequence[Polynomial]], variables) -> Polynomial:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Polynomial(variables)
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(minor, variables)
        total = total + term if j % 2 == 0 else total - term
    return total


def jacobian_minors(gens: Iterable[Polynomial], variables=None) -> list:
    """All maximal minors of the Jacobian matrix of a curve complete intersection.

    For ``n`` generators in ``N = n + 1`` variables this returns the ``N``
    minors obtained by choosing ``n`` columns in increasing order.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    variables = VariableSet.of(variables) if variables is not None else gens[0].vars
    if any(g.vars != variables for g in gens):
        raise ValueError("generators live over different variable sets")
    n, N = len(gens), len(variables)
    if n != N - 1:
        raise ValueError(f"dimension mismatch: {n} generators in {N} variables")
    jac = [[g.diff(v) for v in variables.names] for g in gens]
    minors = []
    for cols in itertools.combinations(range(N), n):
        minors.append(_det([[row[c] for c in cols] for row in jac], variables))
    return minors

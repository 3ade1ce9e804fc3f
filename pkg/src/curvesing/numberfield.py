"""Algebraic number fields for Puiseux coefficients.

A field is ``Q(w)`` for a single primitive element ``w`` with an irreducible
monic minimal polynomial over Q.  Adjoining a root of a polynomial that is
irreducible over the current field yields a new primitive element
(Trager's norm method), so arithmetic is always reduction modulo one
univariate polynomial over Q.  The chain of adjunctions is kept on the field
for rendering and for the tower-height cap.

Elements of Q itself are plain ``mpq``; elements of proper extensions are
:class:`AlgebraicNumber`.  Univariate polynomials over a field are lists of
coefficients, lowest degree first, with no trailing zeros.
"""

from __future__ import annotations

from typing import Sequence

import sympy
from gmpy2 import mpq

from .exactnum import SCALAR_TYPES

__all__ = [
    "NumberField",
    "AlgebraicNumber",
    "QQ",
    "TowerLimitError",
    "DEFAULT_MAX_HEIGHT",
    "DEFAULT_MAX_DEGREE",
    "upoly_trim",
    "upoly_mul",
    "upoly_divmod",
    "upoly_gcd",
    "upoly_eval",
    "squarefree_decomposition",
    "factor_over",
    "adjoin_root",
]

DEFAULT_MAX_HEIGHT = 6
DEFAULT_MAX_DEGREE = 24


class TowerLimitError(RuntimeError):
    pass


# -- univariate polynomials over Q (lists of mpq) ----------------------------


def _qtrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _qdivmod(a, b):
    a = _qtrim(a)
    b = _qtrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [mpq(0)] * max(len(a) - len(b) + 1, 1)
    inv = 1 / b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] * inv
        k = len(a) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] -= c * bc
        a = _qtrim(a)
    return _qtrim(q), a


def _qmul(a, b):
    if not a or not b:
        return []
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _qtrim(out)


def _qinverse_mod(a, m):
    """s with s*a = 1 mod m (m irreducible, a nonzero mod m)."""
    r0, r1 = _qtrim(m), _qtrim(a)
    s0, s1 = [], [mpq(1)]
    while r1:
        q, r = _qdivmod(r0, r1)
        r0, r1 = r1, r
        qs = _qmul(q, s1)
        n = max(len(s0), len(qs))
        s0, s1 = s1, _qtrim([(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)
                             for i in range(n)])
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible (modulus not irreducible?)")
    c = 1 / r0[0]
    return [x * c for x in s0]


# -- fields ------------------------------------------------------------------


class NumberField:
    """``Q[w]/(modulus(w))`` with ``modulus`` monic and irreducible over Q.

    ``parent`` and ``parent_image`` record how the previous field of the
    tower embeds: the previous primitive element maps to ``parent_image``.
    """

    def __init__(self, modulus: Sequence, name: str = "w", parent: "NumberField | None" = None,
                 parent_image=None, adjoined=None):
        mod = _qtrim(mpq(c) for c in modulus)
        if not mod or mod[-1] != 1:
            raise ValueError("modulus must be monic")
        self.modulus = tuple(mod)
        self.degree = len(mod) - 1
        self.name = name
        self.parent = parent
        self.parent_image = parent_image
        # minimal polynomial (over the parent) of the adjoined element, for rendering
        self.adjoined = adjoined
        self.height = 0 if parent is None else parent.height + 1
        n = self.degree
        # rows: w^k reduced, for k = n .. 2n-2
        self._red = []
        if n > 1:
            cur = [-c for c in self.modulus[:n]]
            for _ in range(n - 1):
                self._red.append(tuple(cur))
                top = cur[-1]
                cur = [mpq(0)] + cur[:-1]
                if top:
                    cur = [cur[i] - top * self.modulus[i] for i in range(n)]
            self._red.append(tuple(cur))

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __repr__(self):
        if self.is_rational:
            return "QQ"
        return f"NumberField({self.name}: {self.modulus_str()})"

    def modulus_str(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.modulus[k]
            if not c:
                continue
            mon = "" if k == 0 else (self.name if k == 1 else f"{self.name}^{k}")
            if mon:
                coef = "" if abs(c) == 1 else f"{abs(c)}*"
                body = coef + mon
            else:
                body = str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s + " = 0"

    # element construction
    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def gen(self):
        if self.is_rational:
            return -self.modulus[0]
        return AlgebraicNumber(self, (mpq(0), mpq(1)) + (mpq(0),) * (self.degree - 2))

    def __call__(self, value):
        if self.is_rational:
            if isinstance(value, AlgebraicNumber):
                raise TypeError("cannot coerce an algebraic number into QQ")
            return mpq(value)
        if isinstance(value, AlgebraicNumber):
            if value.field is self:
                return value
            return self.embed(value)
        if isinstance(value, (list, tuple)):
            c = [mpq(v) for v in value] + [mpq(0)] * (self.degree - len(value))
            return self._reduce_vec(c)
        c = [mpq(0)] * self.degree
        c[0] = mpq(value)
        return AlgebraicNumber(self, tuple(c))

    def _reduce_vec(self, c):
        n = self.degree
        c = list(c)
        if len(c) > n:
            hi = c[n:]
            c = c[:n]
            for k, v in enumerate(hi):
                if v:
                    row = self._red[k]
                    for i in range(n):
                        c[i] += v * row[i]
        return AlgebraicNumber(self, tuple(c))

    def embed(self, value):
        """Map an element of an ancestor field (or Q) into this field."""
        if isinstance(value, AlgebraicNumber):
            if value.field is self:
                return value
            if self.parent is None:
                raise TypeError("element does not belong to a subfield of this field")
            value = self.parent.embed(value)
            if isinstance(value, AlgebraicNumber):
                img = self.parent_image
                acc = self(0)
                for c in reversed(value.coeffs):
                    acc = acc * img + c
                return acc
            return self(value)
        return self(value)

    def is_subfield_of(self, other: "NumberField") -> bool:
        f = other
        while f is not None:
            if f is self:
                return True
            f = f.parent
        return self.is_rational


QQ = NumberField((0, 1), name="q")


class AlgebraicNumber:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def _other(self, other):
        if isinstance(other, AlgebraicNumber):
            if other.field is not self.field:
                raise TypeError("elements of different number fields")
            return other.coeffs
        if isinstance(other, SCALAR_TYPES):
            c = [mpq(0)] * self.field.degree
            c[0] = mpq(other)
            return c
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return AlgebraicNumber(self.field, tuple(a + b for a, b in zip(self.coeffs, o)))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return AlgebraicNumber(self.field, tuple(a - b for a, b in zip(self.coeffs, o)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, AlgebraicNumber):
            if isinstance(other, SCALAR_TYPES):
                o = mpq(other)
                return AlgebraicNumber(self.field, tuple(a * o for a in self.coeffs))
            return NotImplemented
        if other.field is not self.field:
            raise TypeError("elements of different number fields")
        a, b = self.coeffs, other.coeffs
        n = self.field.degree
        prod = [mpq(0)] * (2 * n - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self.field._reduce_vec(prod)

    __rmul__ = __mul__

    def inverse(self):
        if not any(self.coeffs):
            raise ZeroDivisionError("division by zero in number field")
        s = _qinverse_mod(list(self.coeffs), list(self.field.modulus))
        return self.field(s)

    def __truediv__(self, other):
        if isinstance(other, AlgebraicNumber):
            return self * other.inverse()
        o = mpq(other)
        if not o:
            raise ZeroDivisionError("division by zero")
        return AlgebraicNumber(self.field, tuple(a / o for a in self.coeffs))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, AlgebraicNumber):
            return other.field is self.field and self.coeffs == other.coeffs
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.coeffs == tuple(o)

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((id(self.field), self.coeffs))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __str__(self):
        name = self.field.name
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mon = "" if k == 0 else (name if k == 1 else f"{name}^{k}")
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{c}*{mon}")
        if not parts:
            return "0"
        s = parts[0]
        for p in parts[1:]:
            s += " - " + p[1:] if p.startswith("-") else " + " + p
        return s if len(parts) == 1 else f"({s})"

    __repr__ = __str__


# -- univariate polynomials over a field ---------------------------------------


def _is_zero(c) -> bool:
    return not c


def upoly_trim(p):
    p = list(p)
    while p and _is_zero(p[-1]):
        p.pop()
    return p


def upoly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return upoly_trim(out)


def upoly_divmod(a, b):
    a = upoly_trim(a)
    b = upoly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [0] * max(len(a) - len(b) + 1, 1)
    inv = 1 / b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] * inv
        k = len(a) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            a[i + k] = a[i + k] - c * bc
        a = upoly_trim(a)
    return upoly_trim(q), a


def _monic(p):
    inv = 1 / p[-1]
    return [c * inv for c in p]


def upoly_gcd(a, b):
    a = upoly_trim(a)
    b = upoly_trim(b)
    while b:
        _, r = upoly_divmod(a, b)
        a, b = b, r
    return _monic(a) if a else []


def upoly_deriv(p):
    return upoly_trim([p[i] * i for i in range(1, len(p))])


def upoly_eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def squarefree_decomposition(p):
    """Yun's algorithm: list of (factor, multiplicity), factors monic and squarefree."""
    p = _monic(upoly_trim(p))
    out = []
    dp = upoly_deriv(p)
    a = upoly_gcd(p, dp)
    b, _ = upoly_divmod(p, a)
    c, _ = upoly_divmod(dp, a)
    k = 1
    while len(b) > 1:
        d = [x - y for x, y in _zip_pad(c, upoly_deriv(b))]
        d = upoly_trim(d)
        g = upoly_gcd(b, d) if d else b
        if len(g) > 1:
            out.append((g, k))
        b, _ = upoly_divmod(b, g)
        if d:
            c, _ = upoly_divmod(d, g)
        else:
            c = []
        k += 1
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]


# -- factorisation and adjunction ------------------------------------------------

_Y, _Z = sympy.symbols("_y _z")


def _sympy_qpoly(coeffs, var):
    return sympy.Poly([sympy.Rational(int(c.numerator), int(c.denominator))
                       for c in reversed(coeffs)], var, domain=sympy.QQ)


def _from_sympy(poly) -> list:
    return [mpq(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]


class _Factor:
    """An irreducible monic factor over K with the data needed to adjoin a root."""

    __slots__ = ("poly", "norm", "shift")

    def __init__(self, poly, norm, shift):
        self.poly = poly      # monic, coefficients in K
        self.norm = norm      # irreducible monic over Q, roots beta + shift*w
        self.shift = shift


def _sort_key(fac: _Factor):
    return (len(fac.poly), [str(c) for c in fac.norm])


def factor_over(p, K: NumberField) -> list:
    """Irreducible monic factors over ``K`` of a squarefree polynomial ``p``."""
    p = _monic(upoly_trim([K(c) for c in p]))
    if len(p) <= 2:
        return [_Factor(p, None, 0)]
    if K.is_rational:
        sp = _sympy_qpoly(p, _Z)
        _, facs = sympy.factor_list(sp)
        out = []
        for fac, mult in facs:
            q = _from_sympy(fac.monic())
            out.append(_Factor(q, q, 0))
        out.sort(key=_sort_key)
        return out
    # Trager: find a shift making the norm squarefree
    n = K.degree
    modulus = _sympy_qpoly(list(K.modulus), _Y)
    bivar = 0
    for i, c in enumerate(p):
        cc = K(c).coeffs
        for j, v in enumerate(cc):
            if v:
                bivar += sympy.Rational(int(v.numerator), int(v.denominator)) * _Y**j * _Z**i
    for s in (0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5):
        shifted = sympy.expand(bivar.subs(_Z, _Z - s * _Y))
        norm = sympy.Poly(sympy.resultant(modulus.as_expr(), shifted, _Y), _Z, domain=sympy.QQ)
        if sympy.degree(sympy.gcd(norm, norm.diff(_Z)), _Z) == 0:
            break
    else:
        raise RuntimeError("no squarefree norm found for Trager factorisation")
    _, facs = sympy.factor_list(norm)
    w = K.gen()
    out = []
    for fac, _m in facs:
        q = _from_sympy(fac.monic())
        # q(z + s*w) as a polynomial in z over K
        lin = [K(s) * w, K(1)]
        acc = []
        for c in reversed(q):
            acc = upoly_mul(acc, lin)
            acc = upoly_trim([a + b for a, b in _zip_pad(acc, [K(c)])])
        g = upoly_gcd(acc, p)
        if len(g) > 1:
            out.append(_Factor(g, q, s))
    out.sort(key=_sort_key)
    if sum(len(f.poly) - 1 for f in out) != len(p) - 1:
        raise RuntimeError("Trager factorisation lost degree")
    return out


def adjoin_root(fac: _Factor, K: NumberField, *, max_height: int = DEFAULT_MAX_HEIGHT,
                max_degree: int = DEFAULT_MAX_DEGREE):
    """Return ``(L, beta)`` with ``L`` = K(beta) and beta a root of ``fac.poly``."""
    poly = fac.poly
    if len(poly) == 2:
        return K, -poly[0] / poly[1]
    new_degree = K.degree * (len(poly) - 1)
    if K.height + 1 > max_height:
        raise TowerLimitError(f"extension tower height exceeds {max_height}")
    if new_degree > max_degree:
        raise TowerLimitError(f"extension degree {new_degree} exceeds {max_degree}")
    name = f"a{K.height + 1}"
    if K.is_rational:
        L = NumberField(fac.norm, name=name, parent=K, adjoined=tuple(poly))
        return L, L.gen()
    L = NumberField(fac.norm, name=name, parent=K, parent_image=None, adjoined=tuple(poly))
    u = L.gen()
    s = fac.shift
    # theta (generator of K) inside L: common root of modulus(y) and P(y, u - s*y)
    mod_y = [L(c) for c in K.modulus]
    lin = [u, L(-s)]  # u - s*y
    acc = []
    for c in reversed(poly):
        cc = K(c).coeffs
        coef_poly = upoly_trim([L(v) for v in cc])
        acc = upoly_mul(acc, lin)
        acc = upoly_trim([a + b for a, b in _zip_pad(acc, coef_poly)])
    g = upoly_gcd(mod_y, acc)
    if len(g) != 2:
        raise RuntimeError("primitive element recovery failed")
    theta = -g[0] / g[1]
    L.parent = K
    L.parent_image = theta
    L.height = K.height + 1
    beta = u - theta * s
    return L, beta

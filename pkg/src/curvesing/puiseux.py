"""Newton polygons and rational Newton-Puiseux expansions of plane germs.

Branches are produced with Duval's rational variant: at each Newton edge the
edge polynomial is factored over the current coefficient field and one root
per irreducible factor is adjoined, so each :class:`PuiseuxBranch` stands
for ``[K:Q]`` conjugate complex branches.  Parametrizations have the shape
``x = a*t^e, y = phi(t)`` with ``a`` and the coefficients of ``phi`` in ``K``
(or, for the vertical axis, ``x = 0, y = t``).

Once the recursion reaches a simple root, the rest of ``phi`` is the unique
power-series root of a polynomial with invertible ``Y``-derivative.  It is
produced on demand by Newton iteration, so every branch can be extended to
any precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

from gmpy2 import mpq

from .errors import NonIsolatedError
from .linalg import LowEchelon
from .numberfield import (
    DEFAULT_MAX_DEGREE,
    DEFAULT_MAX_HEIGHT,
    QQ,
    AlgebraicNumber,
    NumberField,
    adjoin_root,
    factor_over,
    squarefree_decomposition,
    upoly_trim,
)
from .polyring import Polynomial, partial_derivative
from .series import InsufficientPrecision, TruncatedSeries

__all__ = [
    "Edge",
    "PuiseuxBranch",
    "BranchSet",
    "NonReducedError",
    "InsufficientPrecision",
    "newton_polygon",
    "puiseux_branches",
    "branch_values",
    "delta_branch",
    "intersection_multiplicity",
    "delta_oracle",
    "render_branch",
]

PRECISION_CAP = 1 << 12


class NonReducedError(NonIsolatedError):
    """The germ has a multiple component, so the singularity is not isolated."""


@dataclass(frozen=True)
class Edge:
    """A compact edge of a local Newton polygon.

    ``start`` is the end nearer the ``j`` axis.  Points on the edge satisfy
    ``q*i + p*j = const``; the edge carries ``length + 1`` lattice points.
    """

    start: tuple
    end: tuple
    p: int
    q: int
    length: int

    @property
    def slope(self) -> mpq:
        return mpq(self.p, self.q)


def _hull(points, top: tuple) -> list:
    edges = []
    ci, cj = top
    while True:
        best = None
        for i, j in points:
            if j >= cj:
                continue
            r = mpq(i - ci, cj - j)
            if best is None or r < best[0] or (r == best[0] and j < best[1][1]):
                best = (r, (i, j))
        if best is None:
            return edges
        ni, nj = best[1]
        di, dj = ni - ci, cj - nj
        g = math.gcd(di, dj)
        edges.append(Edge((ci, cj), (ni, nj), di // g, dj // g, g))
        ci, cj = ni, nj


def _support(f: Polynomial) -> list:
    if f.nvars != 2:
        raise ValueError("plane curve germs need exactly two variables")
    return list(f.terms)


def newton_polygon(f: Polynomial) -> list:
    """Compact edges of the local Newton polygon of ``f``, by increasing slope steepness.

    Exponents are ``(i, j)`` for ``x^i y^j``.  A single-vertex polygon
    (such as for ``x*y``) has no compact edges and yields ``[]``.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial has no Newton polygon")
    pts = _support(f)
    if f.constant_term():
        raise ValueError("f is a unit in the local ring")
    top = min(pts, key=lambda m: (m[0], m[1]))
    return _hull(pts, top)


# -- power-series root of a polynomial with a simple root ------------------


def _series_inverse(a: list, n: int, one) -> list:
    inv0 = one / a[0]
    out = [inv0]
    for k in range(1, n):
        s = 0
        for i in range(1, min(k, len(a) - 1) + 1):
            if a[i]:
                s = s + a[i] * out[k - i]
        out.append(-s * inv0)
    return out


def _mul_trunc(a: list, b: list, n: int) -> list:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if not x:
            continue
        for j in range(min(len(b), n - i)):
            y = b[j]
            if y:
                out[i + j] = out[i + j] + x * y
    return out


class _SimpleRootSolver:
    """Power-series solution Y(X) of F(X, Y) = 0 with F(0,0) = 0, F_Y(0,0) != 0."""

    def __init__(self, F: dict, K: NumberField):
        self.K = K
        deg = max(j for _, j in F)
        self.P = [dict() for _ in range(deg + 1)]
        for (i, j), c in F.items():
            self.P[j][i] = c
        self.Y: list = []
        self.prec = 1  # Y known modulo X^prec

    def _coeffs(self, j: int, n: int) -> list:
        out = [0] * n
        for i, c in self.P[j].items():
            if i < n:
                out[i] = c
        return out

    def _eval(self, Y: list, n: int):
        d = len(self.P) - 1
        val = self._coeffs(d, n)
        der = [0] * n
        for j in range(d - 1, -1, -1):
            der = [a + b for a, b in zip(_mul_trunc(der, Y, n), val)]
            val = [a + b for a, b in zip(_mul_trunc(val, Y, n), self._coeffs(j, n))]
        return val, der

    def solve(self, n: int) -> list:
        """Coefficients of Y modulo X^n."""
        while self.prec < n:
            m = min(2 * self.prec, n)
            Y = (self.Y + [0] * m)[:m]
            val, der = self._eval(Y, m)
            corr = _mul_trunc(val, _series_inverse(der, m, self.K.one()), m)
            self.Y = [a - b for a, b in zip(Y, corr)]
            self.prec = m
        return self.Y[:n]


class _Tail:
    """Lazy ``y(t) = Q(t) + C t^s Y(t)`` with ``Y`` from a simple-root solver."""

    def __init__(self, Q: dict, C, s: int, solver: _SimpleRootSolver):
        self.Q, self.C, self.s, self.solver = Q, C, s, solver

    def series(self, T: int) -> TruncatedSeries:
        coeffs = [0] * (T + 1)
        for k, c in self.Q.items():
            if k <= T:
                coeffs[k] = coeffs[k] + c
        n = T + 1 - self.s
        if n > 0:
            for k, c in enumerate(self.solver.solve(n)):
                if c:
                    coeffs[self.s + k] = coeffs[self.s + k] + self.C * c
        return TruncatedSeries(coeffs, T)


# -- branches ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PuiseuxBranch:
    """A parametrized branch ``(x(t), y(t))`` with coefficients in ``field``.

    ``x`` and ``y`` are :class:`TruncatedSeries`; an exact series has
    ``prec`` None.  ``e`` is the order of the coordinate that is a pure
    monomial (``x``, or ``y`` when ``swapped``).
    """

    field: NumberField
    x: TruncatedSeries
    y: TruncatedSeries
    e: int
    swapped: bool = False
    _tail: object = dc_field(default=None, repr=False)

    @property
    def degree(self) -> int:
        """Number of complex conjugate branches this branch stands for."""
        return self.field.degree

    @property
    def truncation(self) -> float:
        px = math.inf if self.x.prec is None else self.x.prec
        py = math.inf if self.y.prec is None else self.y.prec
        return min(px, py)

    @property
    def extendable(self) -> bool:
        return self._tail is not None or self.truncation == math.inf

    @property
    def phi(self) -> TruncatedSeries:
        """The non-monomial coordinate."""
        return self.x if self.swapped else self.y

    @classmethod
    def from_parametrization(cls, x, y, field: NumberField = QQ,
                             prec: int | None = None) -> "PuiseuxBranch":
        """Branch from coefficient lists (or series) for ``x(t)`` and ``y(t)``."""
        xs = x if isinstance(x, TruncatedSeries) else TruncatedSeries([field(c) for c in x], prec)
        ys = y if isinstance(y, TruncatedSeries) else TruncatedSeries([field(c) for c in y], prec)
        ox, oy = xs.order(), ys.order()
        if ox == 0 or oy == 0:
            raise ValueError("a branch must pass through the origin")
        if ox is None and oy is None:
            raise ValueError("both coordinates vanish")
        swapped = ox is None or (_is_monomial(ys) and not _is_monomial(xs))
        return cls(field, xs, ys, oy if swapped else ox, swapped)

    def at_precision(self, T: int) -> "PuiseuxBranch":
        """The same branch known modulo ``t^(T+1)`` (or better)."""
        if self.truncation >= T:
            return self
        if self._tail is None:
            raise InsufficientPrecision(
                f"insufficient precision: branch known to order {self.truncation}, {T} requested")
        phi = self._tail.series(T)
        if self.swapped:
            return PuiseuxBranch(self.field, phi, self.y, self.e, True, self._tail)
        return PuiseuxBranch(self.field, self.x, phi, self.e, False, self._tail)

    def series_pair(self, N: int) -> tuple:
        b = self.at_precision(N)
        return _cut(b.x, N), _cut(b.y, N)

    def __str__(self):
        return render_branch(self)


def _is_monomial(s: TruncatedSeries) -> bool:
    return s.prec is None and sum(1 for c in s.coeffs if c) == 1


def _cut(s: TruncatedSeries, N: int) -> TruncatedSeries:
    return TruncatedSeries(s.coeffs[: N + 1], N)


@dataclass(frozen=True)
class BranchSet:
    source: Polynomial
    branches: tuple

    @property
    def r(self) -> int:
        return sum(b.degree for b in self.branches)

    def __len__(self):
        return len(self.branches)

    def __iter__(self):
        return iter(self.branches)

    def __getitem__(self, k):
        return self.branches[k]

    def multiplicity_sum(self) -> int:
        """Sum over complex branches of ``min(ord x, ord y)``; equals the order of f."""
        total = 0
        for b in self.branches:
            if b.extendable:
                b = b.at_precision(b.e)
            o = _cut(b.phi, b.e).order()
            total += b.degree * (b.e if o is None else min(b.e, o))
        return total

    def ramification_sum(self) -> int:
        return sum(b.degree * b.e for b in self.branches)


# -- the expansion -----------------------------------------------------------


@dataclass
class _Prefix:
    A: object      # x = A X^E
    E: int
    Q: dict        # y = Q(X) + C X^s Y
    C: object
    s: int

    def embed(self, L: NumberField) -> "_Prefix":
        return _Prefix(L.embed(self.A), self.E, {k: L.embed(v) for k, v in self.Q.items()},
                       L.embed(self.C), self.s)


def _binomial_powers(c, deg: int, K: NumberField) -> list:
    """Coefficient lists of (c + Y)^j for j = 0..deg."""
    out = [[K.one()]]
    for _ in range(deg):
        prev = out[-1]
        nxt = [0] * (len(prev) + 1)
        for k, v in enumerate(prev):
            nxt[k] = nxt[k] + v * c
            nxt[k + 1] = nxt[k + 1] + v
        out.append(nxt)
    return out


class _Expander:
    def __init__(self, precision: int, max_height: int, max_degree: int):
        self.precision = precision
        self.max_height = max_height
        self.max_degree = max_degree
        self.out: list = []

    def emit_exact(self, K, pre: _Prefix):
        x = TruncatedSeries.monomial(pre.E, pre.A)
        coeffs = [0] * (max(pre.Q, default=0) + 1)
        for k, c in pre.Q.items():
            coeffs[k] = c
        self.out.append(PuiseuxBranch(K, x, TruncatedSeries(coeffs), pre.E))

    def emit_series(self, K, pre: _Prefix, F: dict):
        tail = _Tail(dict(pre.Q), pre.C, pre.s, _SimpleRootSolver(F, K))
        x = TruncatedSeries.monomial(pre.E, pre.A)
        y = tail.series(self.precision)
        self.out.append(PuiseuxBranch(K, x, y, pre.E, False, tail))

    def expand(self, F: dict, K: NumberField, pre: _Prefix, n: int, level: int):
        if not any(j == 0 for _, j in F):
            self.emit_exact(K, pre)
            F = {(i, j - 1): c for (i, j), c in F.items()}
            if not any(j == 0 for _, j in F):
                raise NonReducedError("not an isolated singularity (multiple component)")
            n -= 1
            if n == 0:
                return
        pts = [m for m in F if m[1] <= n]
        for edge in _hull(pts, (0, n)):
            self.expand_edge(F, K, pre, edge, level)

    def expand_edge(self, F, K, pre, edge: Edge, level: int):
        p, q, g = edge.p, edge.q, edge.length
        i2, j2 = edge.end
        phi = upoly_trim([F.get((i2 - p * k, j2 + q * k), K.zero()) for k in range(g + 1)])
        u = 1 if p == 1 else pow(q, -1, p)
        v = (u * q - 1) // p
        l = q * i2 + p * j2
        for part, mult in squarefree_decomposition(phi):
            for fac in factor_over(part, K):
                L, xi = adjoin_root(fac, K, max_height=self.max_height,
                                    max_degree=self.max_degree)
                FL = F if L is K else {m: L.embed(c) for m, c in F.items()}
                preL = pre if L is K else pre.embed(L)
                self.descend(FL, L, preL, xi, p, q, u, v, l, mult, level)

    def descend(self, F, L, pre: _Prefix, xi, p, q, u, v, l, mult, level):
        xu = xi ** u
        maxj = max(j for _, j in F)
        binom = _binomial_powers(xu, maxj, L)
        xiv = xi ** v
        xv = [L.one()]
        for _ in range(max(i for i, _ in F)):
            xv.append(xv[-1] * xiv)
        F1: dict = {}
        for (i, j), c in F.items():
            X = q * i + p * j - l
            cc = c * xv[i]
            for k, b in enumerate(binom[j]):
                if b:
                    key = (X, k)
                    w = F1.get(key, 0) + cc * b
                    if w:
                        F1[key] = w
                    else:
                        F1.pop(key, None)
        Q1 = {q * k: c * xiv ** k for k, c in pre.Q.items()}
        lead = pre.C * xiv ** pre.s * xu
        key = q * pre.s + p
        w = Q1.get(key, 0) + lead
        if w:
            Q1[key] = w
        else:
            Q1.pop(key, None)
        new = _Prefix(pre.A * xiv ** pre.E, q * pre.E, Q1, pre.C * xiv ** pre.s, q * pre.s + p)
        if mult == 1:
            if not any(j == 0 for _, j in F1):
                self.emit_exact(L, new)
            else:
                self.emit_series(L, new, F1)
        else:
            self.expand(F1, L, new, mult, level + 1)


def puiseux_branches(f: Polynomial, precision: int = 0, *,
                     max_height: int = DEFAULT_MAX_HEIGHT,
                     max_degree: int = DEFAULT_MAX_DEGREE) -> BranchSet:
    """All branches of ``f = 0`` at the origin.

    Every series is known at least to ``t^precision``; series-backed
    branches extend further on demand via :meth:`PuiseuxBranch.at_precision`.
    Raises :class:`NonReducedError` on a repeated factor, and
    :class:`~curvesing.numberfield.TowerLimitError` past the extension caps.
    """
    pts = _support(f)
    if f.is_zero():
        raise ValueError("the zero polynomial defines no curve germ")
    if f.constant_term():
        raise ValueError("f does not vanish at the origin")
    F = {m: mpq(c) for m, c in f.terms.items()}
    ex = _Expander(max(precision, 1), max_height, max_degree)
    vertical = []
    if all(i >= 1 for i, _ in pts):
        F = {(i - 1, j): c for (i, j), c in F.items()}
        if all(i >= 1 for i, _ in F):
            raise NonReducedError("not an isolated singularity (multiple component)")
        vertical.append(PuiseuxBranch(QQ, TruncatedSeries([]), TruncatedSeries([0, 1]), 1, True))
    n = min(j for i, j in F if i == 0)
    if n > 0:
        ex.expand(F, QQ, _Prefix(mpq(1), 1, {}, mpq(1), 0), n, 0)
    branches = sorted(ex.out, key=lambda b: b.e) + vertical
    return BranchSet(f, tuple(branches))


# -- values, intersections, delta ---------------------------------------------


def _evaluate(g: Polynomial, xs: TruncatedSeries, ys: TruncatedSeries, N: int) -> TruncatedSeries:
    """``g(x(t), y(t))`` modulo ``t^(N+1)`` (both series known to N)."""
    maxi = max((m[0] for m in g.terms), default=0)
    maxj = max((m[1] for m in g.terms), default=0)
    xp = [TruncatedSeries([1], N)]
    for _ in range(maxi):
        xp.append(xp[-1].mul_trunc(xs, N))
    yp = [TruncatedSeries([1], N)]
    for _ in range(maxj):
        yp.append(yp[-1].mul_trunc(ys, N))
    acc = TruncatedSeries([], N)
    for (i, j), c in g.terms.items():
        acc = acc + xp[i].mul_trunc(yp[j], N).scale(c)
    return acc


def intersection_multiplicity(b: PuiseuxBranch, g: Polynomial) -> int:
    """``ord_t g(x(t), y(t))``, extending the branch as far as needed."""
    if b.truncation == math.inf:
        N = max(g.total_degree(), 1) * max(len(b.x.coeffs), len(b.y.coeffs), 1)
        o = _evaluate(g, _cut(b.x, N), _cut(b.y, N), N).order()
        if o is None:
            raise ValueError("insufficient precision or component: g vanishes on the branch")
        return o
    N = 16
    while True:
        if N > b.truncation and not b.extendable:
            raise InsufficientPrecision("insufficient precision or component")
        if N > PRECISION_CAP:
            raise InsufficientPrecision("insufficient precision or component")
        xs, ys = b.series_pair(N)
        o = _evaluate(g, xs, ys, N).order()
        if o is not None:
            return o
        N *= 2


def _monomial_vectors(xs: TruncatedSeries, ys: TruncatedSeries, N: int):
    ox, oy = xs.order(), ys.order()
    xpow = TruncatedSeries([1], N)
    a = 0
    while True:
        if ox is not None and a * ox > N:
            break
        ypow = xpow
        bdeg = 0
        while True:
            used = (a * ox if ox else 0) + (bdeg * oy if oy else 0)
            if used > N or ypow.is_zero():
                break
            yield a, bdeg, ypow
            if oy is None:
                break
            ypow = ypow.mul_trunc(ys, N)
            bdeg += 1
        if ox is None:
            break
        xpow = xpow.mul_trunc(xs, N)
        a += 1
        if xpow.is_zero():
            break


def _dense(s: TruncatedSeries, N: int) -> list:
    c = s.coeffs[: N + 1]
    return c + [0] * (N + 1 - len(c))


def branch_values(b: PuiseuxBranch, bound: int) -> set:
    """Orders ``<= bound`` of pulled-back functions on the branch."""
    if bound > b.truncation:
        raise InsufficientPrecision(
            f"insufficient precision: bound {bound} exceeds truncation {b.truncation}")
    xs, ys = _cut(b.x, bound), _cut(b.y, bound)
    ech = LowEchelon(bound + 1)
    for _, _, vec in _monomial_vectors(xs, ys, bound):
        ech.add(_dense(vec, bound))
    return ech.orders()


def _stable_conductor(values: set, bound: int, run: int | None = None):
    """Least ``c`` with ``[c, c + run)`` inside ``values`` and below ``bound``.

    ``run`` defaults to the least positive element of ``values``; for a
    semigroup that makes every integer from ``c`` on a member.
    """
    if run is None:
        positive = [v for v in values if v > 0]
        if not positive:
            return None
        run = min(positive)
    length = 0
    for v in range(bound + 1):
        length = length + 1 if v in values else 0
        if length >= run:
            return v - run + 1
    return None


def _values_stable(b: PuiseuxBranch, start: int):
    N = start
    while True:
        if N > b.truncation and not b.extendable:
            raise InsufficientPrecision("insufficient precision: value set not stabilized")
        if N > PRECISION_CAP:
            raise InsufficientPrecision("value set did not stabilize below the precision cap")
        vals = branch_values(b.at_precision(N), N)
        c = _stable_conductor(vals, N)
        if c is not None:
            return vals, c
        N *= 2


def _start_bound(b: PuiseuxBranch) -> int:
    ox = b.x.order() or 1
    oy = b.y.order() or 1
    return max(8, 2 * (ox + oy))


def semigroup_data(b: PuiseuxBranch) -> tuple:
    """``(conductor, gaps)`` of the value semigroup of the branch."""
    vals, c = _values_stable(b, _start_bound(b))
    return c, sorted(v for v in range(c) if v not in vals)


def delta_branch(b: PuiseuxBranch) -> int:
    """Number of gaps of the value semigroup."""
    return len(semigroup_data(b)[1])


def _different_order(b: PuiseuxBranch) -> int:
    """``ord_t`` of the ``y``-derivative of the branch's own equation along it."""
    e = b.e
    if e == 1:
        return 0
    total = 0
    T = max(16, 4 * e)
    for d in range(2, e + 1):
        if e % d:
            continue
        phi_d = d
        for p in _prime_divisors(d):
            phi_d = phi_d // p * (p - 1)
        while True:
            bb = b.at_precision(T)
            coeffs = bb.phi.coeffs
            hit = next((i for i, c in enumerate(coeffs) if c and i % d), None)
            if hit is not None:
                break
            if bb.truncation == math.inf or T > PRECISION_CAP:
                raise ValueError("parametrization is not primitive")
            T *= 2
        total += phi_d * hit
    return total


def _prime_divisors(n: int) -> list:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def delta_oracle(B: BranchSet) -> int:
    """delta of the germ from its branches.

    Sums the gap counts of the branches and half the intersection numbers
    between distinct complex branches.  The latter come from the order of
    the relevant partial of the source polynomial along each branch, minus
    the contribution of the branch's own conjugates.
    """
    f = B.source
    fx, fy = partial_derivative(f, f.vars.names[0]), partial_derivative(f, f.vars.names[1])
    twice_cross = 0
    total = 0
    for b in B.branches:
        total += b.degree * delta_branch(b)
        ordD = intersection_multiplicity(b, fx if b.swapped else fy)
        twice_cross += b.degree * (ordD - _different_order(b))
    if twice_cross % 2 or twice_cross < 0:
        raise ArithmeticError(f"inconsistent branch intersection data ({twice_cross}/2)")
    return total + twice_cross // 2


# -- rendering -----------------------------------------------------------------


def _coef_str(c) -> str:
    if isinstance(c, AlgebraicNumber):
        return str(c)
    q = mpq(c)
    return str(int(q)) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _series_str(s: TruncatedSeries, T: int | None) -> str:
    parts = []
    for i, c in enumerate(s.coeffs):
        if not c:
            continue
        mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        cs = _coef_str(c)
        if not mon:
            parts.append(cs)
        elif cs == "1":
            parts.append(mon)
        elif cs == "-1":
            parts.append("-" + mon)
        else:
            parts.append(f"{cs}*{mon}")
    body = parts[0] if parts else "0"
    for p in parts[1:]:
        body += " - " + p[1:] if p.startswith("-") else " + " + p
    if T is not None:
        body += f" + O(t^{T + 1})"
    return body


def _field_lines(K: NumberField) -> list:
    lines = []
    while K is not None and not K.is_rational:
        lines.append(f"  {K.modulus_str()}")
        K = K.parent
    return lines


def render_branch(b: PuiseuxBranch, T: int | None = None) -> str:
    """``x = ..., y = ...`` with the minimal polynomials of any algebraic symbols below."""
    if T is not None:
        b = b.at_precision(T)
        xs, ys = (_cut(b.x, T) if b.x.prec is not None else b.x,
                  _cut(b.y, T) if b.y.prec is not None else b.y)
    else:
        xs, ys = b.x, b.y
    text = f"x = {_series_str(xs, xs.prec)}, y = {_series_str(ys, ys.prec)}"
    lines = _field_lines(b.field)
    if lines:
        text += "\n" + "\n".join(lines)
    return text

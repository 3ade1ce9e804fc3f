"""Standard bases in the local ring at the origin (Mora's tangent-cone algorithm).

All dimensions the package reports are colengths ``dim O/I`` of ideals in
the localization of Q[x_1..x_N] at the origin.  They are read off the
staircase of a standard basis for :data:`~curvesing.polyring.NEG_DEG_REVLEX`.

Once the leading ideal of the partial basis contains every monomial of some
degree ``k`` (the "corner"), the ideal contains ``m^k`` and all further
arithmetic is done modulo ``m^k``.  That keeps the polynomials bounded and
makes complete normal forms terminate.
"""

from __future__ import annotations

import heapq
import math
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from gmpy2 import mpq

from .polyring import NEG_DEG_REVLEX, LocalOrder, Polynomial, VariableSet

__all__ = [
    "INFINITE",
    "DEFAULT_STEP_BOUND",
    "StepBoundExceeded",
    "IdealBasis",
    "StandardBasis",
    "mora_reduce",
    "standard_basis",
    "colength",
    "ideal_membership",
    "standard_monomials",
    "complete_normal_form",
]

INFINITE = math.inf
DEFAULT_STEP_BOUND = 10**7

_KEY = NEG_DEG_REVLEX.key


class StepBoundExceeded(RuntimeError):
    """Raised when a reduction runs past the watchdog bound (an internal bug)."""


def _step_bound(bound: int | None) -> int:
    if bound is not None:
        return bound
    env = os.environ.get("CURVESING_STEP_BOUND")
    return int(env) if env else DEFAULT_STEP_BOUND


class _Budget:
    __slots__ = ("left", "bound")

    def __init__(self, bound: int):
        self.left = bound
        self.bound = bound

    def spend(self):
        self.left -= 1
        if self.left < 0:
            raise StepBoundExceeded(f"more than {self.bound} reduction steps")


# -- raw dict-polynomial helpers -------------------------------------------


def _lm(p: dict):
    return max(p, key=_KEY)


def _ecart(p: dict, lm) -> int:
    return max(map(sum, p)) - sum(lm)


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _truncate(p: dict, corner: int | None) -> dict:
    if corner is None:
        return p
    return {m: c for m, c in p.items() if sum(m) < corner}


def _axpy(h: dict, c, shift, g: dict, corner: int | None) -> None:
    """In place: ``h -= c * x^shift * g`` (terms of degree >= corner dropped)."""
    sdeg = sum(shift)
    for m, v in g.items():
        if corner is not None and sum(m) + sdeg >= corner:
            continue
        mm = tuple(a + b for a, b in zip(m, shift))
        w = h.get(mm, 0) - c * v
        if w:
            h[mm] = w
        else:
            h.pop(mm, None)


class _Entry:
    __slots__ = ("poly", "lm", "lc", "ecart")

    def __init__(self, poly: dict):
        self.poly = poly
        self.lm = _lm(poly)
        self.lc = poly[self.lm]
        self.ecart = _ecart(poly, self.lm)


def _nf_mora(h: dict, reducers: Sequence[_Entry], corner, budget: _Budget) -> dict:
    """Weak normal form of ``h`` (Mora): ``u*h = sum(a_i g_i) + result``."""
    h = _truncate(dict(h), corner)
    T = list(reducers)
    while h:
        lmh = _lm(h)
        best = None
        for e in T:
            if _divides(e.lm, lmh) and (best is None or e.ecart < best.ecart):
                best = e
                if e.ecart == 0:
                    break
        if best is None:
            return h
        eh = _ecart(h, lmh)
        if best.ecart > eh:
            T.append(_Entry(dict(h)))
        shift = tuple(a - b for a, b in zip(lmh, best.lm))
        _axpy(h, h[lmh] / best.lc, shift, best.poly, corner)
        budget.spend()
    return h


def _complement(leading: Iterable, nvars: int, corner: int | None = None):
    """Monomials outside ``leading + m^corner``, or None if there are infinitely many."""
    leading = list(leading)
    if corner is not None:
        leading += [(0,) * k + (corner,) + (0,) * (nvars - k - 1) for k in range(nvars)]
    for k in range(nvars):
        if not any(all(e == 0 for j, e in enumerate(m) if j != k) for m in leading):
            return None
    seen = set()
    out = []
    stack = [(0,) * nvars]
    while stack:
        mon = stack.pop()
        if mon in seen:
            continue
        seen.add(mon)
        if (corner is not None and sum(mon) >= corner) or any(
            _divides(l, mon) for l in leading
        ):
            continue
        out.append(mon)
        for k in range(nvars):
            nxt = mon[:k] + (mon[k] + 1,) + mon[k + 1:]
            if nxt not in seen:
                stack.append(nxt)
    out.sort(key=_KEY, reverse=True)
    return out


def _corner_of(leading, nvars: int, corner: int | None = None):
    comp = _complement(leading, nvars, corner)
    if comp is None:
        return None
    if not comp:
        return 0
    return max(map(sum, comp)) + 1


def _minimalize(entries: list) -> list:
    keep = []
    for i, e in enumerate(entries):
        dominated = False
        for j, o in enumerate(entries):
            if j == i:
                continue
            if _divides(o.lm, e.lm) and (o.lm != e.lm or j < i):
                dominated = True
                break
        if not dominated:
            keep.append(e)
    return keep


# -- public types ----------------------------------------------------------


@dataclass(frozen=True)
class IdealBasis:
    """Generators of an ideal of the local ring, all over one variable set."""

    generators: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise ValueError("an ideal basis needs at least one generator")
        if any(g.is_zero() for g in gens):
            raise ValueError("zero generator in ideal basis")
        if len({g.vars for g in gens}) != 1:
            raise ValueError("generators live over different variable sets")

    @property
    def vars(self) -> VariableSet:
        return self.generators[0].vars


@dataclass(frozen=True)
class StandardBasis:
    """A standard basis with its minimal leading monomials.

    ``corner`` is a degree ``k`` with ``m^k`` contained in the ideal (None
    when the colength is infinite); generators are stored truncated below it.
    """

    vars: VariableSet
    generators: tuple
    leading: tuple
    corner: int | None
    order: LocalOrder = NEG_DEG_REVLEX

    def colength(self):
        return colength(self)

    def _entries(self):
        cached = self.__dict__.get("_entry_cache")
        if cached is None:
            cached = [_Entry(dict(g.terms)) for g in self.generators]
            object.__setattr__(self, "_entry_cache", cached)
        return cached


def _as_entries(G) -> tuple[list, int | None, VariableSet | None]:
    if isinstance(G, StandardBasis):
        return G._entries(), G.corner, G.vars
    gens = [g for g in G if not g.is_zero()]
    return [_Entry(dict(g.terms)) for g in gens], None, (gens[0].vars if gens else None)


def mora_reduce(f: Polynomial, G, order: LocalOrder = NEG_DEG_REVLEX,
                step_bound: int | None = None) -> Polynomial:
    """Mora weak normal form of ``f`` with respect to ``G``.

    ``G`` is a list of polynomials or a :class:`StandardBasis` (whose corner
    is then used for truncation).  The result is zero iff ``f`` lies in the
    ideal when ``G`` is a standard basis.
    """
    if order is not NEG_DEG_REVLEX and order.tag != NEG_DEG_REVLEX.tag:
        raise ValueError("only the negative-degree revlex order is implemented")
    entries, corner, _ = _as_entries(G)
    h = _nf_mora(f.terms, entries, corner, _Budget(_step_bound(step_bound)))
    return Polynomial._raw(f.vars, h)


def standard_basis(ideal, order: LocalOrder = NEG_DEG_REVLEX,
                   step_bound: int | None = None) -> StandardBasis:
    """Standard basis of ``ideal`` (an :class:`IdealBasis` or list of polynomials).

    Buchberger-style completion with Mora normal forms; S-pairs are processed
    largest least-common-multiple first (in the local order), FIFO on ties.
    """
    if not isinstance(ideal, IdealBasis):
        ideal = IdealBasis(tuple(g for g in ideal if not g.is_zero()))
    variables = ideal.vars
    n = len(variables)
    budget = _Budget(_step_bound(step_bound))

    S: list = []
    corner = None
    pairs: list = []
    counter = 0

    def heap_key(mon):
        return tuple(-k for k in _KEY(mon))

    def refresh_corner():
        nonlocal corner
        live = [e.lm for e in S if e is not None]
        k = _corner_of(live, n, corner)
        if k is None or (corner is not None and k >= corner):
            return
        corner = k
        for i, e in enumerate(S):
            if e is None:
                continue
            p = _truncate(e.poly, corner)
            S[i] = _Entry(p) if p else None

    def add(poly: dict):
        nonlocal counter
        e = _Entry(poly)
        idx = len(S)
        for j, o in enumerate(S):
            if o is None:
                continue
            lcm = tuple(max(a, b) for a, b in zip(e.lm, o.lm))
            if corner is not None and sum(lcm) >= corner:
                continue
            heapq.heappush(pairs, (heap_key(lcm), counter, j, idx))
            counter += 1
        S.append(e)
        refresh_corner()

    for g in ideal.generators:
        p = _truncate(dict(g.terms), corner)
        if p:
            add(p)

    while pairs:
        _, _, i, j = heapq.heappop(pairs)
        a, b = S[i], S[j]
        if a is None or b is None:
            continue
        lcm = tuple(max(x, y) for x, y in zip(a.lm, b.lm))
        if corner is not None and sum(lcm) >= corner:
            continue
        s: dict = {}
        _axpy(s, -1 / a.lc, tuple(x - y for x, y in zip(lcm, a.lm)), a.poly, corner)
        _axpy(s, 1 / b.lc, tuple(x - y for x, y in zip(lcm, b.lm)), b.poly, corner)
        if not s:
            continue
        h = _nf_mora(s, [e for e in S if e is not None], corner, budget)
        if h:
            add(h)

    live = _minimalize([e for e in S if e is not None])
    gens = tuple(Polynomial._raw(variables, e.poly) for e in live)
    leading = tuple(e.lm for e in live)
    if corner is None:
        corner = _corner_of(leading, n)
    return StandardBasis(variables, gens, leading, corner, order)


def standard_monomials(SB: StandardBasis):
    """Monomials outside the staircase, sorted by the local order descending.

    Returns None when there are infinitely many.
    """
    return _complement(SB.leading, len(SB.vars), SB.corner)


def colength(SB: StandardBasis):
    """``dim O/I`` as an int, or :data:`INFINITE`."""
    comp = standard_monomials(SB)
    return INFINITE if comp is None else len(comp)


def ideal_membership(f: Polynomial, SB: StandardBasis) -> bool:
    return mora_reduce(f, SB).is_zero()


def complete_normal_form(h: Polynomial, SB: StandardBasis,
                         step_bound: int | None = None) -> Polynomial:
    """Normal form of ``h`` modulo the ideal, supported on standard monomials.

    Needs a finite colength: all work is done modulo ``m^corner``, where the
    local order is a well-order, so plain division terminates and no unit
    factor appears.
    """
    if SB.corner is None:
        raise ValueError("not an isolated singularity (infinite colength)")
    entries = SB._entries()
    corner = SB.corner
    budget = _Budget(_step_bound(step_bound))
    work = _truncate(dict(h.terms), corner)
    out: dict = {}
    while work:
        lm = _lm(work)
        red = None
        for e in entries:
            if _divides(e.lm, lm):
                red = e
                break
        if red is None:
            out[lm] = work.pop(lm)
            continue
        shift = tuple(a - b for a, b in zip(lm, red.lm))
        _axpy(work, work[lm] / red.lc, shift, red.poly, corner)
        budget.spend()
    return Polynomial._raw(h.vars, out)

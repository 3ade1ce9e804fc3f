"""Pulled-back differential forms on an irreducible parametrized branch.

Forms ``u(t) dt`` are stored as coefficient vectors of ``u`` modulo
``t^(N+1)``.  The image of the module of holomorphic 1-forms is spanned by
``h(x(t), y(t)) x'(t) dt`` and ``h(x(t), y(t)) y'(t) dt`` for monomials ``h``.

Its order set is a module over the value semigroup of the branch, so once it
contains a run of consecutive orders as long as the smallest positive value,
every larger order is attained too.  That is how truncation levels are
certified; the same test is used for the pulled-back Jacobian ideal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import LowEchelon
from .polyring import Polynomial, jacobian_minors
from .puiseux import (
    PRECISION_CAP,
    InsufficientPrecision,
    PuiseuxBranch,
    _cut,
    _dense,
    _evaluate,
    _monomial_vectors,
    _stable_conductor,
    puiseux_branches,
    semigroup_data,
)
from .series import TruncatedSeries

__all__ = [
    "FormSpan",
    "pullback",
    "omega_span",
    "omega_codim",
    "jacobian_span",
    "conductor_generator",
    "PolReport",
    "pol_report",
    "pol_identity_check",
]


@dataclass(frozen=True)
class FormSpan:
    """A subspace of ``Q[t]/(t^(N+1))`` in echelon form (pivots at lowest order)."""

    N: int
    echelon: LowEchelon

    @property
    def rank(self) -> int:
        return self.echelon.rank

    @property
    def orders(self) -> list:
        return sorted(self.echelon.orders())

    @property
    def codim(self) -> int:
        """Codimension inside orders ``0..N``."""
        return self.N + 1 - self.rank

    def contains(self, s: TruncatedSeries) -> bool:
        return self.echelon.contains(_dense(s, self.N))

    def same_span(self, other: "FormSpan") -> bool:
        if self.N != other.N or self.rank != other.rank:
            return False
        return all(other.echelon.contains(row) for row in self.echelon.rows.values())

    def saturated_codim(self, s_min: int):
        """Number of missing orders, if the order set provably contains every order past N."""
        c = _stable_conductor(self.echelon.orders(), self.N, s_min)
        if c is None:
            return None
        present = self.echelon.orders()
        return sum(1 for k in range(c) if k not in present)


def pullback(b: PuiseuxBranch, h: Polynomial, N: int) -> TruncatedSeries:
    """``h(x(t), y(t))`` modulo ``t^(N+1)``."""
    xs, ys = b.series_pair(N)
    return _evaluate(h, xs, ys, N)


def omega_span(b: PuiseuxBranch, N: int) -> FormSpan:
    if N < 1:
        raise ValueError("truncation must be at least 1")
    xs, ys = b.series_pair(N + 1)
    dx, dy = xs.derivative(), ys.derivative()
    ech = LowEchelon(N + 1)
    for _, _, vec in _monomial_vectors(_cut(xs, N), _cut(ys, N), N):
        for d in (dx, dy):
            ech.add(_dense(vec.mul_trunc(d, N), N))
    return FormSpan(N, ech)


def _irreducible_branch(b):
    if b.degree != 1:
        raise ValueError("branch over a proper number field: germ is not irreducible")
    return b


def _adaptive(build, b: PuiseuxBranch, start: int):
    """Double ``N`` until the span's order set is saturated; return ``(span, codim)``."""
    s_min = min(o for o in (b.x.order(), b.y.order()) if o is not None)
    N = start
    while True:
        if N > PRECISION_CAP:
            raise InsufficientPrecision("form span did not saturate below the precision cap")
        span = build(N)
        codim = span.saturated_codim(s_min)
        if codim is not None:
            return span, codim
        N *= 2


def _start(b: PuiseuxBranch) -> int:
    c, _ = semigroup_data(b)
    return max(8, c + 2 * max(o for o in (b.x.order(), b.y.order()) if o is not None))


def omega_codim(b: PuiseuxBranch) -> int:
    """``dim`` of all forms on the branch modulo the pulled-back holomorphic forms."""
    _irreducible_branch(b)
    _, codim = _adaptive(lambda N: omega_span(b, N), b, _start(b))
    return codim


def jacobian_span(f: Polynomial, b: PuiseuxBranch, N: int) -> FormSpan:
    """Span of ``h * g`` pulled back, over monomials ``h`` and Jacobian minors ``g``."""
    xs, ys = b.series_pair(N)
    ech = LowEchelon(N + 1)
    minors = [_evaluate(g, xs, ys, N) for g in jacobian_minors([f]) if not g.is_zero()]
    for _, _, vec in _monomial_vectors(xs, ys, N):
        for m in minors:
            ech.add(_dense(vec.mul_trunc(m, N), N))
    return FormSpan(N, ech)


def conductor_generator(f: Polynomial, b: PuiseuxBranch, N: int) -> TruncatedSeries:
    """``f_y(x(t), y(t)) / x'(t)`` modulo ``t^(N+1)``."""
    e = b.x.order()
    if b.swapped or e is None:
        raise ValueError("expected a branch with x = a*t^e")
    M = N + e
    xs, ys = b.series_pair(M)
    fy = _evaluate(f.diff(f.vars.names[1]), xs, ys, M)
    dx = xs.derivative()
    # dx is the monomial e*a*t^(e-1), so the division is a shift
    lead = dx.coeffs[e - 1]
    shifted = fy.coeffs[e - 1:]
    if any(fy.coeffs[: e - 1]):
        raise ArithmeticError("f_y does not vanish to the order of x' along the branch")
    return TruncatedSeries([c / lead for c in shifted], N)


@dataclass(frozen=True)
class PolReport:
    """Outcome of comparing the pulled-back Jacobian ideal with the shifted form span.

    ``generator_form`` compares against ``g * V`` with ``g`` the conductor
    generator; ``shift_form`` against ``t^(2 delta) * V`` literally.
    """

    N: int
    delta: int
    generator_order: int
    generator_form: bool
    shift_form: bool
    jacobian_codim: int
    omega_codim: int

    @property
    def holds(self) -> bool:
        return self.generator_form and self.generator_order == 2 * self.delta


def _multiply_span(span: FormSpan, g: TruncatedSeries, N: int) -> FormSpan:
    ech = LowEchelon(N + 1)
    for row in span.echelon.rows.values():
        prod = TruncatedSeries(row, span.N).mul_trunc(g, N)
        ech.add(_dense(prod, N))
    return FormSpan(N, ech)


def pol_report(f: Polynomial, b: PuiseuxBranch | None = None) -> PolReport:
    if b is None:
        B = puiseux_branches(f)
        if B.r != 1:
            raise ValueError("the germ is reducible; this check needs a single branch")
        b = B[0]
    _irreducible_branch(b)
    c, gaps = semigroup_data(b)
    delta = len(gaps)
    span_j, codim_j = _adaptive(lambda N: jacobian_span(f, b, N), b, _start(b) + c)
    N = span_j.N
    V = omega_span(b, N)
    g = conductor_generator(f, b, N)
    g_order = g.order()
    by_generator = _multiply_span(V, g, N)
    by_shift = _multiply_span(V, TruncatedSeries.monomial(2 * delta, 1, N), N)
    _, om = _adaptive(lambda M: omega_span(b, M), b, N)
    return PolReport(
        N=N,
        delta=delta,
        generator_order=g_order,
        generator_form=by_generator.same_span(span_j),
        shift_form=by_shift.same_span(span_j),
        jacobian_codim=codim_j,
        omega_codim=om,
    )


def pol_identity_check(f: Polynomial, b: PuiseuxBranch | None = None) -> bool:
    """Whether the pulled-back Jacobian ideal equals ``g`` times the pulled-back forms.

    ``g`` is the conductor generator, whose order must be ``2 delta``.
    """
    return pol_report(f, b).holds

"""Finite-dimensional quotients ``O/I`` as explicit vector spaces.

The basis of a quotient is the set of standard monomials of a standard basis,
sorted by the local order descending.  Multiplication maps are matrices over
Q whose ranks are computed by fraction-free elimination.

:func:`jet_colength_oracle` is an independent check on the standard-basis
engine: it never computes a standard basis, only ranks of truncated
multiples of the generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from gmpy2 import mpq

from .linalg import bareiss_rank, sparse_rank
from .localstd import IdealBasis, StandardBasis, complete_normal_form, standard_monomials
from .polyring import NEG_DEG_REVLEX, Polynomial

__all__ = [
    "QuotientAlgebra",
    "quotient_algebra",
    "normal_form_vector",
    "multiplication_matrix",
    "multiplication_kernel_dim",
    "principal_ideal_dim",
    "jet_colength_oracle",
    "jet_colength",
]


@dataclass(frozen=True)
class QuotientAlgebra:
    """``O/I`` with the standard monomials of ``SB`` as basis."""

    SB: StandardBasis
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def index(self) -> dict:
        cached = self.__dict__.get("_index")
        if cached is None:
            cached = {m: k for k, m in enumerate(self.basis)}
            object.__setattr__(self, "_index", cached)
        return cached

    def basis_polynomials(self) -> list:
        return [Polynomial.monomial(self.SB.vars, m) for m in self.basis]


def quotient_algebra(SB: StandardBasis) -> QuotientAlgebra:
    basis = standard_monomials(SB)
    if basis is None:
        raise ValueError("not an isolated singularity (infinite colength)")
    return QuotientAlgebra(SB, tuple(basis))


def normal_form_vector(h: Polynomial, A: QuotientAlgebra) -> tuple:
    """Coordinates of ``h`` in the basis of ``A``."""
    if h.vars != A.SB.vars:
        raise ValueError("polynomial and algebra use different variables")
    nf = complete_normal_form(h, A.SB)
    vec = [mpq(0)] * A.dim
    idx = A.index
    for m, c in nf.terms.items():
        vec[idx[m]] = mpq(c)
    return tuple(vec)


def multiplication_matrix(f: Polynomial, A: QuotientAlgebra) -> list:
    """Rows are the coordinate vectors of ``f * b`` for the basis monomials ``b``."""
    return [normal_form_vector(f * b, A) for b in A.basis_polynomials()]


def principal_ideal_dim(f: Polynomial, A: QuotientAlgebra) -> int:
    """Dimension of the ideal generated by ``f`` in ``A`` (rank of multiplication by f)."""
    return bareiss_rank(multiplication_matrix(f, A))


def multiplication_kernel_dim(f: Polynomial, A: QuotientAlgebra) -> int:
    return A.dim - principal_ideal_dim(f, A)


# -- jet-space oracle -----------------------------------------------------------


def _monomials_below(n: int, k: int):
    """Exponent tuples in ``n`` variables of total degree < k."""
    for d in range(k):
        for combo in combinations_with_replacement(range(n), d):
            e = [0] * n
            for v in combo:
                e[v] += 1
            yield tuple(e)


def _jet_dim(gens, n: int, k: int) -> int:
    """``dim Q[x]/(I + m^k)`` by row reduction in the space of k-jets."""
    mons = list(_monomials_below(n, k))
    rows = []
    for g in gens:
        og = g.order()
        for a in mons:
            if sum(a) + og >= k:
                continue
            da = sum(a)
            row = {}
            for m, c in g.terms.items():
                if sum(m) + da < k:
                    row[tuple(x + y for x, y in zip(m, a))] = c
            if row:
                rows.append(row)
    return len(mons) - sparse_rank(rows, key=NEG_DEG_REVLEX.key)


def jet_colength_oracle(I, degree_bound: int):
    """``dim O/I`` from jets of order ``degree_bound - 1`` and ``degree_bound``.

    Returns the common value when both truncations agree (then ``m^(k-1)``
    lies in ``I`` by Nakayama's lemma and the value is exact), else None.
    """
    if degree_bound < 1:
        raise ValueError("degree bound must be at least 1")
    gens = I.generators if isinstance(I, IdealBasis) else tuple(I)
    n = len(gens[0].vars)
    lo = _jet_dim(gens, n, degree_bound - 1) if degree_bound > 1 else 0
    hi = _jet_dim(gens, n, degree_bound)
    return hi if lo == hi and degree_bound > 1 else None


def jet_colength(I, max_degree: int = 64):
    """Search degree bounds upward until :func:`jet_colength_oracle` stabilizes."""
    gens = I.generators if isinstance(I, IdealBasis) else tuple(I)
    n = len(gens[0].vars)
    prev = _jet_dim(gens, n, 1)
    for k in range(2, max_degree + 1):
        cur = _jet_dim(gens, n, k)
        if cur == prev:
            return cur
        prev = cur
    return None

"""Exact linear algebra over Q and over number fields."""

from __future__ import annotations

from math import lcm
from typing import Iterable, Sequence

from gmpy2 import mpq, mpz

__all__ = ["LowEchelon", "bareiss_rank", "sparse_rank"]


class LowEchelon:
    """Incremental echelon form with pivots at the lowest nonzero index.

    Vectors are dense lists of field elements (``mpq`` or algebraic numbers).
    For coefficient vectors of truncated series the pivot set is exactly the
    set of orders attained by the span.
    """

    def __init__(self, size: int):
        self.size = size
        self.rows: dict = {}

    def reduce(self, vec: Sequence) -> list:
        vec = list(vec)
        for k in range(self.size):
            c = vec[k]
            if not c:
                continue
            row = self.rows.get(k)
            if row is None:
                continue
            for m in range(k, self.size):
                if row[m]:
                    vec[m] = vec[m] - c * row[m]
        return vec

    def add(self, vec: Sequence) -> int | None:
        """Insert ``vec``; returns the new pivot, or None if it was dependent."""
        vec = list(vec)
        for k in range(self.size):
            c = vec[k]
            if not c:
                continue
            row = self.rows.get(k)
            if row is None:
                inv = 1 / c
                self.rows[k] = [0] * k + [v * inv for v in vec[k:]]
                return k
            for m in range(k, self.size):
                if row[m]:
                    vec[m] = vec[m] - c * row[m]
        return None

    def contains(self, vec: Sequence) -> bool:
        return not any(self.reduce(vec))

    @property
    def rank(self) -> int:
        return len(self.rows)

    def orders(self) -> set:
        return set(self.rows)


def _integer_rows(rows: Iterable[Sequence]) -> list:
    out = []
    for r in rows:
        r = [mpq(v) for v in r]
        den = 1
        for v in r:
            den = lcm(den, int(v.denominator))
        out.append([mpz(v * den) for v in r])
    return out


def bareiss_rank(rows: Iterable[Sequence]) -> int:
    """Rank of a rational matrix by fraction-free (Bareiss) elimination."""
    M = _integer_rows(rows)
    if not M:
        return 0
    nrows, ncols = len(M), len(M[0])
    rank = 0
    prev = mpz(1)
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if M[i][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][col]
        for i in range(rank + 1, nrows):
            a = M[i][col]
            Ri, Rr = M[i], M[rank]
            for j in range(col + 1, ncols):
                Ri[j] = (p * Ri[j] - a * Rr[j]) // prev
            Ri[col] = mpz(0)
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def sparse_rank(rows: Iterable[dict], key=None) -> int:
    """Rank of sparse rational rows (dicts column -> value) by Gaussian elimination.

    Pivots are taken at the largest column under ``key``.
    """
    pivots: dict = {}
    for row in rows:
        r = {c: mpq(v) for c, v in row.items() if v}
        while r:
            col = max(r, key=key) if key else max(r)
            prow = pivots.get(col)
            if prow is None:
                inv = 1 / r[col]
                pivots[col] = {c: v * inv for c, v in r.items()}
                break
            a = r[col]
            for c, v in prow.items():
                w = r.get(c, 0) - a * v
                if w:
                    r[c] = w
                else:
                    r.pop(c, None)
    return len(pivots)

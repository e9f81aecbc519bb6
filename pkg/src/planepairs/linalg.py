"""Exact sparse linear algebra over Q.

Vectors are dicts from sortable column labels to nonzero rationals.  The
echelon form keeps each pivot row normalised with its smallest column as pivot,
so eliminating pivots in increasing column order always terminates.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .poly import Q, to_q


class Echelon:
    """Incrementally grown row-echelon basis of a subspace."""

    def __init__(self):
        self.pivots: dict = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, v: Mapping) -> dict:
        v = {k: to_q(c) for k, c in v.items() if c}
        piv = self.pivots
        while True:
            hits = [k for k in v if k in piv]
            if not hits:
                return v
            k = min(hits)
            c = v[k]
            for kk, cc in piv[k].items():
                w = v.get(kk, 0) - c * cc
                if w:
                    v[kk] = w
                else:
                    v.pop(kk, None)

    def add(self, v: Mapping) -> bool:
        """Insert v; returns True when it was independent of the current span."""
        r = self.reduce(v)
        if not r:
            return False
        k = min(r)
        inv = 1 / r[k]
        self.pivots[k] = {kk: cc * inv for kk, cc in r.items()}
        return True

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)


def rank(rows: Iterable[Mapping]) -> int:
    e = Echelon()
    for r in rows:
        e.add(r)
    return len(e)


def solve(A: Sequence[Sequence], b: Sequence) -> list | None:
    """Unique solution of a square or overdetermined dense system A x = b, else None.

    Returns None when the system is inconsistent; raises if the solution is not unique.
    """
    m = len(A)
    ncol = len(A[0]) if m else 0
    M = [[to_q(x) for x in row] + [to_q(bi)] for row, bi in zip(A, b)]
    r = 0
    where = [-1] * ncol
    for c in range(ncol):
        p = next((i for i in range(r, m) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        where[c] = r
        r += 1
    if any(all(not x for x in row[:-1]) and row[-1] for row in M):
        return None
    if -1 in where:
        raise ValueError("solution is not unique (singular system)")
    return [M[where[c]][-1] for c in range(ncol)]


def dense_rank(A: Sequence[Sequence]) -> int:
    return rank({j: x for j, x in enumerate(row) if x} for row in A)


def det(A: Sequence[Sequence]):
    n = len(A)
    M = [[to_q(x) for x in row] for row in A]
    d = Q(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return Q(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d *= M[c][c]
        inv = 1 / M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] * inv
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return d

"""Syzygies, minimal free resolutions and graded Betti numbers.

Resolutions are built with Schreyer's construction: the reductions of the
S-pairs of a Groebner basis form a Groebner basis of its syzygy module for the
induced order, so the construction can be iterated without ever running a
module Buchberger loop.  At each level only the S-pairs whose leading terms are
minimal generators of the initial syzygy module are kept, and the basis is
sorted so that the iteration stops after at most n+1 steps.  The resulting
(non-minimal) resolution is then pruned through its unit entries.
"""
from __future__ import annotations

import math
from typing import Sequence

from .borel import is_borel_fixed
from .groebner import (GREVLEX, Ideal, Polynomial, _add, _divides, _lcm, _sub, divide,
                       tracked_groebner)
from .poly import PolyRing, Q

__all__ = ["GradedMap", "BettiTable", "syzygies", "minimal_free_resolution", "regularity",
           "projective_dimension", "depth", "ek_betti", "module_contains", "Resolution"]


class GradedMap:
    """A matrix of homogeneous polynomials between graded free modules.

    ``entries[(r, c)]`` is the image of source basis vector c on target basis
    vector r; absent keys are zero.
    """

    def __init__(self, ring: PolyRing, target_shifts: Sequence[int], source_shifts: Sequence[int],
                 entries: dict | None = None):
        self.ring = ring
        self.target_shifts = list(target_shifts)
        self.source_shifts = list(source_shifts)
        self.entries = {k: v for k, v in (entries or {}).items() if v}

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.target_shifts), len(self.source_shifts)

    def __getitem__(self, rc) -> Polynomial:
        return self.entries.get(rc, self.ring.zero())

    def column(self, c: int) -> list[Polynomial]:
        return [self[(r, c)] for r in range(len(self.target_shifts))]

    def columns(self) -> list[list[Polynomial]]:
        return [self.column(c) for c in range(len(self.source_shifts))]

    def is_homogeneous(self) -> bool:
        for (r, c), p in self.entries.items():
            if not p.is_homogeneous() or p.degree() != self.source_shifts[c] - self.target_shifts[r]:
                return False
        return True

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self ∘ other."""
        if len(other.target_shifts) != len(self.source_shifts):
            raise ValueError("shape mismatch")
        out: dict = {}
        by_row: dict = {}
        for (r, c), p in self.entries.items():
            by_row.setdefault(c, []).append((r, p))
        for (k, c), q in other.entries.items():
            for r, p in by_row.get(k, ()):
                v = out.get((r, c))
                out[(r, c)] = p * q if v is None else v + p * q
        return GradedMap(self.ring, self.target_shifts, other.source_shifts, out)

    def is_zero(self) -> bool:
        return not self.entries

    def to_strings(self) -> list[list[str]]:
        rows, cols = self.shape
        return [[str(self[(r, c)]) for c in range(cols)] for r in range(rows)]


class BettiTable:
    """Graded Betti numbers beta_{i,j} of a minimal resolution of S/I."""

    def __init__(self, data: dict):
        self.data = {k: v for k, v in data.items() if v}

    def __getitem__(self, ij) -> int:
        return self.data.get(ij, 0)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.data == other.data

    def totals(self) -> tuple[int, ...]:
        if not self.data:
            return ()
        top = max(i for i, _ in self.data)
        return tuple(sum(v for (i, _), v in self.data.items() if i == k) for k in range(top + 1))

    def is_linear(self) -> bool:
        """All syzygies linear: beta_{i,j} = 0 unless j = i+1 (for i >= 1)."""
        return all(j == i + 1 for (i, j) in self.data if i >= 1)

    def text(self) -> str:
        """Conventional diagram: row r lists beta_{i,i+r}."""
        if not self.data:
            return "(empty)"
        top = max(i for i, _ in self.data)
        rows = sorted({j - i for i, j in self.data})
        width = max(len(str(v)) for v in self.data.values()) + 1
        lines = ["     " + "".join(str(i).rjust(width + 1) for i in range(top + 1))]
        for r in range(min(rows), max(rows) + 1):
            cells = "".join((str(self[(i, i + r)]) if self[(i, i + r)] else "-").rjust(width + 1)
                            for i in range(top + 1))
            lines.append(f"{r:>3}: " + cells)
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"betti": [[i, j, v] for (i, j), v in sorted(self.data.items())],
                "totals": list(self.totals()), "diagram": self.text()}

    def __repr__(self):
        return f"BettiTable({sorted(self.data.items())})"


# ---------------------------------------------------------------- Schreyer machinery

class _ModKey:
    """Memoised order key for terms (pos, exp) of a free module."""

    def __init__(self, fn):
        self.fn = fn
        self.cache: dict = {}

    def __call__(self, t):
        k = self.cache.get(t)
        if k is None:
            k = self.fn(t)
            self.cache[t] = k
        return k


def _level0_key():
    return _ModKey(lambda t: (GREVLEX.key(t[1]), -t[0]))


def _schreyer_step(elems: list[dict], key: _ModKey):
    """Sort a module Groebner basis and compute the Groebner basis of its syzygies.

    Returns (sorted elements, their leading terms, syzygies, next key).
    """
    lts = [max(e, key=key) for e in elems]
    idx = sorted(range(len(elems)), key=lambda i: (lts[i][0], tuple(-a for a in lts[i][1]), i))
    elems = [elems[i] for i in idx]
    lts = [lts[i] for i in idx]
    lcs = [e[t] for e, t in zip(elems, lts)]

    by_pos: dict = {}
    for i, (pos, exp) in enumerate(lts):
        by_pos.setdefault(pos, []).append(i)

    def reduce_to_zero(p: dict, rec: dict):
        while p:
            lt = max(p, key=key)
            pos, exp = lt
            k = next((k for k in by_pos.get(pos, ()) if _divides(lts[k][1], exp)), None)
            if k is None:
                raise RuntimeError("S-vector does not reduce to zero: not a Groebner basis")
            c = p[lt] / lcs[k]
            q = _sub(exp, lts[k][1])
            for (ps, e2), v in elems[k].items():
                m = (ps, _add(e2, q))
                w = p.get(m, 0) - c * v
                if w:
                    p[m] = w
                else:
                    p.pop(m, None)
            t = (k, q)
            w = rec.get(t, 0) - c
            if w:
                rec[t] = w
            else:
                rec.pop(t, None)

    syz: list[dict] = []
    for i in range(len(elems)):
        pos, ei = lts[i]
        cands = []
        for j in by_pos[pos]:
            if j <= i:
                continue
            cands.append((_sub(_lcm(ei, lts[j][1]), ei), j))
        cands.sort(key=lambda t: (sum(t[0]), t[1]))
        kept: list = []
        for m, j in cands:
            if any(_divides(m2, m) for m2, _ in kept):
                continue
            kept.append((m, j))
        for m_ij, j in kept:
            m_ji = _sub(_add(ei, m_ij), lts[j][1])
            s: dict = {}
            for (ps, e2), v in elems[i].items():
                s[(ps, _add(e2, m_ij))] = lcs[j] * v
            for (ps, e2), v in elems[j].items():
                t = (ps, _add(e2, m_ji))
                w = s.get(t, 0) - lcs[i] * v
                if w:
                    s[t] = w
                else:
                    s.pop(t, None)
            rec = {(i, m_ij): lcs[j], (j, m_ji): -lcs[i]}
            reduce_to_zero(s, rec)
            syz.append(rec)

    lt_list = list(lts)

    def next_key(t, key=key, lt_list=lt_list):
        i, e = t
        p, le = lt_list[i]
        return (key((p, _add(le, e))), -i)

    return elems, lts, syz, _ModKey(next_key)


def _vec_to_columns(elems: list[dict], ring: PolyRing) -> dict:
    out: dict = {}
    for c, e in enumerate(elems):
        for (pos, exp), v in e.items():
            out.setdefault((pos, c), {})[exp] = v
    return {k: Polynomial._raw(ring, v) for k, v in out.items()}


class Resolution:
    """A graded free resolution F_0 <- F_1 <- ... of S/I."""

    def __init__(self, ring: PolyRing, maps: list[GradedMap]):
        self.ring = ring
        self.maps = maps

    @property
    def length(self) -> int:
        return len(self.maps)

    def ranks(self) -> tuple[int, ...]:
        if not self.maps:
            return (1,)
        return (len(self.maps[0].target_shifts),) + tuple(len(m.source_shifts) for m in self.maps)

    def betti(self) -> BettiTable:
        data: dict = {(0, 0): 1}
        for i, m in enumerate(self.maps, start=1):
            for s in m.source_shifts:
                data[(i, s)] = data.get((i, s), 0) + 1
        return BettiTable(data)

    def is_complex(self) -> bool:
        return all(self.maps[k].compose(self.maps[k + 1]).is_zero()
                   for k in range(len(self.maps) - 1))


def _schreyer_resolution(I: Ideal) -> Resolution:
    ring = I.ring
    gb = I.groebner(GREVLEX)
    elems = [{(0, e): c for e, c in g.terms.items()} for g in gb.elements]
    key = _level0_key()
    prev_shifts = [0]
    maps: list[GradedMap] = []
    while elems:
        elems, lts, syz, key = _schreyer_step(elems, key)
        shifts = [prev_shifts[p] + sum(e) for p, e in lts]
        maps.append(GradedMap(ring, prev_shifts, shifts, _vec_to_columns(elems, ring)))
        prev_shifts = shifts
        elems = syz
    return Resolution(ring, maps)


def _minimize(res: Resolution) -> Resolution:
    """Split off trivial summands through unit entries (lowest column, then row, first)."""
    ring = res.ring
    L = len(res.maps)
    ents = [dict(m.entries) for m in res.maps]
    alive_src = [list(range(len(m.source_shifts))) for m in res.maps]
    alive_tgt = [list(range(len(m.target_shifts))) for m in res.maps]
    for k in range(L):
        while True:
            pivot = None
            for (r, c), p in sorted(ents[k].items(), key=lambda t: (t[0][1], t[0][0])):
                if p.is_constant():
                    pivot = (r, c)
                    break
            if pivot is None:
                break
            r, c = pivot
            a = ents[k][pivot]
            inv = 1 / next(iter(a.terms.values()))
            col_c = {rr: p for (rr, cc), p in ents[k].items() if cc == c}
            others = [(cc, p) for (rr, cc), p in ents[k].items() if rr == r and cc != c]
            for cc, arj in others:
                f = arj * inv
                for rr, p in col_c.items():
                    v = ents[k].get((rr, cc))
                    nv = (v - f * p) if v is not None else -(f * p)
                    if nv:
                        ents[k][(rr, cc)] = nv
                    else:
                        ents[k].pop((rr, cc), None)
            ents[k] = {(rr, cc): p for (rr, cc), p in ents[k].items() if rr != r and cc != c}
            alive_src[k].remove(c)
            alive_tgt[k].remove(r)
            if k + 1 < L:
                ents[k + 1] = {(rr, cc): p for (rr, cc), p in ents[k + 1].items() if rr != c}
                alive_tgt[k + 1].remove(c)
            if k > 0:
                ents[k - 1] = {(rr, cc): p for (rr, cc), p in ents[k - 1].items() if cc != r}
                alive_src[k - 1].remove(r)
    maps = []
    for k, m in enumerate(res.maps):
        rmap = {r: i for i, r in enumerate(alive_tgt[k])}
        cmap = {c: i for i, c in enumerate(alive_src[k])}
        e = {(rmap[r], cmap[c]): p for (r, c), p in ents[k].items()}
        maps.append(GradedMap(ring, [m.target_shifts[r] for r in alive_tgt[k]],
                              [m.source_shifts[c] for c in alive_src[k]], e))
    while maps and not maps[-1].source_shifts:
        maps.pop()
    return Resolution(ring, maps)


def minimal_free_resolution(I: Ideal) -> tuple[Resolution, BettiTable]:
    """Minimal graded free resolution of S/I and its Betti table."""
    if not I.homogeneous:
        raise ValueError("resolutions need a homogeneous ideal")
    if I.is_unit():
        return Resolution(I.ring, []), BettiTable({})
    res = _minimize(_schreyer_resolution(I))
    return res, res.betti()


def syzygies(gens: Sequence[Polynomial]) -> GradedMap:
    """Generators of the first syzygy module of ``gens``, as columns.

    The syzygies of a Groebner basis (from its S-pair reductions) are pulled
    back through the recorded representations of the basis elements, and the
    division of each input by the basis contributes one more column.
    """
    gens = list(gens)
    ring = gens[0].ring
    m = len(gens)
    shifts = [g.degree() for g in gens]
    nz = [i for i, g in enumerate(gens) if g]
    if not nz:
        return GradedMap(ring, shifts, [], {})
    gb, reps = tracked_groebner([gens[i] for i in nz], GREVLEX)
    elems = [{(0, e): c for e, c in g.terms.items()} for g in gb.elements]
    # no sorting here: keep basis order aligned with ``reps``
    _, lts, syz, _ = _schreyer_step_unsorted(elems)
    cols: list[dict] = []
    for s in syz:
        col: dict = {}
        for (a, exp), c in s.items():
            mono = Polynomial._raw(ring, {exp: c})
            for k, r in enumerate(reps[a]):
                if r:
                    col[nz[k]] = col.get(nz[k], ring.zero()) + mono * r
        cols.append(col)
    for k, i in enumerate(nz):
        qs, rem = divide(gens[i], gb)
        if rem:
            raise RuntimeError("generator not reduced to zero by its own basis")
        col = {i: ring.one()}
        for a, q in enumerate(qs):
            if q:
                for kk, r in enumerate(reps[a]):
                    if r:
                        col[nz[kk]] = col.get(nz[kk], ring.zero()) - q * r
        cols.append(col)
    for i in range(m):
        if not gens[i]:
            cols.append({i: ring.one()})
    out: dict = {}
    src: list[int] = []
    seen = set()
    for col in cols:
        col = {r: p for r, p in col.items() if p}
        if not col:
            continue
        sig = tuple(sorted((r, frozenset(p.terms.items())) for r, p in col.items()))
        if sig in seen:
            continue
        seen.add(sig)
        c = len(src)
        r0, p0 = next(iter(col.items()))
        src.append(p0.degree() + shifts[r0])
        for r, p in col.items():
            out[(r, c)] = p
    return GradedMap(ring, shifts, src, out)


def _schreyer_step_unsorted(elems: list[dict]):
    """Syzygies of a Groebner basis indexed by the original (unsorted) positions."""
    key = _level0_key()
    lts = [max(e, key=key) for e in elems]
    order = sorted(range(len(elems)), key=lambda i: (lts[i][0], tuple(-a for a in lts[i][1]), i))
    _, _, syz, nk = _schreyer_step(elems, key)
    syz = [{(order[i], e): c for (i, e), c in s.items()} for s in syz]
    return elems, lts, syz, nk


def module_contains(columns: Sequence[Sequence[Polynomial]], v: Sequence[Polynomial],
                    row_shifts: Sequence[int]) -> bool:
    """Whether the homogeneous vector v lies in the graded module spanned by ``columns``.

    Works in the single degree of v: v must be a k-linear combination of
    monomial multiples of the columns that land in that degree.
    """
    from .groebner import _monomials_of_degree
    from .linalg import Echelon

    def vdeg(col):
        for r, p in enumerate(col):
            if p:
                return p.degree() + row_shifts[r]
        return None

    D = vdeg(v)
    if D is None:
        return True
    ring = next(p for p in v if p).ring
    ech = Echelon()
    for col in columns:
        Dc = vdeg(col)
        if Dc is None or Dc > D:
            continue
        for mono in _monomials_of_degree(ring.nvars, D - Dc):
            vec = {}
            for r, p in enumerate(col):
                for e, c in p.terms.items():
                    vec[(r, _add(e, mono))] = c
            ech.add(vec)
    target = {(r, e): c for r, p in enumerate(v) for e, c in p.terms.items()}
    return ech.contains(target)


# ---------------------------------------------------------------- invariants

def regularity(B: BettiTable) -> int:
    """Castelnuovo-Mumford regularity of the ideal I, i.e. reg(S/I) + 1."""
    pos = [(i, j) for (i, j) in B.data if i >= 1]
    if not pos:
        raise ValueError("empty Betti table")
    return max(j - i for i, j in pos) + 1


def quotient_regularity(B: BettiTable) -> int:
    if not B.data:
        raise ValueError("empty Betti table")
    return max(j - i for i, j in B.data)


def projective_dimension(B: BettiTable) -> int:
    if not B.data:
        raise ValueError("empty Betti table")
    return max(i for i, _ in B.data)


def depth(B: BettiTable, n: int) -> int:
    """depth of S/I in n+1 variables, by Auslander-Buchsbaum."""
    return n + 1 - projective_dimension(B)


def ek_betti(I: Ideal) -> tuple[int, ...]:
    """Eliahou-Kervaire total Betti numbers (b_1, b_2, ...) of a Borel-fixed ideal."""
    if not is_borel_fixed(I):
        raise ValueError("ideal is not Borel-fixed")
    gens = I.monomial_generators()
    maxes = [max(i for i, a in enumerate(g) if a) for g in gens if any(g)]
    if not maxes:
        return ()
    top = max(maxes) + 1
    return tuple(sum(math.comb(mx, i - 1) for mx in maxes) for i in range(1, top + 1))

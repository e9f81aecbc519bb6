"""Buchberger's algorithm and the ideal operations built on it.

The engine works on raw ``{exponent: coefficient}`` dicts for speed and wraps
results back into ``Polynomial`` objects at the boundary.  Pairs are pruned
with the Gebauer-Moeller update, which implements both Buchberger criteria
(coprime leading monomials and the chain criterion), and selected by the
normal strategy: smallest degree of the lcm first.
"""
from __future__ import annotations

import heapq
from typing import Iterable, Sequence

from .poly import (GREVLEX, MonomialOrder, PolyRing, Polynomial, Q, elimination_order,
                   standard_ring, to_q)

__all__ = [
    "Ideal", "GroebnerBasis", "buchberger", "normal_form", "ideal_equal", "intersect",
    "colon", "quotient", "saturate", "is_saturated", "eliminate", "divide",
    "minimalize_monomials", "monomial_ideal", "irrelevant_ideal",
]


# ---------------------------------------------------------------- monomial helpers

def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def minimalize_monomials(monos: Iterable[tuple]) -> list[tuple]:
    """Minimal generators of the monomial ideal spanned by ``monos``, sorted."""
    ms = sorted(set(monos), key=lambda e: (sum(e), e))
    out: list[tuple] = []
    for m in ms:
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


# ---------------------------------------------------------------- raw dict arithmetic

def _scale_shift(p: dict, c, shift: tuple) -> dict:
    return {_add(e, shift): c * v for e, v in p.items()}


def _axpy(acc: dict, p: dict, c, shift: tuple | None = None) -> None:
    """acc += c * x^shift * p, in place."""
    for e, v in p.items():
        if shift is not None:
            e = _add(e, shift)
        w = acc.get(e, 0) + c * v
        if w:
            acc[e] = w
        else:
            acc.pop(e, None)


class _KeyCache:
    def __init__(self, order: MonomialOrder):
        self.order = order
        self.cache: dict = {}

    def __call__(self, e):
        k = self.cache.get(e)
        if k is None:
            k = self.order.key(e)
            self.cache[e] = k
        return k

    def neg(self, e):
        k = self(e)
        return tuple(-x for x in k)


def _lead(p: dict, key) -> tuple:
    return max(p, key=key)


class _Reducer:
    """Division of raw polynomials by a list of monic basis polynomials."""

    def __init__(self, key: _KeyCache):
        self.key = key
        self.lms: list[tuple] = []
        self.polys: list[dict] = []

    def add(self, lm: tuple, poly: dict) -> None:
        self.lms.append(lm)
        self.polys.append(poly)

    def find(self, e: tuple, skip: int = -1) -> int:
        for i, lm in enumerate(self.lms):
            if i != skip and lm is not None and _divides(lm, e):
                return i
        return -1

    def reduce(self, p: dict, full: bool = True, record: list | None = None,
               skip: int = -1) -> dict:
        """Remainder of p; ``record`` collects (basis index, coeff, shift) steps."""
        p = dict(p)
        neg = self.key.neg
        heap = [(neg(e), e) for e in p]
        heapq.heapify(heap)
        rem: dict = {}
        while heap:
            _, e = heapq.heappop(heap)
            c = p.get(e)
            if c is None:
                continue
            i = self.find(e, skip)
            if i < 0:
                rem[e] = c
                del p[e]
                if not full:
                    rem.update(p)
                    return rem
                continue
            lm, g = self.lms[i], self.polys[i]
            q = _sub(e, lm)
            del p[e]
            for ge, gc in g.items():
                if ge == lm:
                    continue
                m = _add(ge, q)
                v = p.get(m)
                if v is None:
                    p[m] = -c * gc
                    heapq.heappush(heap, (neg(m), m))
                else:
                    v = v - c * gc
                    if v:
                        p[m] = v
                    else:
                        del p[m]
            if record is not None:
                record.append((i, c, q))
        return rem


def _combine_rep(reps: list[list[dict]], steps, base: list[dict]) -> list[dict]:
    out = [dict(r) for r in base]
    for i, c, q in steps:
        for k, r in enumerate(reps[i]):
            if r:
                _axpy(out[k], r, -c, q)
    return out


def _gb_engine(inputs: list[dict], order: MonomialOrder, track: bool = False):
    """Core Buchberger loop.

    Returns (lms, polys, reps) for the reduced basis; reps[i][k] is the
    coefficient of input k in basis element i when ``track`` is set.
    """
    key = _KeyCache(order)
    m = len(inputs)
    polys: list[dict] = []
    lms: list[tuple] = []
    reps: list[list[dict]] = []
    active: list[int] = []
    pairs: list[tuple[int, int]] = []
    red = _Reducer(key)

    def sync_reducer():
        red.lms = [lms[i] for i in active]
        red.polys = [polys[i] for i in active]

    def update(h: int):
        nonlocal pairs, active
        lh = lms[h]
        cand = list(active)
        lcm_h = {g: _lcm(lh, lms[g]) for g in cand}
        keep: list[int] = []
        while cand:
            g1 = cand.pop(0)
            if _coprime(lh, lms[g1]):
                keep.append(g1)
                continue
            l1 = lcm_h[g1]
            if any(_divides(lcm_h[g2], l1) for g2 in cand) or \
                    any(_divides(lcm_h[g2], l1) for g2 in keep):
                continue
            keep.append(g1)
        new_pairs = [(g, h) for g in keep if not _coprime(lh, lms[g])]
        kept = []
        for g1, g2 in pairs:
            l12 = _lcm(lms[g1], lms[g2])
            if _divides(lh, l12) and _lcm(lms[g1], lh) != l12 and _lcm(lh, lms[g2]) != l12:
                continue
            kept.append((g1, g2))
        pairs = kept + new_pairs
        active = [g for g in active if not _divides(lh, lms[g])] + [h]
        sync_reducer()

    def push(p: dict, rep: list[dict] | None):
        lm = _lead(p, key)
        c = p[lm]
        inv = 1 / c
        polys.append({e: v * inv for e, v in p.items()})
        lms.append(lm)
        if track:
            reps.append([{e: v * inv for e, v in r.items()} for r in rep])
        update(len(polys) - 1)

    for k, f in enumerate(inputs):
        if not f:
            continue
        steps: list | None = [] if track else None
        r = red.reduce(f, full=True, record=steps)
        if not r:
            continue
        rep = None
        if track:
            base = [dict() for _ in range(m)]
            base[k] = {(0,) * len(next(iter(f))): Q(1)}
            rep = _combine_rep([reps[i] for i in active], steps, base)
        push(r, rep)

    while pairs:
        best = min(range(len(pairs)), key=lambda t: _pair_key(pairs[t], lms, key))
        i, j = pairs.pop(best)
        l = _lcm(lms[i], lms[j])
        si, sj = _sub(l, lms[i]), _sub(l, lms[j])
        s = _scale_shift(polys[i], Q(1), si)
        _axpy(s, polys[j], Q(-1), sj)
        if not s:
            continue
        steps = [] if track else None
        r = red.reduce(s, full=True, record=steps)
        if not r:
            continue
        rep = None
        if track:
            base = [dict() for _ in range(m)]
            for k2 in range(m):
                if reps[i][k2]:
                    _axpy(base[k2], reps[i][k2], Q(1), si)
                if reps[j][k2]:
                    _axpy(base[k2], reps[j][k2], Q(-1), sj)
            rep = _combine_rep([reps[a] for a in active], steps, base)
        push(r, rep)

    # interreduce the minimal basis into the reduced one
    act = sorted(active, key=lambda g: key(lms[g]))
    out_lms, out_polys, out_reps = [], [], []
    red = _Reducer(key)
    for g in act:
        red.add(lms[g], polys[g])
    for idx, g in enumerate(act):
        tail = {e: v for e, v in polys[g].items() if e != lms[g]}
        steps = [] if track else None
        r = red.reduce(tail, full=True, record=steps, skip=idx)
        r[lms[g]] = Q(1)
        out_lms.append(lms[g])
        out_polys.append(r)
        if track:
            base = [dict(x) for x in reps[g]]
            out_reps.append(_combine_rep([reps[a] for a in act], steps, base))
    # reductions used the un-reduced tails of earlier elements; reps stay valid
    # because each reduction step subtracts a multiple of an element of the ideal
    order_idx = sorted(range(len(out_lms)), key=lambda t: key(out_lms[t]), reverse=True)
    return ([out_lms[t] for t in order_idx], [out_polys[t] for t in order_idx],
            [out_reps[t] for t in order_idx] if track else None)


def _pair_key(pair, lms, key):
    l = _lcm(lms[pair[0]], lms[pair[1]])
    return (sum(l), key(l), pair)


# ---------------------------------------------------------------- public classes

class GroebnerBasis:
    """Reduced Groebner basis of an ideal with respect to one order."""

    def __init__(self, ring: PolyRing, order: MonomialOrder, lms: list[tuple],
                 polys: list[dict], reduced: bool = True):
        self.ring = ring
        self.order = order
        self.leading_monomials = list(lms)
        self._polys = polys
        self.reduced = reduced
        self.elements = [Polynomial._raw(ring, dict(p)) for p in polys]
        self._key = _KeyCache(order)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def _reducer(self) -> _Reducer:
        r = _Reducer(self._key)
        for lm, p in zip(self.leading_monomials, self._polys):
            r.add(lm, p)
        return r

    def normal_form(self, p: Polynomial) -> Polynomial:
        if p.ring != self.ring:
            raise ValueError("ring mismatch")
        return Polynomial._raw(self.ring, self._reducer().reduce(p.terms))

    def reduce_raw(self, terms: dict) -> dict:
        return self._reducer().reduce(terms)

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()

    def is_unit(self) -> bool:
        return any(not any(lm) for lm in self.leading_monomials)

    def initial_ideal(self) -> "Ideal":
        return monomial_ideal(self.ring, self.leading_monomials)

    def standard_monomials(self, d: int) -> list[tuple]:
        """Degree-d monomials not divisible by any leading monomial (grevlex-sorted)."""
        out = [e for e in _monomials_of_degree(self.ring.nvars, d)
               if not any(_divides(lm, e) for lm in self.leading_monomials)]
        return sorted(out, key=GREVLEX.key, reverse=True)

    def __repr__(self):
        return f"GroebnerBasis({[str(g) for g in self.elements]}, {self.order.describe()})"


def _monomials_of_degree(nvars: int, d: int):
    if nvars == 0:
        if d == 0:
            yield ()
        return
    if nvars == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, d - a):
            yield (a,) + rest


class Ideal:
    """An ideal given by generators, with reduced Groebner bases cached per order."""

    def __init__(self, gens: Iterable[Polynomial | str], ring: PolyRing | None = None,
                 homogeneous: bool = True):
        gens = list(gens)
        if ring is None:
            for g in gens:
                if isinstance(g, Polynomial):
                    ring = g.ring
                    break
        if ring is None:
            raise ValueError("ring required for an ideal given by strings or no generators")
        polys = []
        for g in gens:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                raise ValueError("ring mismatch among generators")
            if g:
                polys.append(g)
        if homogeneous:
            for g in polys:
                if not g.is_homogeneous():
                    raise ValueError(f"generator {g} is not homogeneous")
        self.ring = ring
        self.generators = tuple(polys)
        self.homogeneous = homogeneous
        self._gb: dict = {}

    @property
    def n(self) -> int:
        return self.ring.nvars - 1

    def groebner(self, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
        gb = self._gb.get(order)
        if gb is None:
            gb = buchberger(self, order)
            self._gb[order] = gb
        return gb

    def normal_form(self, p: Polynomial) -> Polynomial:
        return self.groebner().normal_form(p)

    def contains(self, p: Polynomial | str) -> bool:
        if isinstance(p, str):
            p = self.ring.parse(p)
        return self.groebner().contains(p)

    __contains__ = contains

    def is_subset(self, other: "Ideal") -> bool:
        gb = other.groebner()
        return all(gb.contains(g) for g in self.generators)

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_zero(self) -> bool:
        return not self.generators

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    def monomial_generators(self) -> list[tuple]:
        """Minimal monomial generators; the ideal must be monomial."""
        if not self.is_monomial():
            raise ValueError("not a monomial ideal")
        return minimalize_monomials(next(iter(g.terms)) for g in self.generators)

    def initial_ideal(self, order: MonomialOrder = GREVLEX) -> "Ideal":
        return self.groebner(order).initial_ideal()

    def minimal_generators(self) -> "Ideal":
        """Drop generators lying in the ideal of the others (homogeneous case)."""
        gens = sorted(self.generators, key=lambda g: g.degree())
        kept: list[Polynomial] = []
        for g in gens:
            if kept and Ideal(kept, self.ring, self.homogeneous).contains(g):
                continue
            kept.append(g)
        # a later generator can make an earlier one redundant only in equal degree
        changed = True
        while changed:
            changed = False
            for i, g in enumerate(kept):
                rest = kept[:i] + kept[i + 1:]
                if rest and Ideal(rest, self.ring, self.homogeneous).contains(g):
                    kept = rest
                    changed = True
                    break
        return Ideal(kept, self.ring, self.homogeneous)

    def __add__(self, other: "Ideal") -> "Ideal":
        _same_ring(self, other)
        return Ideal(self.generators + other.generators, self.ring,
                     self.homogeneous and other.homogeneous)

    def __mul__(self, other: "Ideal") -> "Ideal":
        _same_ring(self, other)
        return Ideal([f * g for f in self.generators for g in other.generators], self.ring,
                     self.homogeneous and other.homogeneous)

    def __pow__(self, k: int) -> "Ideal":
        out = Ideal([self.ring.one()], self.ring)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    __hash__ = object.__hash__

    def map_ring(self, ring: PolyRing, index_map: Sequence[int] | None = None,
                 homogeneous: bool | None = None) -> "Ideal":
        return Ideal([g.map_ring(ring, index_map) for g in self.generators], ring,
                     self.homogeneous if homogeneous is None else homogeneous)

    def linear_change(self, matrix: Sequence[Sequence]) -> "Ideal":
        """Apply x_i -> sum_j matrix[i][j] x_j to every generator."""
        xs = self.ring.gens()
        images = {}
        for i, row in enumerate(matrix):
            img = self.ring.zero()
            for j, a in enumerate(row):
                if a:
                    img = img + xs[j] * to_q(a)
            images[i] = img
        return Ideal([g.substitute(images) for g in self.generators], self.ring, self.homogeneous)

    def to_strings(self) -> list[str]:
        return [str(g) for g in self.generators]

    def reduced_strings(self) -> list[str]:
        return [str(g) for g in self.groebner().elements]

    def __repr__(self):
        return f"Ideal({', '.join(self.to_strings())})"


def _same_ring(a: Ideal, b: Ideal) -> None:
    if a.ring != b.ring:
        raise ValueError("ring mismatch")


def monomial_ideal(ring: PolyRing, monos: Iterable[tuple]) -> Ideal:
    gens = sorted(minimalize_monomials(monos), key=GREVLEX.key, reverse=True)
    return Ideal([ring.monomial(e) for e in gens], ring)


def irrelevant_ideal(ring: PolyRing) -> Ideal:
    return Ideal(ring.gens(), ring)


# ---------------------------------------------------------------- operations

def buchberger(I: Ideal, order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    """Reduced Groebner basis of I under ``order``."""
    lms, polys, _ = _gb_engine([dict(g.terms) for g in I.generators], order)
    return GroebnerBasis(I.ring, order, lms, polys)


def tracked_groebner(gens: Sequence[Polynomial], order: MonomialOrder = GREVLEX):
    """Reduced Groebner basis plus, for each element, its expression in ``gens``.

    Returns (GroebnerBasis, reps) with reps[i][k] a Polynomial such that
    basis element i equals sum_k reps[i][k] * gens[k].
    """
    ring = gens[0].ring
    lms, polys, reps = _gb_engine([dict(g.terms) for g in gens], order, track=True)
    gb = GroebnerBasis(ring, order, lms, polys)
    return gb, [[Polynomial._raw(ring, r) for r in row] for row in reps]


def normal_form(p: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.normal_form(p)


def divide(p: Polynomial, G: GroebnerBasis) -> tuple[list[Polynomial], Polynomial]:
    """Division with quotients: p = sum q_i G_i + r."""
    steps: list = []
    rem = G._reducer().reduce(p.terms, full=True, record=steps)
    qs: list[dict] = [dict() for _ in G.elements]
    for i, c, q in steps:
        v = qs[i].get(q, 0) + c
        if v:
            qs[i][q] = v
        else:
            qs[i].pop(q, None)
    return [Polynomial._raw(p.ring, d) for d in qs], Polynomial._raw(p.ring, rem)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    _same_ring(I, J)
    a, b = I.groebner(GREVLEX), J.groebner(GREVLEX)
    return [g.terms for g in a.elements] == [g.terms for g in b.elements]


def intersect(I: Ideal, J: Ideal, *more: Ideal) -> Ideal:
    """I ∩ J by eliminating t from t*I + (1-t)*J."""
    _same_ring(I, J)
    if more:
        return intersect(intersect(I, J), *more)
    if I.is_unit():
        return Ideal(J.groebner().elements, J.ring, J.homogeneous)
    if J.is_unit():
        return Ideal(I.groebner().elements, I.ring, I.homogeneous)
    if I.is_zero() or J.is_zero():
        return Ideal([], I.ring, True)
    ring = I.ring
    big = ring.extend(["_t"], front=True)
    shift = list(range(1, ring.nvars + 1))
    t = big.gen(0)
    gens = [t * f.map_ring(big, shift) for f in I.generators]
    gens += [(1 - t) * g.map_ring(big, shift) for g in J.generators]
    order = elimination_order(big.nvars, [0])
    lms, polys, _ = _gb_engine([dict(g.terms) for g in gens], order)
    keep = [p for lm, p in zip(lms, polys) if lm[0] == 0]
    out = [Polynomial._raw(ring, {e[1:]: c for e, c in p.items()}) for p in keep]
    return Ideal(out, ring, I.homogeneous and J.homogeneous)


def eliminate(I: Ideal, variables: Iterable[int]) -> Ideal:
    """I ∩ k[remaining variables], still expressed in the full ring."""
    vs = list(variables)
    order = elimination_order(I.ring.nvars, vs)
    gb = I.groebner(order)
    keep = [g for g, lm in zip(gb.elements, gb.leading_monomials) if not any(lm[v] for v in vs)]
    return Ideal(keep, I.ring, I.homogeneous)


def _exact_quotient(p: Polynomial, f: Polynomial) -> Polynomial:
    gb = GroebnerBasis(f.ring, GREVLEX, *_single(f))
    qs, r = divide(p, gb)
    if r:
        raise ArithmeticError("inexact division")
    return qs[0]


def _single(f: Polynomial):
    key = _KeyCache(GREVLEX)
    lm = _lead(f.terms, key)
    inv = 1 / f.terms[lm]
    return [lm], [{e: c * inv for e, c in f.terms.items()}]


def colon(I: Ideal, f: Polynomial) -> Ideal:
    """I : f, as (I ∩ (f)) / f."""
    if f.is_zero():
        return Ideal([I.ring.one()], I.ring)
    K = intersect(I, Ideal([f], I.ring, I.homogeneous and f.is_homogeneous()))
    return Ideal([_exact_quotient(g, f) for g in K.generators], I.ring, K.homogeneous)


def quotient(I: Ideal, J: Ideal) -> Ideal:
    """I : J = ∩ over generators f of J of (I : f)."""
    parts = [colon(I, f) for f in J.generators]
    if not parts:
        return Ideal([I.ring.one()], I.ring)
    out = parts[0]
    for P in parts[1:]:
        out = intersect(out, P)
    return out


def saturate(I: Ideal, J: Ideal | None = None) -> Ideal:
    """I : J^∞ by iterating the colon until it stabilises (J defaults to m)."""
    if J is None:
        J = irrelevant_ideal(I.ring)
    cur = I
    while True:
        nxt = quotient(cur, J)
        if ideal_equal(nxt, cur):
            return Ideal(cur.groebner().elements, cur.ring, cur.homogeneous)
        cur = nxt


def is_saturated(I: Ideal) -> bool:
    """Whether I = I : m^∞ for the irrelevant ideal m.

    If the last variable does not divide any grevlex leading monomial it is a
    nonzerodivisor modulo I and I is saturated; otherwise the colon is computed.
    """
    if I.is_unit():
        return True
    last = I.ring.nvars - 1
    if I.homogeneous and all(lm[last] == 0 for lm in I.groebner(GREVLEX).leading_monomials):
        return True
    return ideal_equal(quotient(I, irrelevant_ideal(I.ring)), I)

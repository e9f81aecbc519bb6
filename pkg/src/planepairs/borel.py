"""Borel-fixed monomial ideals: tests, generic initial ideals, lexicographic
points, the pair ideals I_{c,d,n}, and enumeration by expansions.

Monomial ideals are handled as lists of exponent tuples over the full ring
k[x0..xn].  During enumeration only the variables x0..x_{last} are "active";
generators never involve the last active variable, which keeps every
candidate saturated in the active ring.
"""
from __future__ import annotations

import random
from typing import Iterable, Sequence

from .groebner import GREVLEX, Ideal, _divides, is_saturated, minimalize_monomials, monomial_ideal
from .hilbert import HilbertPoly, hilbert_polynomial, macaulay_decomposition, monomial_hilbert_polynomial
from .linalg import det
from .poly import standard_ring

__all__ = ["is_borel_fixed", "gin", "lex_point", "expand", "enumerate_borel", "I_cdn",
           "NotExpandable", "NonConstantDeficit", "GinDisagreement"]


class NotExpandable(ValueError):
    pass


class NonConstantDeficit(ValueError):
    pass


class GinDisagreement(RuntimeError):
    pass


def _unit(nv: int, i: int) -> tuple:
    return tuple(1 if k == i else 0 for k in range(nv))


def _in_monomial_ideal(e: tuple, gens: Iterable[tuple]) -> bool:
    return any(_divides(g, e) for g in gens)


def _borel_monos(gens: Sequence[tuple]) -> bool:
    for m in gens:
        for j, a in enumerate(m):
            if not a:
                continue
            for i in range(j):
                moved = list(m)
                moved[j] -= 1
                moved[i] += 1
                if not _in_monomial_ideal(tuple(moved), gens):
                    return False
    return True


def is_borel_fixed(I: Ideal) -> bool:
    """True iff every Borel move x_j -> x_i (i < j) of a generator stays in I."""
    if not I.is_monomial():
        raise ValueError("Borel-fixedness is tested on monomial ideals only")
    return _borel_monos(I.monomial_generators())


def I_cdn(c: int, d: int, n: int) -> Ideal:
    """The Borel-fixed ideal I_{c,d,n} on the component of (c,d)-plane pairs in P^n."""
    if not (0 <= c <= d <= n - 1):
        raise ValueError("need 0 <= c <= d <= n-1")
    nv = n + 1
    gens = [_unit(nv, i) for i in range(0, n - c - d - 1)]
    lo = max(n - c - d - 1, 0)
    block = range(lo, n - d)
    for a in block:
        for b in block:
            if a <= b:
                gens.append(tuple(_unit(nv, a)[k] + _unit(nv, b)[k] for k in range(nv)))
    for i in block:
        for j in range(n - d, 2 * n - c - d - 2 - i + 1):
            gens.append(tuple(_unit(nv, i)[k] + _unit(nv, j)[k] for k in range(nv)))
    return monomial_ideal(standard_ring(n), gens)


# ---------------------------------------------------------------- gin

def _random_matrix(rng: random.Random, size: int, bound: int) -> list[list[int]]:
    while True:
        M = [[rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)]
        if det(M):
            return M


def _initial_after_change(I: Ideal, M) -> frozenset:
    gb = I.linear_change(M).groebner(GREVLEX)
    return frozenset(minimalize_monomials(gb.leading_monomials))


def gin(I: Ideal, seed: int = 0, retries: int = 3, bound: int = 100) -> Ideal:
    """Generic initial ideal under grevlex.

    Two independent random coordinate changes are drawn from ``seed``; the
    result is accepted only when both initial ideals agree and are Borel-fixed.
    """
    if not I.homogeneous:
        raise ValueError("gin needs a homogeneous ideal")
    size = I.ring.nvars
    for attempt in range(retries):
        draws = []
        for k in range(2):
            rng = random.Random(f"gin:{seed}:{attempt}:{k}")
            draws.append(_initial_after_change(I, _random_matrix(rng, size, bound)))
        if draws[0] == draws[1] and _borel_monos(sorted(draws[0])):
            return monomial_ideal(I.ring, draws[0])
    raise GinDisagreement(f"initial ideals disagreed after {retries} attempts; re-seed")


# ---------------------------------------------------------------- lexicographic point

def lex_point(P: HilbertPoly, n: int) -> Ideal:
    """The lexicographic ideal built from the Macaulay decomposition of P."""
    md = macaulay_decomposition(P)
    d, a = md.d, md.a
    if n - d - 1 < 0:
        raise ValueError("Hilbert polynomial degree too large for P^n")
    nv = n + 1
    gens = [_unit(nv, i) for i in range(0, n - d - 1)]
    var = {j: n - 1 - j for j in range(d + 1)}  # a_j sits on x_{n-1-j}
    for j in range(d, 0, -1):
        e = [0] * nv
        for l in range(d, j, -1):
            e[var[l]] += a[l]
        e[var[j]] += a[j] + 1
        gens.append(tuple(e))
    e = [0] * nv
    for l in range(d, -1, -1):
        e[var[l]] += a[l]
    gens.append(tuple(e))
    return monomial_ideal(standard_ring(n), gens)


# ---------------------------------------------------------------- expansions

def _max_index(m: tuple) -> int:
    return max(i for i, a in enumerate(m) if a)


def expand_monomials(gens: Sequence[tuple], m: tuple, last_active: int) -> tuple:
    """Replace m by m*x_j for max(m) <= j <= last_active-1; must stay Borel-fixed."""
    gens = list(gens)
    if m not in gens:
        raise ValueError("m is not a minimal generator")
    nv = len(m)
    new = [g for g in gens if g != m]
    for j in range(_max_index(m), last_active):
        new.append(tuple(m[k] + (1 if k == j else 0) for k in range(nv)))
    new = minimalize_monomials(new)
    if not _borel_monos(new):
        raise NotExpandable("result is not Borel-fixed")
    return tuple(new)


def expand(I: Ideal, m: tuple, last_active: int) -> Ideal:
    return monomial_ideal(I.ring, expand_monomials(I.monomial_generators(), m, last_active))


def enumerate_borel(P: HilbertPoly, n: int, trace: list | None = None) -> list[Ideal]:
    """All saturated Borel-fixed ideals of k[x0..xn] with Hilbert polynomial P.

    Works stage by stage in the rings k[x0..x_{n-i}], i = d, ..., 0, where d is
    the degree of P.  At stage i every candidate is compared with the i-th
    difference of P; the (constant) deficit is made up by that many
    expansions in all possible ways.
    """
    d = P.degree
    if d < 0:
        raise ValueError("P must be nonzero")
    if d > n - 1:
        raise ValueError("degree of P exceeds n-1")
    nv = n + 1
    top = P.delta(d)
    if not top.is_constant() or top.constant_value() < 1:
        raise ValueError("leading difference must be a positive constant")
    start = tuple(_unit(nv, j) for j in range(0, n - d))
    cands = {start}
    for i in range(d, -1, -1):
        target = P.delta(i)
        active = n - i + 1
        last = n - i
        nxt: set = set()
        for gens in sorted(cands):
            have = monomial_hilbert_polynomial([g[:active] for g in gens], active)
            deficit = target - have
            if not deficit.is_constant():
                raise NonConstantDeficit(f"stage {i}: deficit {deficit.formula()} is not constant")
            k = deficit.constant_value()
            if k.denominator != 1:
                raise NonConstantDeficit(f"stage {i}: non-integral deficit {k}")
            k = int(k)
            if k < 0:
                continue
            level = {gens}
            for _ in range(k):
                grown = set()
                for J in level:
                    for m in J:
                        try:
                            grown.add(expand_monomials(J, m, last))
                        except NotExpandable:
                            pass
                level = grown
            nxt |= level
        if trace is not None:
            trace.append({"stage": i, "difference": target.formula(), "candidates": len(nxt)})
        cands = nxt
    ring = standard_ring(n)
    out = []
    for gens in sorted(cands):
        I = monomial_ideal(ring, gens)
        if not (_borel_monos(list(gens)) and is_saturated(I) and hilbert_polynomial(I) == P):
            raise RuntimeError(f"re-verification rejected an expansion candidate {I}")
        out.append(I)
    return out

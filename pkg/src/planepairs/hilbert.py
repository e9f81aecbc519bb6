"""Hilbert series, functions and polynomials of graded quotients S/I.

Everything is computed from the grevlex initial ideal: the numerator of the
Hilbert series comes from the pivot recursion on monomial ideals, the Hilbert
polynomial is read off the numerator, and the Krull dimension is obtained
twice (independent variable sets and pole order) as a cross-check.
"""
from __future__ import annotations

import math
import re
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .groebner import GREVLEX, Ideal, minimalize_monomials
from .poly import PolyRing, Q, format_q, to_q

__all__ = [
    "HilbertPoly", "MacaulayDecomposition", "hilbert_series_numerator", "hilbert_function",
    "hilbert_polynomial", "pair_hilbert_polynomial", "krull_dim", "macaulay_decomposition",
    "monomial_numerator", "monomial_hilbert_polynomial", "binomial", "hypersurface_polynomial",
]


# ---------------------------------------------------------------- univariate helpers

def _pmul(a: list, b: list) -> list:
    out = [Q(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _padd(a: list, b: list, sign=1) -> list:
    n = max(len(a), len(b))
    out = [Q(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] += sign * y
    while out and not out[-1]:
        out.pop()
    return out


@lru_cache(maxsize=None)
def _binom_t(a: int, i: int) -> tuple:
    """Coefficients (low degree first) of C(t+a, i) = prod_{j<i} (t+a-j) / i! as a polynomial in t."""
    p = [Q(1)]
    for j in range(i):
        p = _pmul(p, [Q(a - j), Q(1)])
    f = math.factorial(i)
    return tuple(c / f for c in p)


def binomial(top: int, k: int) -> int:
    """C(top, k) for integers, zero when k < 0 or top < k with top >= 0, polynomial value otherwise."""
    if k < 0:
        return 0
    num = 1
    for j in range(k):
        num *= top - j
    return num // math.factorial(k)


# ---------------------------------------------------------------- HilbertPoly

class HilbertPoly:
    """P(t) = sum_i c_i C(t+i, i), stored by its binomial-basis coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_q(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_monomial(cls, mono: Sequence) -> "HilbertPoly":
        """From coefficients of 1, t, t^2, ... (low degree first)."""
        rest = [to_q(c) for c in mono]
        while rest and not rest[-1]:
            rest.pop()
        out = [Q(0)] * len(rest)
        for i in range(len(rest) - 1, -1, -1):
            lead = rest[i] if i < len(rest) else Q(0)
            if not lead:
                continue
            c = lead * math.factorial(i)
            out[i] = c
            rest = _padd(rest, [c * x for x in _binom_t(i, i)], -1)
            rest += [Q(0)] * (i - len(rest) + 1)
        return cls(out)

    @classmethod
    def binom(cls, a: int, i: int, coef=1) -> "HilbertPoly":
        """coef * C(t+a, i) as a polynomial in t."""
        return cls.from_monomial([to_q(coef) * x for x in _binom_t(a, i)])

    @classmethod
    def constant(cls, c) -> "HilbertPoly":
        return cls([c])

    @classmethod
    def parse(cls, text: str) -> "HilbertPoly":
        return _parse_hilbert(text)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def monomial_coeffs(self) -> list:
        out: list = []
        for i, c in enumerate(self.coeffs):
            if c:
                out = _padd(out, [c * x for x in _binom_t(i, i)])
        return out

    def __call__(self, t: int):
        v = sum((c * binomial(t + i, i) if t + i >= 0 else c * _eval(_binom_t(i, i), t)
                 for i, c in enumerate(self.coeffs)), Q(0))
        return int(v) if v.denominator == 1 else v

    def __add__(self, other: "HilbertPoly") -> "HilbertPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Q(0)] * (n - len(self.coeffs))
        b = list(other.coeffs) + [Q(0)] * (n - len(other.coeffs))
        return HilbertPoly(x + y for x, y in zip(a, b))

    def __neg__(self):
        return HilbertPoly(-c for c in self.coeffs)

    def __sub__(self, other: "HilbertPoly") -> "HilbertPoly":
        return self + (-other)

    def __eq__(self, other):
        if isinstance(other, HilbertPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def delta(self, k: int = 1) -> "HilbertPoly":
        """k-th backward difference; C(t+i,i) - C(t+i-1,i) = C(t+i-1,i-1)."""
        return HilbertPoly(self.coeffs[k:])

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.coeffs[0] if self.coeffs else Q(0)

    def formula(self) -> str:
        """Binomial-basis formula such as 'C(t+2,2) + C(t+1,1) + 1'."""
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            body = "1" if i == 0 else f"C(t+{i},{i})"
            a = -c if c < 0 else c
            if i == 0:
                term = format_q(a)
            else:
                term = body if a == 1 else f"{format_q(a)}*{body}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, term))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            s += f" {sign} {term}"
        return s

    def monomial_formula(self) -> str:
        cs = self.monomial_coeffs()
        if not cs:
            return "0"
        ring = PolyRing(["t"])
        from .poly import Polynomial
        return str(Polynomial(ring, {(i,): c for i, c in enumerate(cs)}))

    def to_json(self) -> dict:
        return {"binomial_coeffs": [format_q(c) for c in self.coeffs],
                "formula": self.formula(), "expanded": self.monomial_formula()}

    def __str__(self):
        return self.formula()

    def __repr__(self):
        return f"HilbertPoly({self.formula()})"


def _eval(coeffs: Sequence, t) -> Q:
    v = Q(0)
    for c in reversed(coeffs):
        v = v * t + c
    return v


_BINOM = re.compile(r"C\(\s*t\s*(?:([+-])\s*(\d+))?\s*,\s*(\d+)\s*\)")


def _parse_hilbert(text: str) -> HilbertPoly:
    ring = PolyRing(["t"])

    def expand(m: re.Match) -> str:
        a = int(m.group(2) or 0) * (-1 if m.group(1) == "-" else 1)
        i = int(m.group(3))
        cs = _binom_t(a, i)
        return "(" + " + ".join(f"({format_q(c)})*t^{k}" for k, c in enumerate(cs)) + ")"

    body = _BINOM.sub(expand, text)
    if "C(" in body:
        raise ValueError("binomials must have the form C(t+a,b)")
    p = ring.parse(body)
    deg = p.degree()
    return HilbertPoly.from_monomial([p.coefficient((k,)) for k in range(max(deg, 0) + 1)])


def hypersurface_polynomial(d: int, n: int) -> HilbertPoly:
    """Hilbert polynomial of a degree-d hypersurface in P^n."""
    return HilbertPoly.binom(n, n) - HilbertPoly.binom(n - d, n)


# ---------------------------------------------------------------- series

def _ipmul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _ipadd(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] += y
    while len(out) > 1 and not out[-1]:
        out.pop()
    return out


def monomial_numerator(gens: Iterable[tuple]) -> list[int]:
    """Numerator N(s) of the Hilbert series of S/(gens), over (1-s)^nvars."""
    return list(_numerator(frozenset(minimalize_monomials(gens))))


@lru_cache(maxsize=200000)
def _numerator(gens: frozenset) -> tuple:
    gs = list(gens)
    if not gs:
        return (1,)
    if any(sum(g) == 0 for g in gs):
        return (0,)
    supports = [frozenset(i for i, a in enumerate(g) if a) for g in gs]
    counts: dict = {}
    for s in supports:
        for i in s:
            counts[i] = counts.get(i, 0) + 1
    if all(c == 1 for c in counts.values()):
        out = [1]
        for g in gs:
            out = _ipmul(out, [1] + [0] * (sum(g) - 1) + [-1])
        return tuple(out)
    v = max(sorted(counts), key=lambda i: counts[i])
    nv = len(gs[0])
    p = tuple(1 if i == v else 0 for i in range(nv))
    plus = frozenset(minimalize_monomials(gs + [p]))
    colon = frozenset(minimalize_monomials(
        tuple(a - 1 if (i == v and a) else a for i, a in enumerate(g)) for g in gs))
    return tuple(_ipadd(list(_numerator(plus)), [0] + list(_numerator(colon))))


def hilbert_series_numerator(I: Ideal) -> list[int]:
    """N(s) with HS_{S/I}(s) = N(s) / (1-s)^(n+1), computed on in(I)."""
    if not I.homogeneous:
        raise ValueError("Hilbert series needs a homogeneous ideal")
    gb = I.groebner(GREVLEX)
    num = monomial_numerator(gb.leading_monomials)
    return num


def _hf_from_numerator(num: Sequence[int], nvars: int, t: int) -> int:
    return sum(c * binomial(t - k + nvars - 1, nvars - 1)
               for k, c in enumerate(num) if t - k >= 0)


def hilbert_function(I: Ideal, t: int) -> int:
    """dim_k (S/I)_t."""
    if t < 0:
        return 0
    return _hf_from_numerator(hilbert_series_numerator(I), I.ring.nvars, t)


def _split_pole(num: Sequence[int], nvars: int) -> tuple[list, int]:
    """Write N(s) = (1-s)^(nvars-D) Q(s) with Q(1) != 0; returns (Q, D)."""
    q = list(num)
    if not any(q):
        return [], -1
    D = nvars
    while D > 0 and sum(q) == 0:
        # synthetic division by (1 - s)
        out = []
        acc = 0
        for c in q[:-1]:
            acc += c
            out.append(acc)
        q = out
        D -= 1
    return q, D


def _poly_from_numerator(num: Sequence[int], nvars: int) -> HilbertPoly:
    q, D = _split_pole(num, nvars)
    if D <= 0:
        return HilbertPoly()
    mono: list = []
    for k, c in enumerate(q):
        if c:
            mono = _padd(mono, [c * x for x in _binom_t(D - 1 - k, D - 1)])
    return HilbertPoly.from_monomial(mono)


def monomial_hilbert_polynomial(gens: Iterable[tuple], nvars: int) -> HilbertPoly:
    return _poly_from_numerator(monomial_numerator(gens), nvars)


def hilbert_polynomial(I: Ideal) -> HilbertPoly:
    return _poly_from_numerator(hilbert_series_numerator(I), I.ring.nvars)


# ---------------------------------------------------------------- dimension

def _independent_dim(gens: Sequence[tuple], nvars: int) -> int:
    supports = [frozenset(i for i, a in enumerate(g) if a) for g in gens]
    if any(not s for s in supports):
        raise ValueError("unit ideal has no Krull dimension")
    for h in range(0, nvars + 1):
        for hit in combinations(range(nvars), h):
            hs = set(hit)
            if all(s & hs for s in supports):
                return nvars - h
    raise AssertionError("unreachable")


def krull_dim(I: Ideal) -> int:
    """Krull dimension of S/I from maximal independent variable sets of in(I).

    The value is cross-checked against the pole order of the Hilbert series.
    """
    if I.is_unit():
        raise ValueError("unit ideal has no Krull dimension")
    lms = I.groebner(GREVLEX).leading_monomials
    d = _independent_dim(lms, I.ring.nvars)
    if I.homogeneous:
        _, D = _split_pole(monomial_numerator(lms), I.ring.nvars)
        if D != d:
            raise RuntimeError(f"dimension mismatch: independent sets {d}, series {D}")
    return d


# ---------------------------------------------------------------- closed forms

def pair_hilbert_polynomial(c: int, d: int, n: int) -> HilbertPoly:
    """Hilbert polynomial of a c-plane and a d-plane meeting transversely in P^n."""
    if not (0 <= c <= d <= n - 1):
        raise ValueError("need 0 <= c <= d <= n-1")
    P = HilbertPoly.binom(c, c) + HilbertPoly.binom(d, d)
    if c + d - n >= 0:
        P = P - HilbertPoly.binom(c + d - n, c + d - n)
    return P


class MacaulayDecomposition:
    """P(t) = sum_i [C(t+i, i+1) - C(t+i-m_i, i+1)] with m_0 >= ... >= m_d >= 0."""

    def __init__(self, m: Sequence[int]):
        self.m = tuple(int(x) for x in m)
        d = len(self.m) - 1
        a = [0] * (d + 1)
        for i in range(d + 1):
            a[i] = self.m[i] - (self.m[i + 1] if i < d else 0)
        self.a = tuple(a)

    @property
    def d(self) -> int:
        return len(self.m) - 1

    def polynomial(self) -> HilbertPoly:
        P = HilbertPoly()
        for i, mi in enumerate(self.m):
            P = P + HilbertPoly.binom(i, i + 1) - HilbertPoly.binom(i - mi, i + 1)
        return P

    def __repr__(self):
        return f"MacaulayDecomposition(m={self.m}, a={self.a})"


def macaulay_decomposition(P: HilbertPoly) -> MacaulayDecomposition:
    if not P.coeffs:
        raise ValueError("the zero polynomial is not admissible")
    d = P.degree
    rest = P
    m = [0] * (d + 1)
    for i in range(d, -1, -1):
        mono = rest.monomial_coeffs()
        lead = mono[i] if i < len(mono) else Q(0)
        if len(mono) > i + 1:
            raise ValueError("not admissible: degree did not drop")
        mi = lead * math.factorial(i)
        if mi.denominator != 1 or mi < 0:
            raise ValueError("not admissible: non-integral or negative step")
        mi = int(mi)
        if i < d and mi < m[i + 1]:
            raise ValueError("not admissible: sequence increases")
        m[i] = mi
        rest = rest - (HilbertPoly.binom(i, i + 1) - HilbertPoly.binom(i - mi, i + 1))
    if rest.coeffs:
        raise ValueError("not admissible: nonzero remainder")
    return MacaulayDecomposition(m)

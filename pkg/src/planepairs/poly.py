"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a map from exponent tuples to nonzero rationals, attached to a
``PolyRing`` that fixes the variable names.  Terms are always printed in
grevlex order so that text output is canonical whatever order a computation
used internally.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

try:  # gmpy2's mpq is several times faster than Fraction for Buchberger work
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

Monomial = tuple  # exponent tuple, one entry per ring variable

__all__ = [
    "Q", "Monomial", "PolyRing", "Polynomial", "MonomialOrder", "LEX", "GREVLEX",
    "PolySyntaxError", "parse_poly", "leading_term", "standard_ring",
]


class PolySyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def to_q(c) -> Q:
    """Coerce an int, Fraction, mpq or 'a/b' string to the coefficient type."""
    if isinstance(c, str):
        return Q(c)
    if hasattr(c, "numerator") and hasattr(c, "denominator"):
        return Q(int(c.numerator), int(c.denominator))
    return Q(c)


def format_q(c) -> str:
    c = to_q(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------- orders

@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order given by a sort key; larger key means larger monomial.

    kind is one of ``lex``, ``grevlex``, ``permuted_lex`` or ``block``.
    ``permutation`` lists variable indices from largest to smallest (lex
    comparison in that sequence).  ``blocks`` is a tuple of index tuples; the
    block order compares the first block by grevlex, then the next, and so on,
    which makes it an elimination order for the first block.
    """

    kind: str = "grevlex"
    permutation: tuple = ()
    blocks: tuple = ()

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "permuted_lex", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "permuted_lex":
            if sorted(self.permutation) != list(range(len(self.permutation))):
                raise ValueError("permutation must be a bijection on 0..n")
        if self.kind == "block" and not self.blocks:
            raise ValueError("block order needs blocks")

    def key(self, e: Sequence[int]) -> tuple:
        if self.kind == "grevlex":
            return _grevlex_key(e)
        if self.kind == "lex":
            return tuple(e)
        if self.kind == "permuted_lex":
            if len(self.permutation) != len(e):
                raise ValueError("permutation length does not match the ring")
            return tuple(e[i] for i in self.permutation)
        out = []
        for blk in self.blocks:
            sub = [e[i] for i in blk]
            out.append(sum(sub))
            out.extend(-a for a in reversed(sub))
        return tuple(out)

    def describe(self) -> str:
        if self.kind == "permuted_lex":
            return "lex " + ">".join(f"v{i}" for i in self.permutation)
        if self.kind == "block":
            return "block " + "|".join(",".join(map(str, b)) for b in self.blocks)
        return self.kind


def _grevlex_key(e: Sequence[int]) -> tuple:
    return (sum(e),) + tuple(-a for a in reversed(e))


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def permuted_lex(perm: Iterable[int]) -> MonomialOrder:
    return MonomialOrder("permuted_lex", permutation=tuple(perm))


def elimination_order(nvars: int, eliminate: Iterable[int]) -> MonomialOrder:
    """Block order in which the listed variables are larger than all others."""
    first = tuple(sorted(eliminate))
    rest = tuple(i for i in range(nvars) if i not in first)
    return MonomialOrder("block", blocks=(first, rest))


# ---------------------------------------------------------------- rings

class PolyRing:
    """Polynomial ring over Q with named variables."""

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self.nvars = len(names)
        self.index = {nm: i for i, nm in enumerate(names)}

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.names == self.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)})"

    @property
    def n(self) -> int:
        """Projective dimension when the ring is k[x0..xn]."""
        return self.nvars - 1

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = to_q(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, i: int | str) -> "Polynomial":
        if isinstance(i, str):
            i = self.index[i]
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): Q(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, e: Sequence[int], c=1) -> "Polynomial":
        return Polynomial(self, {tuple(e): to_q(c)})

    def parse(self, text: str) -> "Polynomial":
        return _Parser(text, self).parse()

    def parse_many(self, texts: Iterable[str]) -> list["Polynomial"]:
        return [self.parse(t) for t in texts]

    def extend(self, extra: Sequence[str], front: bool = False) -> "PolyRing":
        return PolyRing(tuple(extra) + self.names if front else self.names + tuple(extra))


@lru_cache(maxsize=None)
def standard_ring(n: int) -> PolyRing:
    """k[x0, ..., xn]."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return PolyRing([f"x{i}" for i in range(n + 1)])


# ---------------------------------------------------------------- polynomials

class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[tuple, object] | None = None):
        self.ring = ring
        t = {}
        if terms:
            for e, c in terms.items():
                if len(e) != ring.nvars:
                    raise ValueError("exponent length does not match the ring")
                c = to_q(c)
                if c:
                    t[tuple(e)] = c
        self.terms = t

    @classmethod
    def _raw(cls, ring, terms: dict) -> "Polynomial":
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        return p

    # -- arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("ring mismatch")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Polynomial._raw(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = to_q(other)
            if not c:
                return self.ring.zero()
            return Polynomial._raw(self.ring, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e, 0) + c1 * c2
                if v:
                    t[e] = v
                else:
                    t.pop(e, None)
        return Polynomial._raw(self.ring, t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = to_q(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self * (1 / c)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self == self.ring.const(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- queries
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def support(self) -> set[int]:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    def coefficient(self, e: Sequence[int]):
        return self.terms.get(tuple(e), Q(0))

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[tuple, object]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._raw(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    # -- transformations
    def substitute(self, values: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Replace variable i by values[i]; the values may live in another ring."""
        target = next(iter(values.values())).ring if values else self.ring
        full = {}
        for i in range(self.ring.nvars):
            full[i] = values[i] if i in values else None
        out = target.zero()
        powers: dict = {}
        for e, c in self.terms.items():
            term = target.const(c)
            for i, a in enumerate(e):
                if not a:
                    continue
                v = full[i]
                if v is None:
                    if target != self.ring:
                        raise ValueError(f"no value for variable {self.ring.names[i]}")
                    v = full[i] = self.ring.gen(i)
                key = (i, a)
                if key not in powers:
                    powers[key] = v ** a
                term = term * powers[key]
            out = out + term
        return out

    def map_ring(self, ring: PolyRing, index_map: Sequence[int] | None = None) -> "Polynomial":
        """Re-embed into ``ring``; variable i goes to ``index_map[i]`` (by name if omitted)."""
        if index_map is None:
            index_map = [ring.index[nm] for nm in self.ring.names]
        t = {}
        for e, c in self.terms.items():
            f = [0] * ring.nvars
            for i, a in enumerate(e):
                if a:
                    f[index_map[i]] += a
            t[tuple(f)] = c
        return Polynomial._raw(ring, t)

    def set_zero(self, indices: Iterable[int]) -> "Polynomial":
        idx = list(indices)
        return Polynomial._raw(self.ring, {e: c for e, c in self.terms.items()
                                           if not any(e[i] for i in idx)})

    def derivative(self, i: int) -> "Polynomial":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Polynomial._raw(self.ring, out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, (e, c) in enumerate(self.sorted_terms(GREVLEX)):
            mono = "*".join(
                nm if a == 1 else f"{nm}^{a}"
                for nm, a in zip(self.ring.names, e) if a
            )
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{format_q(a)}*{mono}"
            else:
                body = format_q(a)
            if k == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


def leading_term(p: Polynomial, order: MonomialOrder = GREVLEX):
    """The order-maximal (monomial, coefficient) pair of a nonzero polynomial."""
    if not p.terms:
        raise ValueError("zero polynomial has no leading term")
    e = max(p.terms, key=order.key)
    return e, p.terms[e]


def parse_poly(text: str, n: int) -> Polynomial:
    """Parse text in the variables x0..xn."""
    return standard_ring(n).parse(text)


# ---------------------------------------------------------------- parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.toks = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos)
            start = m.start(1) if m.group(1) else m.start(2) if m.group(2) else m.start(3)
            if m.group(1):
                self.toks.append(("num", m.group(1), start))
            elif m.group(2):
                self.toks.append(("name", m.group(2), start))
            else:
                op = "^" if m.group(3) == "**" else m.group(3)
                self.toks.append(("op", op, start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.text))

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Polynomial:
        if not self.toks:
            raise PolySyntaxError("empty expression", 0)
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise PolySyntaxError(f"unexpected token {val!r}", pos)
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            _, op, pos = self.take()
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise PolySyntaxError("division only by a nonzero constant", pos)
                p = p / q.coefficient((0,) * self.ring.nvars)
        return p

    def unary(self) -> Polynomial:
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            p = self.unary()
            return -p if val == "-" else p
        return self.power()

    def power(self) -> Polynomial:
        p = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise PolySyntaxError("exponent must be a non-negative integer", pos)
            p = p ** int(val)
        return p

    def atom(self) -> Polynomial:
        kind, val, pos = self.take()
        if kind == "num":
            return self.ring.const(int(val))
        if kind == "name":
            if val not in self.ring.index:
                raise PolySyntaxError(f"unknown variable {val!r}", pos)
            return self.ring.gen(self.ring.index[val])
        if kind == "op" and val == "(":
            p = self.expr()
            k2, v2, p2 = self.take()
            if (k2, v2) != ("op", ")"):
                raise PolySyntaxError("expected ')'", p2)
            return p
        raise PolySyntaxError(f"unexpected token {val!r}" if val else "unexpected end", pos)

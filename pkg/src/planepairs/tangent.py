"""Degree-zero homomorphisms Hom(I, S/I)_0, the tangent space to the Hilbert
scheme at [I].

A homomorphism is fixed by the images of the generators g_i, each an element
of (S/I)_{d_i} written in standard monomials.  The images must be compatible
with every syzygy of the generators, which is a linear system over Q.
"""
from __future__ import annotations

from typing import Sequence

from .groebner import GREVLEX, Ideal, MonomialOrder, _add
from .linalg import Echelon
from .poly import Polynomial
from .resolution import GradedMap, syzygies

__all__ = ["HomSystem", "hom_system", "hom_degree_zero_dim", "hom_dim", "is_hom", "hom_rank",
           "expected_component_dim"]


class HomSystem:
    """Unknowns (i, m) for generator i and standard monomial m of degree d_i,
    together with one linear constraint per (syzygy, standard monomial)."""

    def __init__(self, I: Ideal, order: MonomialOrder = GREVLEX, shift: int = 0):
        self.ideal = I
        self.shift = shift
        self.gens = list(I.generators)
        self.gb = I.groebner(order)
        self.degrees = [g.degree() + shift for g in self.gens]
        self.std = {d: self.gb.standard_monomials(d) if d >= 0 else [] for d in set(self.degrees)}
        self.unknowns = [(i, m) for i, d in enumerate(self.degrees) for m in self.std[d]]
        self.syz: GradedMap = syzygies(self.gens)
        self._nf: dict = {}

    def nf_monomial(self, e: tuple) -> dict:
        r = self._nf.get(e)
        if r is None:
            r = self.gb.reduce_raw({e: 1})
            self._nf[e] = r
        return r

    def constraint_rows(self) -> list[dict]:
        """Each row is a dict unknown -> coefficient; the homs are its kernel."""
        rows = []
        for c, col in enumerate(self.syz.columns()):
            row_by_mono: dict = {}
            for i, s in enumerate(col):
                if not s:
                    continue
                for u, cu in s.terms.items():
                    for m in self.std[self.degrees[i]]:
                        for e, ce in self.nf_monomial(_add(u, m)).items():
                            slot = row_by_mono.setdefault(e, {})
                            k = (i, m)
                            v = slot.get(k, 0) + cu * ce
                            if v:
                                slot[k] = v
                            else:
                                slot.pop(k, None)
            rows.extend(r for r in row_by_mono.values() if r)
        return rows

    def dimension(self) -> int:
        index = {u: k for k, u in enumerate(self.unknowns)}
        ech = Echelon()
        for row in self.constraint_rows():
            ech.add({index[u]: v for u, v in row.items()})
        return len(self.unknowns) - len(ech)

    def image_vector(self, images: Sequence[Polynomial]) -> dict:
        """Coordinates of a candidate hom (images of the generators) modulo I."""
        if len(images) != len(self.gens):
            raise ValueError("need one image per generator")
        vec = {}
        for i, p in enumerate(images):
            for e, c in self.gb.reduce_raw(dict(p.terms)).items():
                vec[(i, e)] = c
        return vec

    def is_hom(self, images: Sequence[Polynomial]) -> bool:
        for i, p in enumerate(images):
            if p and (not p.is_homogeneous() or p.degree() != self.degrees[i]):
                return False
        vec = self.image_vector(images)
        for col in self.syz.columns():
            acc: dict = {}
            for (i, m), c in vec.items():
                s = col[i]
                for u, cu in s.terms.items():
                    e = _add(u, m)
                    acc[e] = acc.get(e, 0) + cu * c
            acc = {e: c for e, c in acc.items() if c}
            if acc and self.gb.reduce_raw(acc):
                return False
        return True


def hom_system(I: Ideal, order: MonomialOrder = GREVLEX) -> HomSystem:
    return HomSystem(I, order)


def hom_degree_zero_dim(I: Ideal, order: MonomialOrder = GREVLEX) -> int:
    """dim_k Hom(I, S/I)_0 by exact elimination."""
    return hom_dim(I, 0, order)


def hom_dim(I: Ideal, shift: int, order: MonomialOrder = GREVLEX) -> int:
    """dim_k Hom(I, S/I)_shift."""
    if not I.homogeneous:
        raise ValueError("homogeneous ideal required")
    return HomSystem(I, order, shift).dimension()


def is_hom(I: Ideal, images: Sequence[Polynomial]) -> bool:
    """Whether g_i -> images[i] defines a degree-zero map I -> S/I."""
    return HomSystem(I).is_hom(images)


def hom_rank(I: Ideal, homs: Sequence[Sequence[Polynomial]], system: HomSystem | None = None) -> int:
    """Rank of a family of homs, as elements of Hom(I, S/I)_0."""
    system = system or HomSystem(I)
    ech = Echelon()
    for h in homs:
        ech.add(system.image_vector(h))
    return len(ech)


def expected_component_dim(c: int, d: int, n: int) -> int:
    """Dimension of the component of (c,d)-plane pairs: dim G(c,n) + dim G(d,n)."""
    if c > d:
        raise ValueError("need c <= d")
    return (n - c) * (c + 1) + (n - d) * (d + 1)

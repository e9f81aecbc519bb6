"""Classified ideals on the plane-pair Hilbert schemes, the lambda-family of
k^2 quadrics, and per-ideal verification reports.

Families (``catalog_ideals``):

    "fixed"       points of H(n-2,n-2,n), four types, n >= 3
    "twoplane"    points of H(n-3,n-3,n), eight types, n >= 5
    "h1"          points of H_1(1,n-2,n), nine types, n >= 4
    "twopoints"   points of Hilb^{C(t+n-2,n-2)+2}, n >= 3
    "borel2"      the two Borel-fixed points of Hilb^{P_{1,n-2,n}}, n >= 3
    "hypersurface" Borel-fixed points of Hilb^{P_d + k}, keywords d (2), k (3)
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Sequence

from .borel import I_cdn, gin, is_borel_fixed, lex_point
from .groebner import Ideal, ideal_equal, intersect, is_saturated, monomial_ideal
from .hilbert import HilbertPoly, binomial, hilbert_polynomial, krull_dim, hypersurface_polynomial, pair_hilbert_polynomial
from .poly import MonomialOrder, permuted_lex, standard_ring, to_q
from .resolution import minimal_free_resolution, regularity
from .linalg import Echelon
from .tangent import expected_component_dim, hom_degree_zero_dim, hom_dim

__all__ = ["CatalogEntry", "catalog_ideals", "verify_point", "FAMILIES",
           "PairFamilySpec", "pair_family_ideal", "pair_family_order", "initial_set_C",
           "orbit_signature", "orbit_signatures", "orbit_fingerprint", "lambda_k_rule",
           "boundary_specs", "singular_locus_dim", "match_orbits", "verify_pair_family"]


@dataclass
class CatalogEntry:
    family: str
    label: str
    description: str
    n: int
    ideal: Ideal
    hilbert_polynomial: HilbertPoly
    component: str = "H"              # "H", "H'", "H&H'" or "" when not a pair family
    gin_target: Ideal | None = None   # checked only for entries on the pair component
    tangent: int | None = None        # expected dim Hom(I,S/I)_0 when it is known
    check_linear: bool = True
    alternatives: list = field(default_factory=list)


def _xs(a: int, b: int) -> list[str]:
    return [f"x{i}" for i in range(a, b + 1)]


def _times(v: str, forms: Sequence[str]) -> list[str]:
    return [f"{v}*{f}" for f in forms]


def _cap(R, *parts) -> Ideal:
    return intersect(*[Ideal(p, R) for p in parts]) if len(parts) > 1 else Ideal(parts[0], R)


def _sq(vs: Sequence[str]) -> list[str]:
    return [f"{a}*{b}" for i, a in enumerate(vs) for b in vs[i:]]


def _need(n: int, lo: int, fam: str) -> None:
    if n < lo:
        raise ValueError(f"family {fam} needs n >= {lo}")


# ---------------------------------------------------------------- families

def _fixed(n: int) -> list[CatalogEntry]:
    _need(n, 3, "fixed")
    R = standard_ring(n)
    P = pair_hilbert_polynomial(n - 2, n - 2, n)
    g = I_cdn(n - 2, n - 2, n)
    E = lambda lab, desc, I, **kw: CatalogEntry("fixed", lab, desc, n, I, P, "H", g, **kw)
    return [
        E("1", "two planes meeting along a codimension-two subspace",
          Ideal(["x0", "x1"], R) * Ideal(["x2", "x3"], R),
          tangent=expected_component_dim(n - 2, n - 2, n),
          alternatives=[_cap(R, ["x0", "x1"], ["x2", "x3"])]),
        E("2", "two planes meeting along an embedded hyperplane of each",
          Ideal(["x0^2", "x0*x1", "x0*x2", "x1*x2"], R)),
        E("3", "pure double structure on a plane",
          Ideal(_sq(["x0", "x1"]) + ["x0*x3 - x1*x2"], R)),
        E("4", "double plane with an embedded hyperplane",
          Ideal(_sq(["x0", "x1"]) + ["x0*x2"], R)),
    ]


def _twoplane(n: int) -> list[CatalogEntry]:
    _need(n, 5, "twoplane")
    R = standard_ring(n)
    P = pair_hilbert_polynomial(n - 3, n - 3, n)
    g = I_cdn(n - 3, n - 3, n)
    E = lambda lab, desc, I, **kw: CatalogEntry("twoplane", lab, desc, n, I, P, "H", g, **kw)
    return [
        E("1", "two planes meeting transversely",
          _cap(R, ["x0", "x1", "x2"], ["x3", "x4", "x5"]),
          tangent=expected_component_dim(n - 3, n - 3, n),
          alternatives=[Ideal(["x0", "x1", "x2"], R) * Ideal(["x3", "x4", "x5"], R)]),
        E("2", "two planes with an embedded subspace two dimensions down",
          _cap(R, ["x0", "x1", "x2"], ["x0", "x3", "x4"], ["x0^2", "x1", "x2", "x3", "x4"])),
        E("3", "two planes with an embedded subspace one dimension down",
          _cap(R, ["x0", "x1", "x2*x3"], ["x0^2", "x0*x1", "x1^2", "x0*x4 - x1*x5", "x2", "x3"])),
        E("4", "two planes with nested embedded subspaces",
          _cap(R, ["x0", "x1", "x2*x3"], ["x0", "x1^2", "x2", "x3"], ["x0^2", "x1", "x2", "x3", "x4"])),
        E("5", "pure double structure on a plane",
          Ideal(_sq(["x0", "x1", "x2"]) + ["x0*x4 - x1*x3", "x0*x5 - x2*x3", "x1*x5 - x2*x4"], R)),
        E("6", "double structure with an embedded subspace two dimensions down",
          _cap(R, ["x0", "x1^2", "x1*x2", "x2^2", "x1*x4 - x2*x3"], ["x0^2", "x1", "x2", "x3", "x4"])),
        E("7", "double structure with an embedded subspace one dimension down",
          _cap(R, ["x0", "x1", "x2^2"], ["x0^2", "x0*x1", "x1^2", "x0*x5 - x1*x4", "x2", "x3"])),
        E("8", "double structure with nested embedded subspaces",
          _cap(R, ["x0", "x1", "x2^2"], ["x0", "x1^2", "x2", "x3"], ["x0^2", "x1", "x2", "x3", "x4"])),
    ]


def _h1(n: int) -> list[CatalogEntry]:
    _need(n, 4, "h1")
    R = standard_ring(n)
    P = pair_hilbert_polynomial(1, n - 2, n)
    g = I_cdn(1, n - 2, n)
    a, b, c = 4 * n - 4, 5 * n - 5, 6 * n - 6

    def E(lab, desc, I, comp, tan, **kw):
        return CatalogEntry("h1", lab, desc, n, I, P, comp, g if "H" in comp.split("&") else None,
                            tan, check_linear=("H" in comp.split("&")), **kw)

    line_embedded = ["x0", "x1^2"] + _times("x1", _xs(2, n - 2))
    return [
        E("1", "disjoint line and plane", _cap(R, ["x0", "x1"], _xs(2, n)), "H", a),
        E("2", "line meeting the plane, plus an isolated point",
          _cap(R, ["x0", "x1"], _xs(1, n - 1), ["x0"] + _xs(2, n)), "H'", b),
        E("3", "line meeting the plane, embedded point at the intersection",
          _cap(R, ["x0"] + _times("x1", _xs(2, n - 1)), ["x0^2"] + _xs(1, n - 1)), "H&H'", c,
          alternatives=[Ideal(["x0", "x1"], R) * Ideal(["x0"] + _xs(2, n - 1), R)]),
        E("4", "line meeting the plane, embedded point on the line",
          _cap(R, ["x0", f"x{n}"], ["x0^2"] + _xs(1, n - 1), _xs(0, n - 2)), "H'", b),
        E("5", "line meeting the plane, embedded point on the plane",
          _cap(R, ["x0", "x1"], ["x0^2"] + _xs(1, n - 1), ["x0"] + _xs(3, n)), "H'", b),
        E("6", "plane with an embedded line, plus an isolated point",
          _cap(R, ["x0", "x1"], ["x0^2"] + _xs(1, n - 2), ["x0"] + _xs(2, n)), "H'", b),
        E("7", "plane with an embedded line and an embedded point off the line",
          _cap(R, line_embedded, ["x0^2", "x1"] + _xs(3, n)), "H'", b),
        E("8", "plane with an embedded line and an embedded point on it",
          _cap(R, line_embedded, ["x0^2"] + _xs(1, n - 1)), "H&H'", c,
          alternatives=[g]),
        E("9", "plane with a pure embedded line",
          _cap(R, ["x0", "x1"], _sq(["x0", "x1"]) + _xs(2, n - 2) + [f"x0*x{n} - x1*x{n-1}"]), "H", a),
    ]


def _twopoints(n: int) -> list[CatalogEntry]:
    _need(n, 3, "twopoints")
    R = standard_ring(n)
    P = HilbertPoly.binom(n - 2, n - 2) + HilbertPoly.constant(2)
    smooth = 4 * n - 2

    def E(lab, desc, I, tan, **kw):
        return CatalogEntry("twopoints", lab, desc, n, I, P, "", None, tan, check_linear=False, **kw)

    plane = ["x0", "x1"]
    return [
        E("i", "plane and two isolated points",
          _cap(R, plane, _xs(1, n), ["x0"] + _xs(2, n)), smooth),
        E("ii", "plane with an embedded point, plus an isolated point",
          _cap(R, plane, ["x0^2"] + _xs(1, n - 1), ["x0"] + _xs(2, n)), smooth),
        E("iii-a", "plane with two embedded points, not in a plane",
          _cap(R, plane, ["x0^2"] + _xs(1, n - 1), ["x0", "x1^2"] + _xs(3, n)), None),
        # the product form (x0) + x1(x1, x2*xn, x3..x_{n-1}) is the one matching
        # the intersection for every n; both coincide with the n = 3 display
        E("iii-b", "plane with two embedded points, inside a hyperplane",
          _cap(R, plane, ["x0", "x1^2"] + _xs(2, n - 1), ["x0", "x1^2"] + _xs(3, n)), None,
          alternatives=[Ideal(["x0", "x1^2", f"x1*x2*x{n}"] + _times("x1", _xs(3, n - 1)), R)]),
        E("iv", "embedded point of multiplicity two, curvilinear (lexicographic point)",
          Ideal(["x0"] + _times("x1", _xs(1, n - 2)) + [f"x1*x{n-1}^2"], R), None,
          alternatives=[_cap(R, plane, ["x0", "x1^2"] + _xs(2, n - 2) + [f"x{n-1}^2"])]),
        E("v", "embedded point of multiplicity two, fat",
          Ideal(plane, R) * Ideal(_xs(0, n - 1), R), 6 * n - 4,
          alternatives=[_cap(R, plane, _sq(plane) + _xs(2, n - 1))]),
    ]


def _borel2(n: int) -> list[CatalogEntry]:
    _need(n, 3, "borel2")
    P = pair_hilbert_polynomial(1, n - 2, n)
    J1 = I_cdn(1, n - 2, n)
    J2 = lex_point(P, n)
    return [
        CatalogEntry("borel2", "J1", "Borel-fixed point on the pair component", n, J1, P,
                     "H&H'", J1, 6 * n - 6),
        CatalogEntry("borel2", "J2", "lexicographic point", n, J2, P, "H'", None, None,
                     check_linear=False),
    ]


def _hypersurface(n: int, d: int = 2, k: int = 3) -> list[CatalogEntry]:
    _need(n, 2, "hypersurface")
    if not 1 <= k <= 3:
        raise ValueError("k must be 1, 2 or 3")
    R = standard_ring(n)
    P = hypersurface_polynomial(d, n) + HilbertPoly.constant(k)
    h = f"x0^{d}"
    fat_tangent = binomial(n + d, d) - 1 + 3 * n
    out = [CatalogEntry("hypersurface", "lex", "hypersurface and a curvilinear point scheme", n,
                        Ideal(_times(h, _xs(0, n - 2) + [f"x{n-1}^{k}"]), R), P, "", None, None,
                        check_linear=False)]
    if k == 3:
        out.append(CatalogEntry("hypersurface", "fat", "hypersurface and a planar fat point scheme",
                                n, Ideal(_times(h, _xs(0, n - 3) + _sq([f"x{n-2}", f"x{n-1}"])), R),
                                P, "", None, fat_tangent, check_linear=False))
    return out


FAMILIES: dict[str, Callable[..., list[CatalogEntry]]] = {
    "fixed": _fixed, "twoplane": _twoplane, "h1": _h1, "twopoints": _twopoints,
    "borel2": _borel2, "hypersurface": _hypersurface,
}


def catalog_ideals(family: str, n: int, **kw) -> list[CatalogEntry]:
    try:
        build = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    return build(n, **kw)


# ---------------------------------------------------------------- verification

def verify_point(e: CatalogEntry, seed: int = 0, tangent: bool = True) -> dict:
    """Check the stated properties of an entry; failures are report values, not errors."""
    I = e.ideal
    rep: dict = {"family": e.family, "label": e.label, "n": e.n, "component": e.component}
    rep["saturated"] = is_saturated(I)
    hp = hilbert_polynomial(I)
    rep["hilbert_polynomial"] = hp.formula()
    rep["hilbert_ok"] = hp == e.hilbert_polynomial
    rep["alternatives_ok"] = all(ideal_equal(I, J) for J in e.alternatives)
    G = gin(I, seed=seed)
    rep["gin"] = [str(g) for g in G.generators]
    rep["gin_is_borel"] = is_borel_fixed(G)
    if e.gin_target is not None:
        rep["gin_ok"] = ideal_equal(G, e.gin_target)
    _, B = minimal_free_resolution(I)
    rep["betti"] = list(B.totals())
    rep["linear"] = B.is_linear()
    rep["regularity"] = regularity(B)
    if tangent:
        t = hom_degree_zero_dim(I)
        rep["tangent"] = t
        if e.tangent is not None:
            rep["tangent_expected"] = e.tangent
            rep["tangent_ok"] = t == e.tangent
    ok = rep["saturated"] and rep["hilbert_ok"] and rep["alternatives_ok"] and rep["gin_is_borel"]
    ok = ok and rep.get("gin_ok", True) and rep.get("tangent_ok", True)
    if e.check_linear:
        ok = ok and rep["linear"] and rep["regularity"] == 2
    rep["pass"] = bool(ok)
    return rep


# ---------------------------------------------------------------- the lambda family

@dataclass(frozen=True)
class PairFamilySpec:
    k: int
    n: int
    lam: tuple

    def __post_init__(self):
        if len(self.lam) != self.k:
            raise ValueError("need exactly k values of lambda")
        if self.n < 2 * self.k - 1:
            raise ValueError("need n >= 2k-1")
        object.__setattr__(self, "lam", tuple(to_q(x) for x in self.lam))

    def prod(self, lo: int, hi: int):
        """lambda_lo * ... * lambda_hi (1-based, empty product 1)."""
        out = to_q(1)
        for i in range(lo, hi + 1):
            out *= self.lam[i - 1]
        return out

    def lam_pq(self, p: int, q: int):
        return self.prod(self.k - q + 1, self.k - p)


def pair_family_ideal(spec: PairFamilySpec) -> Ideal:
    """The k^2 quadrics gamma_{p,q}, delta_{p,q} for the given lambda.

    gamma_{p,q} = (x_p + lambda_1...lambda_{k-p} x_{n-k_p}) x_q and
    delta_{p,q} = x_p x_{n-k_q} - lambda_{k-q+1}...lambda_{k-p} x_q x_{n-k_p},
    with k_i = k-1-i.
    """
    k, n = spec.k, spec.n
    R = standard_ring(n)
    x = R.gens()
    kk = lambda i: k - 1 - i
    gens = []
    for p in range(k):
        lead = x[p] + x[n - kk(p)] * spec.prod(1, k - p)
        gens.extend(lead * x[q] for q in range(k))
    for p in range(k):
        for q in range(p + 1, k):
            gens.append(x[p] * x[n - kk(q)] - x[q] * x[n - kk(p)] * spec.lam_pq(p, q))
    return Ideal(gens, R)


def pair_family_order(k: int, n: int) -> MonomialOrder:
    """Lex with x0 > ... > x_{k-1} > x_n > x_{n-1} > ... > x_k."""
    return permuted_lex(list(range(k)) + list(range(n, k - 1, -1)))


def initial_set_C(k: int, n: int) -> Ideal:
    """{x0..x_{k-1}}^2 together with x_i x_j for i <= k-2 and n-k+2+i <= j <= n."""
    nv = n + 1
    unit = lambda i: tuple(1 if t == i else 0 for t in range(nv))
    add = lambda a, b: tuple(u + v for u, v in zip(a, b))
    monos = [add(unit(i), unit(j)) for i in range(k) for j in range(i, k)]
    for i in range(k - 1):
        for j in range(n - k + 2 + i, n + 1):
            monos.append(add(unit(i), unit(j)))
    return monomial_ideal(standard_ring(n), monos)


def verify_pair_family(k: int, n: int, samples: int = 20, seed: int = 0) -> dict:
    """For seeded random lambda and every zero pattern: the k^2 quadrics are a
    Groebner basis with initial ideal C under the permuted lex order, and the
    Hilbert polynomial is that of an (n-k)-plane pair."""
    rng = random.Random(f"lambda:{seed}:{k}:{n}")
    specs = [PairFamilySpec(k, n, _sample_lambda(rng, k)) for _ in range(samples)]
    specs += boundary_specs(k, n, rng)
    order = pair_family_order(k, n)
    C = initial_set_C(k, n)
    P = pair_hilbert_polynomial(n - k, n - k, n)
    failures = []
    for s in specs:
        I = pair_family_ideal(s)
        init_ok = ideal_equal(I.initial_ideal(order), C)
        hp_ok = hilbert_polynomial(I) == P
        if not (init_ok and hp_ok):
            failures.append({"lambda": [str(x) for x in s.lam], "initial_ok": init_ok, "hilbert_ok": hp_ok})
    return {"k": k, "n": n, "checked": len(specs), "patterns": sorted(
        "".join("1" if b else "0" for b in orbit_signature(s)) for s in specs[samples:]),
        "initial_ideal": [str(g) for g in C.generators], "hilbert_polynomial": P.formula(),
        "failures": failures, "pass": not failures}


def lambda_k_rule(row: dict, k: int, n: int):
    """The three-case choice of lambda_k from the row T^{(k)}_{0,j}, j = k..n-k+1.

    Returns (lambda_k, substitution) where the substitution maps variable
    indices to {index: coefficient} linear forms (identity when empty).
    """
    piv = n - (k - 1)
    row = {j: to_q(v) for j, v in row.items() if v}
    if not row:
        return to_q(0), {}
    if piv in row:
        t = row[piv]
        form = {piv: to_q(1)}
        for j in range(k, n - k + 1):
            if j in row:
                form[j] = form.get(j, 0) - row[j] / t
        return t, {piv: form}
    ell = max(row)
    t = row[ell]
    form = {piv: to_q(1)}
    for j in range(k, ell + 1):
        if j in row:
            form[j] = form.get(j, 0) - row[j] / t
    return t, {ell: form, piv: {ell: to_q(1)}}


def orbit_signature(spec: PairFamilySpec) -> tuple:
    """Which lambda_i are nonzero; this pattern determines the orbit."""
    return tuple(bool(l) for l in spec.lam)


def _sample_lambda(rng: random.Random, k: int) -> tuple:
    return tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(k))


def boundary_specs(k: int, n: int, rng: random.Random | None = None) -> list[PairFamilySpec]:
    """One PairFamilySpec per zero pattern of lambda; nonzero slots are random (or 1)."""
    out = []
    for pattern in product([False, True], repeat=k):
        lam = []
        for on in pattern:
            if not on:
                lam.append(0)
            elif rng is None:
                lam.append(1)
            else:
                v = 0
                while not v:
                    v = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                lam.append(v)
        out.append(PairFamilySpec(k, n, tuple(lam)))
    return out


def orbit_signatures(k: int, n: int, sample_count: int = 20, seed: int = 0) -> set:
    """Zero patterns realized by random lambda draws plus every boundary pattern."""
    rng = random.Random(f"lambda:{seed}:{k}:{n}")
    specs = [PairFamilySpec(k, n, _sample_lambda(rng, k)) for _ in range(sample_count)]
    specs += boundary_specs(k, n, rng)
    return {orbit_signature(s) for s in specs}


def _det(M):
    if len(M) == 1:
        return M[0][0]
    out = M[0][0].ring.zero()
    for j, a in enumerate(M[0]):
        if a:
            minor = [row[:j] + row[j + 1:] for row in M[1:]]
            out = out + a * _det(minor) * (-1 if j % 2 else 1)
    return out


def singular_locus_dim(I: Ideal, codim: int) -> int:
    """Krull dimension of S/(I + codim-minors of the Jacobian of the generators).

    A double structure is singular along its whole support, while a reduced
    pair of planes is singular only where the planes meet.
    """
    gens = list(I.generators)
    nv = I.ring.nvars
    J = [[g.derivative(j) for j in range(nv)] for g in gens]
    span = Echelon()
    minors = []
    for rows in combinations(range(len(gens)), codim):
        for cols in combinations(range(nv), codim):
            m = _det([[J[r][c] for c in cols] for r in rows])
            if m and span.add(dict(m.terms)):
                minors.append(m)
    return krull_dim(Ideal(gens + minors, I.ring))


def orbit_fingerprint(I: Ideal, codim: int) -> tuple:
    """Projective invariants separating the orbits: dims of Hom(I,S/I) in
    degrees -1, 0 and the dimension of the singular locus."""
    return (hom_dim(I, -1), hom_dim(I, 0), singular_locus_dim(I, codim))


def match_orbits(k: int, n: int, seed: int = 0) -> dict:
    """Map each lambda zero pattern to the catalog type with the same fingerprint.

    Returns {signature: label}; raises if fingerprints fail to separate the
    catalog types or a pattern matches no type.
    """
    fam = {2: "fixed", 3: "twoplane"}.get(k)
    if fam is None:
        raise ValueError("catalogs exist for k = 2 and k = 3")
    prints: dict = {}
    for e in catalog_ideals(fam, n):
        fp = orbit_fingerprint(e.ideal, k)
        if fp in prints:
            raise RuntimeError(f"types {prints[fp]} and {e.label} share a fingerprint")
        prints[fp] = e.label
    out = {}
    for s in boundary_specs(k, n, random.Random(f"orbits:{seed}:{k}:{n}")):
        fp = orbit_fingerprint(pair_family_ideal(s), k)
        if fp not in prints:
            raise RuntimeError(f"pattern {orbit_signature(s)} matches no catalog type")
        out[orbit_signature(s)] = prints[fp]
    return out

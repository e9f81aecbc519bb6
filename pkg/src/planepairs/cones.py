"""Divisor class arithmetic on three pair components, driven by transcribed
intersection tables.

No intersection theory is done here.  The tables below are data; the checks
are that the stated linear relations, canonical classes and ampleness
verdicts are consistent with that data, in exact rational arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import dense_rank, solve

__all__ = ["FAMILY_NAMES", "DivisorClass", "IntersectionTable", "intersection_table",
           "express_in_basis", "canonical_class", "canonical_class_derived", "cone_contains",
           "nef_generators", "effective_generators", "is_fano", "log_fano_witness",
           "verify_tables", "stated_relations", "family_key", "MIN_N"]

# H(1,n-2,n), H(n-3,n-3,n), H(2,2,n)
FAMILY_NAMES = {"line-plane": "H(1,n-2,n)", "pair-3": "H(n-3,n-3,n)", "pair-2-2": "H(2,2,n)"}
_ALIASES = {v: k for k, v in FAMILY_NAMES.items()}
MIN_N = {"line-plane": 4, "pair-3": 5, "pair-2-2": 6}


def family_key(name: str) -> str:
    if name in FAMILY_NAMES:
        return name
    if name in _ALIASES:
        return _ALIASES[name]
    raise ValueError(f"unsupported family {name!r}; choose from {sorted(FAMILY_NAMES)}")


@dataclass(frozen=True)
class DivisorClass:
    family: str
    n: int
    basis: tuple
    coords: tuple

    def __post_init__(self):
        if len(self.basis) != len(self.coords):
            raise ValueError("coordinate count does not match the basis")
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def _same(self, other: "DivisorClass"):
        if (self.family, self.n, self.basis) != (other.family, other.n, other.basis):
            raise ValueError("classes live in different Picard groups")

    def __add__(self, other):
        self._same(other)
        return DivisorClass(self.family, self.n, self.basis,
                            tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return DivisorClass(self.family, self.n, self.basis, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "DivisorClass":
        c = Fraction(c)
        return DivisorClass(self.family, self.n, self.basis, tuple(c * a for a in self.coords))

    def as_dict(self) -> dict:
        return {b: str(c) for b, c in zip(self.basis, self.coords)}

    def formula(self) -> str:
        parts = []
        for b, c in zip(self.basis, self.coords):
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            parts.append(f"{sign} {b}" if mag == 1 else f"{sign} {mag}{b}")
        if not parts:
            return "0"
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


@dataclass
class IntersectionTable:
    """Pairings divisor . curve; a missing key means the value is not printed.

    ``inferred`` lists (divisor, curve) entries that are not printed but are
    forced by the construction of the curve; they are used and reported.
    """
    family: str
    divisors: tuple
    curves: tuple
    values: dict
    basis: tuple
    inferred: tuple = ()
    notes: list = field(default_factory=list)

    def get(self, d: str, c: str):
        return self.values.get((d, c))

    def missing(self) -> list:
        return [(d, c) for d in self.divisors for c in self.curves if (d, c) not in self.values]


def _fill(table: dict, rows: dict, curves: Sequence[str]):
    for d, vals in rows.items():
        for c, v in zip(curves, vals):
            if v is not None:
                table[(d, c)] = Fraction(v)


def intersection_table(family: str) -> IntersectionTable:
    fam = family_key(family)
    values: dict = {}
    if fam == "line-plane":
        curves = ("B1", "B1'", "B2", "B2'", "B3", "B3'", "B4")
        _ = None
        _fill(values, {
            "D1": (1, 1, 0, 0, _, _, 1),
            "D2": (1, 0, 1, 0, 2, 0, 0),
            "D2'": (0, 1, 0, 1, 0, 2, 0),
            "N1": (0, 0, 1, 1, 1, 1, _),
            "N2": (1, 1, _, _, 0, 0, 2),
        }, curves)
        return IntersectionTable(fam, ("D1", "D2", "D2'", "N1", "N2"), curves, values,
                                 basis=("D1", "D2", "D2'"))
    curves7 = ("C1", "C2", "C3", "C4", "C5", "C6", "C7")
    _ = None
    rows = {
        "D1": (1, 0, 0, 0, 1, _, _),
        "D2": (0, 1, 0, 1, 1, _, _),
        "D3": (0, 0, 1, 1, 1, _, _),
        "N1": (0, _, 2, 0, 0, 0, _),
        "N2": (_, 2, _, 1, 0, _, 0),
        "N3": (2, _, 0, _, 1, 0, 0),
    }
    if fam == "pair-3":
        _fill(values, rows, curves7)
        return IntersectionTable(fam, ("D1", "D2", "D3", "N1", "N2", "N3"), curves7, values,
                                 basis=("D1", "D2", "D3"))
    # H(2,2,n): the primed classes pair with C_i' as the unprimed ones with C_i
    curves = tuple(c + "'" for c in curves7) + ("C8'", "C9'")
    _fill(values, {d + "'": v for d, v in rows.items()}, curves[:7])
    for d in ("D1'", "D2'", "D3'"):
        values[(d, "C8'")] = Fraction(1)
        values[(d, "C9'")] = Fraction(0)
    for d in ("N1'", "N2'", "N3'"):
        values[(d, "C8'")] = Fraction(0)
    values[("F", "C8'")] = Fraction(1)
    values[("F", "C9'")] = Fraction(1)
    # C_1'..C_7' sit inside a 5-plane complementary to the fixed plane defining F
    inferred = tuple(("F", c) for c in curves[:7])
    for key in inferred:
        values[key] = Fraction(0)
    return IntersectionTable(fam, ("D1'", "D2'", "D3'", "F", "N1'", "N2'", "N3'"), curves, values,
                             basis=("D1'", "D2'", "D3'", "F"), inferred=inferred,
                             notes=["F . C_i' = 0 for i <= 7 is not printed; it holds because "
                                    "those curves lie in a 5-plane missing the plane defining F"])


def stated_relations(family: str) -> dict:
    """The relations expressing the N classes in the D basis, as printed."""
    fam = family_key(family)
    if fam == "line-plane":
        return {"N1": (-1, 1, 1), "N2": (2, -1, -1)}
    if fam == "pair-3":
        return {"N1": (0, -2, 2), "N2": (-1, 2, -1), "N3": (2, -1, 0)}
    return {"N1'": (0, -2, 2, 0), "N2'": (-1, 2, -1, 0), "N3'": (2, -1, 0, -1)}


def express_in_basis(target: str, basis: Sequence[str], T: IntersectionTable) -> dict:
    """Coordinates of ``target`` in ``basis`` from the pairings in T.

    Every curve on which the target and all basis classes are printed gives
    one equation.  The system must have a unique solution; an inconsistent
    system signals a transcription error and raises.
    """
    used, A, b = [], [], []
    for c in T.curves:
        row = [T.get(d, c) for d in basis]
        rhs = T.get(target, c)
        if rhs is None or any(v is None for v in row):
            continue
        used.append(c)
        A.append(row)
        b.append(rhs)
    if not A or dense_rank(A) < len(basis):
        raise ValueError(f"pairings of {list(basis)} on the usable curves are singular")
    x = solve(A, b)
    if x is None:
        raise ValueError(f"{target}: pairings are inconsistent with any class in {list(basis)}")
    return {"coords": tuple(Fraction(v) for v in x), "curves": used,
            "held_out": len(used) - len(basis)}


def _cls(fam: str, n: int, coords) -> DivisorClass:
    return DivisorClass(fam, n, intersection_table(fam).basis, tuple(coords))


def _need_n(fam: str, n: int):
    if n < MIN_N[fam]:
        raise ValueError(f"{FAMILY_NAMES[fam]} needs n >= {MIN_N[fam]}")


def canonical_class(family: str, n: int) -> DivisorClass:
    """The printed canonical class formula at n."""
    fam = family_key(family)
    _need_n(fam, n)
    if fam == "line-plane":
        return _cls(fam, n, (-3, -(n - 2), -(n - 2)))
    if fam == "pair-3":
        return _cls(fam, n, (-(2 * n - 7), n - 6, -2))
    return _cls(fam, n, (-3, -1, -2, -(n - 5)))


def canonical_class_derived(family: str, n: int) -> DivisorClass:
    """The canonical class rebuilt from the ingredients of its derivation and
    the recovered N-relations, independently of the final printed formula.

    line-plane: pullback of K of G(1,n) x G(n-2,n), i.e. -(n+1)(D2 + D2'), plus 3 N1.
    pair-3:     a N1 + b N2 + c D3 with 2a = 3n-8, b = 2n-7, c = -(n+1).
    pair-2-2:   the pair-3 class in primed letters plus (n-5) N3'.
    """
    fam = family_key(family)
    _need_n(fam, n)
    T = intersection_table(fam)
    rel = lambda name: _cls(fam, n, express_in_basis(name, T.basis, T)["coords"])
    if fam == "line-plane":
        return _cls(fam, n, (0, -(n + 1), -(n + 1))) + rel("N1").scale(3)
    if fam == "pair-3":
        D3 = _cls(fam, n, (0, 0, 1))
        return rel("N1").scale(Fraction(3 * n - 8, 2)) + rel("N2").scale(2 * n - 7) + D3.scale(-(n + 1))
    K3 = _cls(fam, n, tuple(canonical_class_derived("pair-3", n).coords) + (0,))
    return K3 + rel("N3'").scale(n - 5)


def nef_generators(family: str, n: int) -> list:
    fam = family_key(family)
    dim = len(intersection_table(fam).basis)
    return [_cls(fam, n, tuple(1 if j == i else 0 for j in range(dim))) for i in range(dim)]


def effective_generators(family: str, n: int) -> list:
    fam = family_key(family)
    T = intersection_table(fam)
    gens = [_cls(fam, n, c) for c in stated_relations(fam).values()]
    if fam == "line-plane":
        gens = [_cls(fam, n, (0, 1, 0)), _cls(fam, n, (0, 0, 1))] + gens
    assert all(g.basis == T.basis for g in gens)
    return gens


def cone_contains(v: DivisorClass, generators: Sequence[DivisorClass], strict: bool = False) -> bool:
    """v = sum l_i g_i with all l_i >= 0 (> 0 when strict); generators must be independent."""
    G = [list(g.coords) for g in generators]
    if dense_rank(G) != len(G):
        raise ValueError("cone generators are not linearly independent")
    if len(G) != len(v.coords):
        raise ValueError("cone is not full-dimensional")
    A = [[G[j][i] for j in range(len(G))] for i in range(len(v.coords))]
    lam = solve(A, list(v.coords))
    if lam is None:
        return False
    return all(l > 0 for l in lam) if strict else all(l >= 0 for l in lam)


def is_fano(family: str, n: int) -> bool:
    """-K in the interior of the nef cone, i.e. ample."""
    return cone_contains(-canonical_class(family, n), nef_generators(family, n), strict=True)


def log_fano_witness(family: str, n: int, boundary: str, depth: int = 10) -> Fraction | None:
    """Largest eps in {1/2, 1/4, ..., 2^-depth} with -K - eps*B ample, or None.

    ``boundary`` names a basis divisor or an N class of the family.
    """
    fam = family_key(family)
    T = intersection_table(fam)
    if boundary in T.basis:
        B = _cls(fam, n, tuple(1 if b == boundary else 0 for b in T.basis))
    else:
        B = _cls(fam, n, express_in_basis(boundary, T.basis, T)["coords"])
    minusK = -canonical_class(fam, n)
    nef = nef_generators(fam, n)
    for k in range(1, depth + 1):
        eps = Fraction(1, 2 ** k)
        if cone_contains(minusK - B.scale(eps), nef, strict=True):
            return eps
    return None


def verify_tables(family: str) -> dict:
    """Recover every printed relation from the table and cross-check it."""
    fam = family_key(family)
    T = intersection_table(fam)
    rep: dict = {"family": FAMILY_NAMES[fam], "basis": list(T.basis), "relations": {}}
    ok = True
    for name, coords in stated_relations(fam).items():
        r = express_in_basis(name, T.basis, T)
        match = tuple(r["coords"]) == tuple(Fraction(c) for c in coords)
        ok = ok and match
        rep["relations"][name] = {"computed": [str(c) for c in r["coords"]],
                                  "stated": [str(c) for c in coords],
                                  "curves": r["curves"], "held_out_checks": r["held_out"],
                                  "pass": match}
    if fam == "pair-2-2":
        # the two-step argument: relations from C_1'..C_7' in the D' basis,
        # then the F coefficient from the pairings with C_8'
        T7 = IntersectionTable(fam, T.divisors, T.curves[:7], T.values, T.basis[:3])
        steps = {}
        for name, coords in stated_relations(fam).items():
            a = express_in_basis(name, T7.basis, T7)["coords"]
            lhs = T.get(name, "C8'") - sum(c * T.get(d, "C8'") for c, d in zip(a, T7.basis))
            f = lhs / T.get("F", "C8'")
            steps[name] = [str(c) for c in a] + [str(f)]
            ok = ok and tuple(a) + (f,) == tuple(Fraction(c) for c in coords)
        rep["two_step"] = steps
    # the effective cone is claimed simplicial only for the pair-3 family; the
    # line-plane family has four effective rays in a rank-three group
    if fam == "pair-3":
        eff = [list(g.coords) for g in effective_generators(fam, MIN_N[fam])]
        rep["effective_simplicial"] = len(eff) == len(T.basis) and dense_rank(eff) == len(eff)
    rep["nef_simplicial"] = dense_rank([list(g.coords) for g in nef_generators(fam, MIN_N[fam])]) == len(T.basis)
    rep["unprinted_pairings"] = [f"{d}.{c}" for d, c in T.missing()]
    rep["inferred_pairings"] = [f"{d}.{c}" for d, c in T.inferred]
    rep["pass"] = bool(ok and rep["nef_simplicial"] and rep.get("effective_simplicial", True))
    return rep

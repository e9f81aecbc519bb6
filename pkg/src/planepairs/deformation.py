"""The two explicit versal deformations (at I_{1,2,4} in P^4 and at J_3 in
P^3) as data, with machine checks, plus generic determinantal ideals.

Everything lives in one ring S[u] = k[x0..xn, u1..um].  Products of the
perturbed generator row and syzygy matrix must vanish modulo I + J; this is
decided by exact membership in a Groebner basis of I*S[u] + J*S[u].
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations

from .groebner import GREVLEX, Ideal, ideal_equal, intersect
from .hilbert import krull_dim
from .linalg import Echelon, rank
from .poly import PolyRing, Polynomial
from .resolution import minimal_free_resolution, module_contains, syzygies
from .tangent import HomSystem, hom_degree_zero_dim

__all__ = ["VersalFamilyData", "versal_data", "verify_versal", "verify_obstruction_ideal",
           "DeterminantalSpec", "determinantal_ideal", "trivial_vectors", "mutations", "mutation_scan",
           "Y_spec", "Z_spec", "CASES"]

CASES = ("i124", "j3")


@dataclass
class VersalFamilyData:
    case: str
    n: int
    m: int                       # number of u variables
    phi0: list                   # generators of I (strings, printed order)
    phi1: list                   # syzygy matrix of I (rows of strings)
    phi0_inf: list               # perturbed generators in S[u]
    phi1_inf: list               # perturbed syzygy matrix in S[u]
    J: list                      # obstruction ideal generators in k[u]
    J_presentation: list         # list of components; each a list of generator strings
    trivial: dict                # printed trivial vectors: label -> column of strings
    nontrivial: list             # printed d/du_i vectors: columns of strings
    components: list = field(default_factory=list)   # component ideals when J is a union
    errata: dict = field(default_factory=dict)       # {"phi0_inf": {i: str}, "J": [str], "notes": [str]}

    def corrected(self) -> "VersalFamilyData":
        """A copy with the errata applied (the data itself when there are none)."""
        if not self.errata:
            return self
        phi0_inf = list(self.phi0_inf)
        for i, g in self.errata.get("phi0_inf", {}).items():
            phi0_inf[i] = g
        return replace(self, phi0_inf=phi0_inf, J=self.J + list(self.errata.get("J", [])), errata={})

    @property
    def ring(self) -> PolyRing:
        return PolyRing([f"x{i}" for i in range(self.n + 1)] + [f"u{i}" for i in range(1, self.m + 1)])

    @property
    def x_ring(self) -> PolyRing:
        return PolyRing([f"x{i}" for i in range(self.n + 1)])

    @property
    def u_ring(self) -> PolyRing:
        return PolyRing([f"u{i}" for i in range(1, self.m + 1)])


def _col(*entries):
    return [e if e else "0" for e in entries]


def _minors2(rows):
    out = []
    for a, b in combinations(range(len(rows)), 2):
        for c, d in combinations(range(len(rows[0])), 2):
            out.append(f"({rows[a][c]})*({rows[b][d]}) - ({rows[a][d]})*({rows[b][c]})")
    return out


def _i124() -> VersalFamilyData:
    phi0 = ["x0^2", "x0*x1", "x1^2", "x0*x2", "x1*x2", "x0*x3"]
    phi1 = [
        ["-x1", "0", "-x2", "0", "0", "0", "-x3", "0", "0"],
        ["x0", "-x1", "0", "-x2", "0", "0", "0", "-x3", "0"],
        ["0", "x0", "0", "0", "0", "-x2", "0", "0", "0"],
        ["0", "0", "x0", "x1", "-x1", "0", "0", "0", "-x3"],
        ["0", "0", "0", "0", "x0", "x1", "0", "0", "0"],
        ["0", "0", "0", "0", "0", "0", "x0", "x1", "x2"],
    ]
    phi0_inf = [
        "x0^2 + u1*x0*x4 + u6^2*u8^2*x4^2",
        "x0*x1 + u2*x0*x4 + 2*u6*u7*u8*x4^2 + u6^2*u8*x3*x4",
        "x1^2 + u3*x0*x4 - u7^2*x4^2 - 2*u6*u7*x3*x4 - u3*u6*u8*x4^2",
        "x0*x2 + u4*x0*x4 - u6*u8*x2*x4",
        "x1*x2 + u5*x0*x4 + u6*x2*x3 + u7*x2*x4 - u5*u6*u8*x4^2",
        "x0*x3 + u8*x1*x4 + u7*u8*x4^2",
    ]
    phi1_inf = [
        ["-x1 - u2*x4", "-u3*x4", "-x2 - u4*x4", "0", "-u5*x4", "0", "-x3", "0", "0"],
        ["x0 + u1*x4", "-x1 + u2*x4", "0", "-x2 - u4*x4", "u4*x4", "-u5*x4", "-u8*x4", "-x3", "0"],
        ["0", "x0", "0", "0", "0", "-x2", "0", "-u8*x4", "0"],
        ["0", "0", "x0 + u1*x4 + u6*u8*x4", "x1 + u2*x4", "-x1 - u7*x4", "u3*x4", "0", "0", "-x3"],
        ["0", "0", "0", "u6*u8*x4", "x0", "x1 - u6*x3 - u7*x4", "0", "0", "-u8*x4"],
        ["-u6^2*u8*x4", "u6^2*x3 + 2*u6*u7*x4", "0", "0", "-u6*x2", "u5*u6*x4",
         "x0 + u1*x4", "x1 + u2*x4", "x2 + u4*x4"],
    ]
    J = ["u7*u8", "u5*u8", "u3*u8", "u2*u8", "u1*u8", "u3*u4 - u5*(u2 + u7)",
         "u4*(u2 - u7) - u1*u5", "(u2 - u7)*(u2 + u7) - u1*u3"]
    A = ["u8"] + _minors2([["u5", "u2 - u7", "u3"], ["u4", "u1", "u2 + u7"]])
    B = ["u1", "u2", "u3", "u4", "u5", "u7"]
    trivial = {
        "01": _col(0, 0, 0, 0, 0, "x1*x3"),
        "02": _col(0, 0, 0, "x2^2", 0, "x1*x3"),
        "03": _col(0, "x1*x3", 0, "x2*x3", 0, "x1*x3"),
        "04": _col("2*x0*x4", "x1*x4", 0, "x2*x4", 0, "x3*x4"),
        "12": _col(0, 0, 0, 0, "x2^2", 0),
        "13": _col(0, 0, "2*x1*x3", 0, "x2*x3", 0),
        "14": _col(0, "x0*x4", "2*x1*x4", 0, "x2*x4", 0),
        "23": _col(0, 0, 0, 0, "x3*x1", 0),
        "24": _col(0, 0, 0, "x0*x4", "x1*x4", 0),
        "34": _col(0, 0, 0, 0, 0, "x0*x4"),
    }
    nontrivial = [
        _col("x0*x4", 0, 0, 0, 0, 0), _col(0, "x0*x4", 0, 0, 0, 0), _col(0, 0, "x0*x4", 0, 0, 0),
        _col(0, 0, 0, "x0*x4", 0, 0), _col(0, 0, 0, 0, "x0*x4", 0), _col(0, 0, 0, 0, "x2*x3", 0),
        _col(0, 0, 0, 0, "x2*x4", 0), _col(0, 0, 0, 0, 0, "x1*x4"),
    ]
    # As printed, phi0_inf * phi1_inf fails to vanish mod I + J in eight columns
    # and J is strictly smaller than the intersection A cap B.  These three
    # changes make both identities hold exactly.
    errata = {
        "phi0_inf": {0: "x0^2 + u1*x0*x4 - u6^2*u8^2*x4^2",
                     2: phi0_inf[2] + " - u6^2*x3^2"},
        "J": ["u4*u8"],
        "notes": ["generator 1: the u6^2*u8^2*x4^2 term has a minus sign",
                  "generator 3: the term -u6^2*x3^2 is missing",
                  "J: the generator u4*u8 is missing"],
    }
    return VersalFamilyData("i124", 4, 8, phi0, phi1, phi0_inf, phi1_inf, J, [A, B],
                            trivial, nontrivial, components=[A, B], errata=errata)


def _j3() -> VersalFamilyData:
    phi0 = ["x0^2", "x0*x1", "x1^2", "x0*x2", "x1*x2"]
    phi1 = [
        ["-x1", "0", "-x2", "0", "0", "0"],
        ["x0", "-x1", "0", "-x2", "0", "0"],
        ["0", "x0", "0", "0", "0", "-x2"],
        ["0", "0", "x0", "x1", "-x1", "0"],
        ["0", "0", "0", "0", "x0", "x1"],
    ]
    phi0_inf = [
        "x0^2 + u1*x0*x3 + u2*x1*x3",
        "x0*x1 + u3*x0*x3 + u4*x1*x3",
        "x1^2 + u5*x0*x3 + u6*x1*x3",
        "x0*x2 + u7*x0*x3 + u8*x1*x3 + u4*u7*x3^2 + u6*u8*x3^2 - u2*u9*x3^2",
        "x1*x2 + u9*x0*x3 - u5*u8*x3^2 + u4*u9*x3^2",
    ]
    phi1_inf = [
        ["-x1 - u3*x3", "-u5*x3", "-x2 - u7*x3", "0", "-u9*x3", "0"],
        ["x0 + u1*x3 - u4*x3", "-x1 + u3*x3 - u6*x3", "-u8*x3", "-x2 - u7*x3", "u7*x3", "-u9*x3"],
        ["u2*x3", "x0 + u4*x3", "0", "-u8*x3", "u8*x3", "-x2"],
        ["0", "0", "x0 + u1*x3", "x1 + u3*x3", "-x1", "u5*x3"],
        ["0", "0", "u2*x3", "u4*x3", "x0", "x1 + u6*x3"],
    ]
    J = ["u5*u8 - u4*u9", "u3*u8 - u2*u9", "u5*u7 - u3*u9 + u6*u9", "u4*u7 + u6*u8 - u3*u8",
         "u3*u7 - u1*u9 + u4*u9", "u2*u7 - u1*u8 + u4*u8", "u3*u4 - u2*u5",
         "u3^2 - u1*u5 + u4*u5 - u3*u6", "u2*u3 - u1*u4 + u4^2 - u2*u6"]
    Z = _minors2([["u5", "u4", "u3 - u6"], ["u9", "u8", "u7"], ["u3", "u2", "u1 - u4"]])
    trivial = {
        "02": _col(0, 0, 0, "x2^2", 0),
        "03": _col("2*x0*x3", "x1*x3", 0, "x2*x3", 0),
        "12": _col(0, 0, 0, 0, "x2^2"),
        "13": _col(0, "x0*x3", "2*x1*x3", 0, "x2*x3"),
        "23": _col(0, 0, 0, "x0*x3", "x1*x3"),
    }
    nontrivial = [
        _col("x0*x3", 0, 0, 0, 0), _col("x1*x3", 0, 0, 0, 0), _col(0, "x0*x3", 0, 0, 0),
        _col(0, "x1*x3", 0, 0, 0), _col(0, 0, "x0*x3", 0, 0), _col(0, 0, "x1*x3", 0, 0),
        _col(0, 0, 0, "x0*x3", 0), _col(0, 0, 0, "x1*x3", 0), _col(0, 0, 0, 0, "x0*x3"),
    ]
    return VersalFamilyData("j3", 3, 9, phi0, phi1, phi0_inf, phi1_inf, J, [Z], trivial, nontrivial,
                            components=[Z])


def versal_data(case: str) -> VersalFamilyData:
    if case == "i124":
        return _i124()
    if case == "j3":
        return _j3()
    raise ValueError(f"unknown case {case!r}; choose from {CASES}")


# ---------------------------------------------------------------- checks

def _parse_matrix(R: PolyRing, rows) -> list[list[Polynomial]]:
    return [[R.parse(e) for e in row] for row in rows]


def _product(row: list, M: list) -> list:
    R = row[0].ring
    out = []
    for c in range(len(M[0])):
        acc = R.zero()
        for r, g in enumerate(row):
            if M[r][c]:
                acc = acc + g * M[r][c]
        out.append(acc)
    return out


def _at_u_zero(p: Polynomial, data: VersalFamilyData) -> Polynomial:
    nx = data.n + 1
    return p.set_zero(range(nx, nx + data.m)).map_ring(data.x_ring, list(range(nx)) + [0] * data.m)


def trivial_vectors(data: VersalFamilyData) -> dict:
    """x_j d/dx_i applied to the generators, reduced mod I, for i < j; zero ones dropped."""
    R = data.x_ring
    I = Ideal(data.phi0, R)
    gens = list(I.generators)
    xs = R.gens()
    out = {}
    for i in range(data.n + 1):
        for j in range(i + 1, data.n + 1):
            col = [I.normal_form(g.derivative(i) * xs[j]) for g in gens]
            if any(col):
                out[f"{i}{j}"] = col
    return out


def mutations(data: VersalFamilyData):
    """Yield (row, col, term, mutated matrix): each existing coefficient of phi1_inf, plus one."""
    R = data.ring
    M = _parse_matrix(R, data.phi1_inf)
    for r, row in enumerate(M):
        for c, p in enumerate(row):
            for e, coef in sorted(p.terms.items()):
                q = dict(p.terms)
                q[e] = coef + 1
                if not q[e]:
                    del q[e]
                M2 = [list(x) for x in M]
                M2[r][c] = Polynomial(R, q)
                yield r, c, str(R.monomial(e)), M2


def _flat_failures(data, phi0_inf, M, gb_weak, gb_strong):
    prod = _product(phi0_inf, M)
    weak = [c for c, p in enumerate(prod) if gb_weak.normal_form(p)]
    strong = [c for c, p in enumerate(prod) if gb_strong.normal_form(p)]
    return prod, weak, strong


def _load(case: str, printed: bool) -> tuple:
    raw = versal_data(case)
    data = raw if printed else raw.corrected()
    applied = [] if printed else list(raw.errata.get("notes", []))
    return data, applied


def _flat_bases(data: VersalFamilyData) -> tuple:
    R = data.ring
    I_ext = [R.parse(s) for s in data.phi0]
    J_ext = [R.parse(s) for s in data.J]
    gb_weak = Ideal(I_ext + J_ext, R, homogeneous=False).groebner(GREVLEX)
    gb_strong = Ideal(J_ext, R, homogeneous=False).groebner(GREVLEX)
    return gb_weak, gb_strong


def verify_versal(case: str, mutate: tuple | None = None, printed: bool = False) -> dict:
    """Lift, flatness and tangent-vector checks.

    By default the errata recorded with the data are applied first; pass
    ``printed=True`` to check the data exactly as transcribed.  ``mutate`` =
    (row, col, delta_term) adds a perturbation to one entry of phi1_inf
    before checking, e.g. (5, 6, "u1*x4").
    """
    data, applied = _load(case, printed)
    R = data.ring
    rep: dict = {"case": case, "n": data.n, "u_count": data.m, "errata_applied": applied}
    phi0_inf = [R.parse(s) for s in data.phi0_inf]
    M = _parse_matrix(R, data.phi1_inf)
    if mutate is not None:
        r, c, term = mutate
        M[r][c] = M[r][c] + R.parse(term)
        rep["mutation"] = {"row": r, "col": c, "added": term}
    # lifts
    S = data.x_ring
    phi0 = [S.parse(s) for s in data.phi0]
    phi1 = _parse_matrix(S, data.phi1)
    rep["lift_phi0"] = all(_at_u_zero(p, data) == q for p, q in zip(phi0_inf, phi0))
    rep["lift_phi1"] = all(_at_u_zero(M[r][c], data) == phi1[r][c]
                           for r in range(len(phi1)) for c in range(len(phi1[0])))
    rep["phi1_is_syzygy_matrix"] = all(not p for p in _product(phi0, phi1))
    # flatness: phi0_inf * phi1_inf = 0 modulo I + J, and modulo J alone
    gb_weak, gb_strong = _flat_bases(data)
    _, weak, strong = _flat_failures(data, phi0_inf, M, gb_weak, gb_strong)
    rep["flatness"] = not weak
    rep["flatness_failed_columns"] = weak
    rep["flatness_strong"] = not strong
    rep["flatness_strong_failed_columns"] = strong
    # tangent vectors
    I = Ideal(phi0, S)
    sysm = HomSystem(I)
    triv_printed = {k: [S.parse(e) for e in v] for k, v in data.trivial.items()}
    triv = trivial_vectors(data)
    rep["trivial_printed_valid"] = {k: sysm.is_hom(v) for k, v in triv_printed.items()}
    rep["trivial_printed_matches_jacobian"] = {
        k: (k in triv and all(not I.normal_form(a - b) for a, b in zip(v, triv[k])))
        for k, v in triv_printed.items()}
    rep["trivial_count"] = len(triv)
    nontriv = [[S.parse(e) for e in v] for v in data.nontrivial]
    rep["nontrivial_valid"] = all(sysm.is_hom(v) for v in nontriv)
    homs = list(triv.values()) + nontriv
    ech = Echelon()
    for h in homs:
        ech.add(sysm.image_vector(h))
    rep["independent"] = len(ech) == len(homs)
    rep["tangent_count"] = len(homs)
    rep["hom_dim"] = sysm.dimension()
    rep["tangent_ok"] = rep["independent"] and rep["tangent_count"] == rep["hom_dim"]
    # the printed syzygy columns generate all syzygies and are minimally many
    printed_cols = [[phi1[r][c] for r in range(len(phi1))] for c in range(len(phi1[0]))]
    shifts = [g.degree() for g in phi0]
    _, betti = minimal_free_resolution(I)
    rep["resolution_agrees"] = (len(printed_cols) == betti.totals()[2] and all(
        module_contains(printed_cols, col, shifts) for col in syzygies(phi0).columns()))
    rep["pass"] = bool(rep["lift_phi0"] and rep["lift_phi1"] and rep["phi1_is_syzygy_matrix"]
                       and rep["flatness"] and rep["flatness_strong"] and rep["nontrivial_valid"]
                       and rep["tangent_ok"] and rep["resolution_agrees"])
    return rep


def mutation_scan(case: str, printed: bool = False) -> dict:
    """Perturb every coefficient of phi1_inf in turn; count what each check catches."""
    data, _ = _load(case, printed)
    R = data.ring
    phi0_inf = [R.parse(s) for s in data.phi0_inf]
    gb_weak, gb_strong = _flat_bases(data)
    total = weak_hits = strong_hits = 0
    missed = []
    for r, c, term, M2 in mutations(data):
        total += 1
        _, weak, strong = _flat_failures(data, phi0_inf, M2, gb_weak, gb_strong)
        weak_hits += bool(weak)
        strong_hits += bool(strong)
        if not strong:
            missed.append((r, c, term))
    return {"case": case, "mutations": total, "caught_mod_I_plus_J": weak_hits,
            "caught_mod_J": strong_hits, "missed_mod_J": missed}


def verify_obstruction_ideal(case: str, printed: bool = False) -> dict:
    data, applied = _load(case, printed)
    U = data.u_ring
    J = Ideal(data.J, U, homogeneous=False)
    comps = [Ideal(c, U, homogeneous=False) for c in data.components]
    stated = intersect(*comps) if len(comps) > 1 else comps[0]
    rep: dict = {"case": case, "J_generators": len(data.J), "errata_applied": applied}
    rep["equal_to_presentation"] = ideal_equal(J, stated)
    rep["component_dims"] = [krull_dim(c) for c in comps]
    rep["dim"] = krull_dim(J)
    if case == "i124":
        A, B = comps
        meet = A + B
        rep["meet_dim"] = krull_dim(meet)
        line = Ideal(["u1", "u2", "u3", "u4", "u5", "u7", "u8"], U)
        rep["meet_is_u6_line"] = _same_zero_set(meet, line)
        TA, TB = _linear_parts(A), _linear_parts(B)
        rep["tangent_dims"] = [data.m - TA, data.m - TB]
        both = _linear_parts(A + B)
        rep["tangent_meet_dim"] = data.m - both
        rep["transverse"] = (data.m - TA) + (data.m - TB) - (data.m - both) == data.m
        rep["pass"] = (rep["equal_to_presentation"] and rep["component_dims"] == [5, 2]
                       and rep["transverse"] and rep["meet_is_u6_line"])
    else:
        Z = determinantal_ideal(DeterminantalSpec(3, 3, 2, [f"u{i}" for i in range(1, 10)]))
        rep["generic_3x3_dim"] = krull_dim(Z)
        rep["pass"] = rep["equal_to_presentation"] and rep["dim"] == 5
    return rep


def _linear_parts(I: Ideal) -> int:
    """Rank of the linear parts of the generators (codim of the tangent space at 0)."""
    rows = []
    for g in I.generators:
        lin = {e: c for e, c in g.terms.items() if sum(e) == 1}
        if lin:
            rows.append(lin)
    return rank(rows)


def _same_zero_set(meet: Ideal, line: Ideal) -> bool:
    """V(meet) = V(line) for a linear prime ``line``: meet lies in line and a
    small power of every generator of line lies in meet."""
    if not meet.is_subset(line):
        return False
    gb = meet.groebner()
    for g in line.generators:
        p = g
        for _ in range(4):
            if gb.contains(p):
                break
            p = p * g
        else:
            return False
    return True


# ---------------------------------------------------------------- determinantal ideals

@dataclass(frozen=True)
class DeterminantalSpec:
    rows: int
    cols: int
    size: int
    labels: tuple           # entries row by row; ring variables are taken from ``ring_names``
    ring_names: tuple = ()

    def __init__(self, rows, cols, size, labels, ring_names=()):
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "labels", tuple(labels))
        object.__setattr__(self, "ring_names", tuple(ring_names) or tuple(labels))


def _det(M):
    if len(M) == 1:
        return M[0][0]
    out = M[0][0].ring.zero()
    for j, a in enumerate(M[0]):
        if a:
            out = out + a * _det([r[:j] + r[j + 1:] for r in M[1:]]) * (-1 if j % 2 else 1)
    return out


def determinantal_ideal(spec: DeterminantalSpec) -> Ideal:
    if len(spec.labels) != spec.rows * spec.cols:
        raise ValueError("label count does not match the matrix shape")
    if not 1 <= spec.size <= min(spec.rows, spec.cols):
        raise ValueError("minor size out of range")
    R = PolyRing(list(spec.ring_names))
    M = [[R.parse(spec.labels[r * spec.cols + c]) for c in range(spec.cols)] for r in range(spec.rows)]
    gens = []
    for rs in combinations(range(spec.rows), spec.size):
        for cs in combinations(range(spec.cols), spec.size):
            d = _det([[M[r][c] for c in cs] for r in rs])
            if d:
                gens.append(d)
    return Ideal(gens, R, homogeneous=False)


def Y_spec(n: int) -> DeterminantalSpec:
    """2x2 minors of [[u1..u_{n-1}], [u_n..u_{2n-2}]] inside k[u1..u_{2n}]."""
    labels = [f"u{i}" for i in range(1, 2 * n - 1)]
    return DeterminantalSpec(2, n - 1, 2, labels, [f"u{i}" for i in range(1, 2 * n + 1)])


def Z_spec(n: int) -> DeterminantalSpec:
    """2x2 minors of the 3 x n matrix of u1..u_{3n}."""
    labels = [f"u{i}" for i in range(1, 3 * n + 1)]
    return DeterminantalSpec(3, n, 2, labels)

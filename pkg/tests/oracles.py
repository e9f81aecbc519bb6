"""Independent reference computations for the tests, built on sympy and brute
force.  Nothing here imports planepairs."""
from __future__ import annotations

import itertools

import sympy


def symbols(nvars: int):
    return sympy.symbols(" ".join(f"x{i}" for i in range(nvars)))


def to_sympy(text: str, nvars: int):
    xs = symbols(nvars)
    return sympy.sympify(text.replace("^", "**"), locals={f"x{i}": xs[i] for i in range(nvars)})


def reduced_groebner(gens: list[str], nvars: int, order: str = "grevlex") -> set:
    """Reduced (monic) Groebner basis from sympy, as a set of expanded expressions."""
    xs = symbols(nvars)
    G = sympy.groebner([to_sympy(g, nvars) for g in gens], *xs, order=order)
    return {sympy.expand(g) for g in G.exprs}


def monomials(nvars: int, d: int):
    for c in itertools.combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in c:
            e[i] += 1
        yield tuple(e)


def in_monomial_ideal(e, gens) -> bool:
    return any(all(a >= b for a, b in zip(e, g)) for g in gens)


def leading_exponents(gens: list[str], nvars: int, order: str = "grevlex") -> list[tuple]:
    xs = symbols(nvars)
    G = sympy.groebner([to_sympy(g, nvars) for g in gens], *xs, order=order)
    return [sympy.Poly(g, *xs).monoms(order=order)[0] for g in G.exprs]


def hilbert_function(gens: list[str], nvars: int, t: int) -> int:
    """dim_k (S/I)_t by counting standard monomials of a sympy Groebner basis."""
    lead = leading_exponents(gens, nvars)
    return sum(1 for e in monomials(nvars, t) if not in_monomial_ideal(e, lead))


def mono_hom_dim(gens: list[tuple], nvars: int) -> int:
    """dim Hom(I, S/I)_0 for a monomial ideal, from pairwise syzygies and a
    dense sympy rank."""
    def std(d):
        return [m for m in monomials(nvars, d) if not in_monomial_ideal(m, gens)]
    basis = {i: std(sum(g)) for i, g in enumerate(gens)}
    unknowns = [(i, m) for i in basis for m in basis[i]]
    index = {u: k for k, u in enumerate(unknowns)}
    rows = []
    for i, j in itertools.combinations(range(len(gens)), 2):
        L = tuple(max(a, b) for a, b in zip(gens[i], gens[j]))
        ui = tuple(a - b for a, b in zip(L, gens[i]))
        uj = tuple(a - b for a, b in zip(L, gens[j]))
        r: dict = {}
        for k, u, s in ((i, ui, 1), (j, uj, -1)):
            for m in basis[k]:
                e = tuple(a + b for a, b in zip(u, m))
                if not in_monomial_ideal(e, gens):
                    slot = r.setdefault(e, {})
                    slot[index[(k, m)]] = slot.get(index[(k, m)], 0) + s
        for v in r.values():
            row = [0] * len(unknowns)
            for c, x in v.items():
                row[c] += x
            rows.append(row)
    if not rows:
        return len(unknowns)
    return len(unknowns) - sympy.Matrix(rows).rank()


def exps(ideal) -> list[tuple]:
    """Exponent tuples of a monomial planepairs ideal (duck typed)."""
    return [tuple(next(iter(g.terms))) for g in ideal.generators]


def hom_dim(gens: list[str], nvars: int, max_degree: int) -> int:
    """dim Hom(I, S/I)_0 for any homogeneous ideal.  Syzygies are found degree
    by degree up to max_degree as a dense nullspace; that bound must reach
    the generating degrees of the first syzygy module."""
    xs = symbols(nvars)
    polys = [sympy.Poly(to_sympy(g, nvars), *xs) for g in gens]
    degs = [p.total_degree() for p in polys]
    G = sympy.groebner([p.as_expr() for p in polys], *xs, order="grevlex")
    lead = [sympy.Poly(g, *xs).monoms(order="grevlex")[0] for g in G.exprs]

    def mono(e):
        return sympy.Mul(*[x ** a for x, a in zip(xs, e)])

    def std(d):
        return [m for m in monomials(nvars, d) if not in_monomial_ideal(m, lead)]

    def nf(expr):
        return sympy.Poly(G.reduce(sympy.expand(expr))[1], *xs)

    unknowns = [(i, m) for i, d in enumerate(degs) for m in std(d)]
    syz = []
    for D in range(min(degs) + 1, max_degree + 1):
        slots = [(i, u) for i, d in enumerate(degs) if D >= d for u in monomials(nvars, D - d)]
        targets = list(monomials(nvars, D))
        tindex = {t: r for r, t in enumerate(targets)}
        A = sympy.zeros(len(targets), len(slots))
        for c, (i, u) in enumerate(slots):
            for e, coef in polys[i].terms():
                A[tindex[tuple(a + b for a, b in zip(e, u))], c] += coef
        for v in A.nullspace():
            s = [0] * len(gens)
            for c, (i, u) in enumerate(slots):
                if v[c]:
                    s[i] += v[c] * mono(u)
            syz.append(s)
    rows: dict = {}
    for k, s in enumerate(syz):
        for c, (i, m) in enumerate(unknowns):
            if s[i] == 0:
                continue
            for e, coef in nf(s[i] * mono(m)).terms():
                rows.setdefault((k, e), {})[c] = coef
    if not rows:
        return len(unknowns)
    M = sympy.zeros(len(rows), len(unknowns))
    for r, row in enumerate(rows.values()):
        for c, v in row.items():
            M[r, c] = v
    return len(unknowns) - M.rank()

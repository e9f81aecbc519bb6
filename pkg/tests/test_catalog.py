from fractions import Fraction

import pytest
import sympy

from oracles import symbols, to_sympy

from planepairs.borel import I_cdn, lex_point
from planepairs.catalog import (FAMILIES, PairFamilySpec, boundary_specs, catalog_ideals, initial_set_C,
                                match_orbits, orbit_signature, orbit_signatures, pair_family_ideal,
                                pair_family_order, verify_pair_family, verify_point)
from planepairs.groebner import Ideal, ideal_equal, monomial_ideal
from planepairs.hilbert import hilbert_polynomial, pair_hilbert_polynomial
from planepairs.poly import standard_ring


@pytest.mark.parametrize("family,n,count", [("fixed", 4, 4), ("twoplane", 6, 8), ("h1", 4, 9),
                                            ("borel2", 4, 2)])
def test_family_sizes(family, n, count):
    assert len(catalog_ideals(family, n)) == count


def test_twopoints_has_both_type_three_orbits():
    labels = [e.label for e in catalog_ideals("twopoints", 3)]
    assert labels == ["i", "ii", "iii-a", "iii-b", "iv", "v"]


@pytest.mark.parametrize("family,n", [("fixed", 2), ("twoplane", 4), ("h1", 3)])
def test_below_validity_range(family, n):
    with pytest.raises(ValueError):
        catalog_ideals(family, n)


def test_unknown_family():
    with pytest.raises(ValueError):
        catalog_ideals("nope", 4)


@pytest.mark.parametrize("family,n", [("fixed", 4), ("fixed", 5), ("twoplane", 5), ("h1", 4),
                                      ("twopoints", 3), ("borel2", 4), ("hypersurface", 3)])
def test_every_entry_verifies(family, n):
    for e in catalog_ideals(family, n):
        rep = verify_point(e, seed=11)
        assert rep["pass"], (e.label, rep)


def test_fixed_type_three_report():
    e = next(e for e in catalog_ideals("fixed", 4) if e.label == "3")
    rep = verify_point(e)
    assert rep["pass"] and rep["tangent"] == 12 and rep["linear"]


def test_h1_entries_on_the_other_component_have_the_same_gin():
    # the gin of every H' entry is I_{1,2,4}, not the lex point
    target, lex = I_cdn(1, 2, 4), lex_point(pair_hilbert_polynomial(1, 2, 4), 4)
    R = standard_ring(4)
    for e in catalog_ideals("h1", 4):
        rep = verify_point(e, tangent=False)
        G = Ideal(rep["gin"], R)
        assert ideal_equal(G, target) and not ideal_equal(G, lex)


def test_lex_point_report():
    J2 = next(e for e in catalog_ideals("borel2", 4) if e.label == "J2")
    rep = verify_point(J2)
    assert rep["saturated"] and rep["tangent"] == 14 and not rep["linear"]


def test_pair_family_boundary_is_monomial_C():
    spec = PairFamilySpec(2, 4, (Fraction(0), Fraction(0)))
    I = pair_family_ideal(spec)
    assert ideal_equal(I, initial_set_C(2, 4))
    assert ideal_equal(I.initial_ideal(pair_family_order(2, 4)), initial_set_C(2, 4))


@pytest.mark.parametrize("k,n,lam", [(2, 4, (1, 1)), (2, 4, (3, -2)), (2, 5, (2, 7)), (3, 6, (1, 2, -1))])
def test_initial_set_matches_sympy_lex(k, n, lam):
    # sympy's lex with the variables listed largest first is the proof's order
    spec = PairFamilySpec(k, n, tuple(Fraction(a) for a in lam))
    I = pair_family_ideal(spec)
    order = list(range(k)) + list(range(n, k - 1, -1))
    xs = symbols(n + 1)
    G = sympy.groebner([to_sympy(str(g), n + 1) for g in I.generators], *[xs[i] for i in order], order="lex")
    lead = set()
    for g in G.exprs:
        e = sympy.Poly(g, *[xs[i] for i in order]).monoms(order="lex")[0]
        full = [0] * (n + 1)
        for pos, i in enumerate(order):
            full[i] = e[pos]
        lead.add(tuple(full))
    R = standard_ring(n)
    assert ideal_equal(initial_set_C(k, n), monomial_ideal(R, lead))


def test_initial_set_for_k2_n4():
    # four monomials: x0x3 is not among them
    R = standard_ring(4)
    C = monomial_ideal(R, [next(iter(R.parse(m).terms)) for m in ["x0^2", "x0*x1", "x1^2", "x0*x4"]])
    assert ideal_equal(initial_set_C(2, 4), C)


def test_pair_family_generic_member():
    spec = PairFamilySpec(2, 4, (Fraction(1), Fraction(1)))
    I = pair_family_ideal(spec)
    assert ideal_equal(I.initial_ideal(pair_family_order(2, 4)), initial_set_C(2, 4))
    assert hilbert_polynomial(I) == pair_hilbert_polynomial(2, 2, 4)


def test_pair_family_signature_and_polynomial():
    spec = PairFamilySpec(3, 6, (Fraction(1), Fraction(0), Fraction(1)))
    assert orbit_signature(spec) == (True, False, True)
    assert hilbert_polynomial(pair_family_ideal(spec)) == pair_hilbert_polynomial(3, 3, 6)


@pytest.mark.parametrize("k,count", [(1, 2), (2, 4), (3, 8)])
def test_orbit_signature_count(k, count):
    assert len(orbit_signatures(k, 2 * k, sample_count=10, seed=5)) == count
    assert len(boundary_specs(k, 2 * k)) == count


@pytest.mark.parametrize("k,n", [(1, 2), (2, 4), (2, 5), (3, 6)])
def test_pair_family_report(k, n):
    rep = verify_pair_family(k, n, samples=6, seed=3)
    assert rep["pass"] and not rep["failures"]


def test_orbits_match_fixed_types():
    m = match_orbits(2, 4)
    assert sorted(m.values()) == ["1", "2", "3", "4"]
    assert m[(True, True)] == "1"


def test_family_tags():
    assert {"fixed", "twoplane", "h1", "twopoints", "borel2", "hypersurface"} <= set(FAMILIES)

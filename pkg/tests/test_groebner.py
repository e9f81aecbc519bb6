import pytest

from oracles import reduced_groebner, to_sympy
from planepairs.borel import I_cdn
from planepairs.groebner import (Ideal, eliminate, ideal_equal, intersect, is_saturated, monomial_ideal,
                                 quotient, saturate, irrelevant_ideal)
from planepairs.poly import GREVLEX, LEX, standard_ring
import sympy


def _scaled(exprs, nvars):
    """Scale so the lex-leading coefficient is 1, a normalisation both sides share."""
    xs = sympy.symbols(" ".join(f"x{i}" for i in range(nvars)))
    return {sympy.expand(e / sympy.Poly(e, *xs).LC()) for e in exprs}


def _ours_as_sympy(gb, nvars):
    return _scaled([to_sympy(str(g), nvars) for g in gb.elements], nvars)


CASES = [
    (["x0^2 - x1*x2", "x0*x1 - x2^2", "x1^2 - x0*x2"], 3),
    (["x0^3 - x1*x2*x3", "x0*x1 - x2*x3", "x1^2 + x0*x3 - x2^2"], 4),
    (["x0*x1 - x2*x3", "x0^2 - x3^2", "x1*x2 + x0*x3"], 4),
    (["x0 + 2*x1 - x2", "x1^2 - 3*x0*x2"], 3),
]


@pytest.mark.parametrize("gens,nv", CASES)
@pytest.mark.parametrize("order,name", [(GREVLEX, "grevlex"), (LEX, "lex")])
def test_reduced_basis_matches_sympy(gens, nv, order, name):
    I = Ideal(gens, standard_ring(nv - 1))
    assert _ours_as_sympy(I.groebner(order), nv) == _scaled(reduced_groebner(gens, nv, name), nv)


def test_monomial_ideal_is_its_own_basis():
    I = I_cdn(1, 2, 4)
    gb = I.groebner()
    assert sorted(map(str, gb.elements)) == sorted(["x0^2", "x0*x1", "x1^2", "x0*x2", "x1*x2", "x0*x3"])


def test_already_interreduced_lex_basis():
    R = standard_ring(1)
    gb = Ideal(["x0 - x1", "x1^2"], R).groebner(LEX)
    assert sorted(map(str, gb.elements)) == sorted(["x0 - x1", "x1^2"])


def test_normal_forms():
    R = standard_ring(4)
    I = I_cdn(1, 2, 4)
    assert I.normal_form(R.parse("x0^2*x4")).is_zero()
    assert str(I.normal_form(R.parse("x2*x3"))) == "x2*x3"
    unit = Ideal(["1"], R, homogeneous=False)
    assert unit.normal_form(R.parse("x1*x3 + 7")).is_zero()


def test_ideal_equality():
    R = standard_ring(3)
    prod = Ideal(["x0", "x1"], R) * Ideal(["x0", "x2"], R)
    cap = intersect(Ideal(["x0", "x1"], R), Ideal(["x0", "x2"], R), Ideal(["x0^2", "x1", "x2"], R))
    assert ideal_equal(prod, cap)
    assert ideal_equal(Ideal(["x0", "x1"], R) * Ideal(["x2", "x3"], R),
                       intersect(Ideal(["x0", "x1"], R), Ideal(["x2", "x3"], R)))
    assert not ideal_equal(Ideal(["x0"], R), Ideal(["x0^2"], R))


def test_intersections():
    R = standard_ring(3)
    got = intersect(Ideal(["x0", "x1"], R), Ideal(["x2", "x3"], R))
    assert ideal_equal(got, Ideal(["x0*x2", "x0*x3", "x1*x2", "x1*x3"], R))
    I = Ideal(["x0^2", "x1*x3"], R)
    assert ideal_equal(intersect(I, Ideal(["1"], R)), I)
    got = intersect(Ideal(["x0", "x1"], R), Ideal(["x0", "x2"], R), Ideal(["x0^2", "x1", "x2"], R))
    assert ideal_equal(got, Ideal(["x0^2", "x0*x1", "x0*x2", "x1*x2"], R))


def test_intersection_is_contained_in_both_parts():
    R = standard_ring(3)
    A, B = Ideal(["x0^2 - x1*x2", "x3"], R), Ideal(["x0 - x1", "x2^2"], R)
    C = intersect(A, B)
    assert C.is_subset(A) and C.is_subset(B)
    assert (A * B).is_subset(C)


def test_saturation():
    R = standard_ring(3)
    I = Ideal(["x0^2", "x0*x1", "x0*x2", "x0*x3"], R)
    assert ideal_equal(saturate(I), Ideal(["x0"], R))
    assert not is_saturated(I)
    assert ideal_equal(saturate(I_cdn(1, 2, 4)), I_cdn(1, 2, 4))
    J3 = Ideal(["x0", "x1"], R) * Ideal(["x0", "x1", "x2"], R)
    assert ideal_equal(quotient(J3, irrelevant_ideal(R)), J3)
    assert is_saturated(J3)


def test_elimination():
    R = standard_ring(2)
    I = Ideal(["x0 - x1^2", "x2 - x1^3"], R, homogeneous=False)
    E = eliminate(I, [1])
    assert E.contains(R.parse("x0^3 - x2^2"))
    assert all(not any(e[1] for e in g.terms) for g in E.generators)


def test_inhomogeneous_generators_rejected_by_default():
    with pytest.raises(ValueError):
        Ideal(["x0 + 1"], standard_ring(1))

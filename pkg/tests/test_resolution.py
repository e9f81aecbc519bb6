import pytest

from planepairs.borel import I_cdn, lex_point
from planepairs.deformation import _parse_matrix, versal_data
from planepairs.groebner import Ideal
from planepairs.hilbert import pair_hilbert_polynomial
from planepairs.poly import standard_ring
from planepairs.resolution import (depth, ek_betti, minimal_free_resolution, module_contains,
                                   projective_dimension, regularity, syzygies)


def _J3():
    R = standard_ring(3)
    return Ideal(["x0^2", "x0*x1", "x1^2", "x0*x2", "x1*x2"], R)


def test_betti_totals_of_displayed_resolutions():
    assert minimal_free_resolution(I_cdn(1, 2, 4))[1].totals() == (1, 6, 9, 5, 1)
    assert minimal_free_resolution(_J3())[1].totals() == (1, 5, 6, 2)
    assert minimal_free_resolution(Ideal(["x0"], standard_ring(3)))[1].totals() == (1, 1)


def test_resolution_maps_compose_to_zero():
    res, _ = minimal_free_resolution(I_cdn(1, 2, 4))
    maps = res.maps
    for a, b in zip(maps, maps[1:]):
        assert a.compose(b).is_zero()


def test_koszul_syzygy():
    R = standard_ring(2)
    S = syzygies([R.parse("x0"), R.parse("x1")])
    assert S.shape == (2, 1)
    col = S.column(0)
    assert (col[0] * R.parse("x0") + col[1] * R.parse("x1")).is_zero()
    assert {str(col[0]), str(col[1])} in ({"x1", "-x0"}, {"-x1", "x0"})


@pytest.mark.parametrize("case", ["i124", "j3"])
def test_syzygy_module_equals_displayed_matrix(case):
    data = versal_data(case)
    S = data.x_ring
    phi0 = [S.parse(g) for g in data.phi0]
    phi1 = _parse_matrix(S, data.phi1)
    shifts = [p.degree() for p in phi0]
    printed = [[phi1[r][c] for r in range(len(phi1))] for c in range(len(phi1[0]))]
    ours = syzygies(phi0).columns()
    assert all(module_contains(ours, col, shifts) for col in printed)
    assert all(module_contains(printed, col, shifts) for col in ours)


def test_invariants_of_I124():
    _, B = minimal_free_resolution(I_cdn(1, 2, 4))
    assert regularity(B) == 2
    assert depth(B, 4) == 1 == 1 + 2 + 2 - 4
    assert projective_dimension(B) == 4
    assert B.is_linear()


def test_spanning_pair_is_two_regular_with_nine_quadrics():
    I = I_cdn(2, 2, 5)
    _, B = minimal_free_resolution(I)
    assert regularity(B) == 2 and B.totals()[1] == 9
    assert ek_betti(I)[0] == 9


def test_principal():
    _, B = minimal_free_resolution(Ideal(["x0"], standard_ring(2)))
    assert regularity(B) == 1 and projective_dimension(B) == 1
    assert ek_betti(Ideal(["x0"], standard_ring(2))) == (1,)


def test_eliahou_kervaire_matches_resolution():
    # max indices 0,1,1,2,2,3 give (6, 9, 5, 1) by the formula
    assert ek_betti(I_cdn(1, 2, 4)) == (6, 9, 5, 1)
    for I in (I_cdn(2, 2, 5), I_cdn(0, 2, 4), lex_point(pair_hilbert_polynomial(1, 2, 4), 4)):
        assert ek_betti(I) == minimal_free_resolution(I)[1].totals()[1:]


def test_eliahou_kervaire_requires_borel():
    with pytest.raises(ValueError):
        ek_betti(Ideal(["x0", "x1*x2"], standard_ring(2)))


def test_betti_text_mentions_every_nonzero_entry():
    _, B = minimal_free_resolution(_J3())
    txt = B.text()
    assert "5" in txt and "6" in txt and "2" in txt

import pytest

from oracles import to_sympy
from planepairs.poly import (GREVLEX, LEX, PolySyntaxError, leading_term, parse_poly, permuted_lex,
                             standard_ring)


def test_parse_counts_terms_and_degree():
    p = parse_poly("x0^2 - x1*x2", 4)
    assert len(p.terms) == 2 and p.degree() == 2 and p.is_homogeneous()


def test_quadric_relation_parses_homogeneous():
    p = parse_poly("x0*x3 - x1*x2", 3)
    assert p.degree() == 2 and len(p.terms) == 2


def test_like_terms_collect():
    assert str(parse_poly("x0 + x0", 2)) == "2*x0"


def test_round_trip_is_identity():
    R = standard_ring(3)
    for s in ["x0^2 - x1*x2", "3/2*x0*x3 + x1^3 - 7", "0", "-x2"]:
        p = R.parse(s)
        assert R.parse(str(p)) == p


def test_zero_coefficients_are_dropped():
    p = parse_poly("x0*x1 - x1*x0 + x2", 3)
    assert str(p) == "x2"


def test_arithmetic_agrees_with_sympy():
    R = standard_ring(3)
    a, b = R.parse("x0^2 - 2*x1*x3 + 1/3"), R.parse("x0 + x2 - 5")
    for ours, theirs in [(a * b, "(x0^2 - 2*x1*x3 + 1/3)*(x0 + x2 - 5)"),
                         (a - b, "x0^2 - 2*x1*x3 + 1/3 - (x0 + x2 - 5)"),
                         (b ** 3, "(x0 + x2 - 5)^3")]:
        assert (to_sympy(str(ours), 4) - to_sympy(theirs, 4)).expand() == 0


def test_derivative_agrees_with_sympy():
    import sympy
    R = standard_ring(2)
    p = R.parse("x0^3*x1 - 4*x1^2*x2 + x2")
    for i in range(3):
        want = sympy.diff(to_sympy(str(p), 3), sympy.Symbol(f"x{i}"))
        assert (to_sympy(str(p.derivative(i)), 3) - want).expand() == 0


def test_syntax_errors_carry_position():
    with pytest.raises(PolySyntaxError):
        parse_poly("x0 +* x1", 2)
    with pytest.raises(PolySyntaxError):
        parse_poly("x9", 2)


def test_pair_order_leading_terms():
    # lex with x0 > x1 > x4 > x3 > x2 (k=2, n=4)
    order = permuted_lex([0, 1, 4, 3, 2])
    R = standard_ring(4)
    gamma = R.parse("(x0 + 3*x4)*x1")
    delta = R.parse("x0*x4 - 5*x1*x3")
    x = lambda *e: tuple(e)
    assert leading_term(gamma, order)[0] == x(1, 1, 0, 0, 0)
    assert leading_term(delta, order)[0] == x(1, 0, 0, 0, 1)
    assert leading_term(R.parse("x0^2"), LEX)[0] == x(2, 0, 0, 0, 0)


def test_grevlex_breaks_ties_by_last_variable():
    R = standard_ring(2)
    p = R.parse("x0*x2 + x1^2")
    assert leading_term(p, GREVLEX)[0] == (0, 2, 0)

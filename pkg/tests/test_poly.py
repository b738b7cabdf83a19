import pytest
from hypothesis import given, strategies as st

from corelab.field import FieldDescriptor
from corelab.groebner import leading_term
from corelab.poly import GREVLEX, LEX, MonomialOrder, ParseError, PolyRing

from strategies import RINGS, polynomials

F7 = FieldDescriptor.prime(7)


def test_parse_and_format_round_trip(R2):
    f = R2.parse("x^5*y^3 - 2*x*y")
    assert str(f) == "x^5*y^3 - 2*x*y"
    assert R2.parse(str(f)) == f
    assert str(R2.parse("3 - x + x")) == "3"
    assert not R2.parse("x - x")


def test_integer_coefficients_reduce_into_field():
    R = PolyRing(["x"], F7)
    assert str(R.parse("9*x + 14")) == "2*x"
    assert R.parse("-x") == R.parse("6*x")


def test_extension_literals(R2_gf):
    f = R2_gf.parse("[1f]*x^2 + y")
    assert str(f) == "[1f]*x^2 + y"
    assert R2_gf.parse("2*x") == R2_gf.zero()  # integers reduce mod 2


@pytest.mark.parametrize("text, column", [("x + z", 5), ("x^", 2), ("x^y", 2), ("2^3", 2),
                                          ("x +", 3), ("x $ y", 3), ("", 1)])
def test_parse_errors_are_positioned(R2, text, column):
    with pytest.raises(ParseError) as info:
        R2.parse(text)
    assert info.value.column == column


def test_hex_literal_needs_binary_field(R2):
    with pytest.raises(ParseError):
        R2.parse("[3]*x")


def test_leading_terms():
    R = PolyRing(["x", "y"], F7)
    lm, c = leading_term(R.parse("x^2*y + y^3"), GREVLEX)
    assert lm == (2, 1) and c == 1
    assert leading_term(R.parse("x"), LEX)[0] == (1, 0)
    lm, c = leading_term(R.parse("5*x^3"), GREVLEX)
    assert lm == (3, 0) and c.value == 5
    with pytest.raises(ValueError, match="leading term of zero"):
        leading_term(R.zero(), GREVLEX)


def test_grevlex_tie_breaks_on_last_variable():
    R = PolyRing(["x", "y", "z"], F7)
    # x*z^2 < y^3 in grevlex (smaller z power wins), x*z^2 > y^3 in lex
    assert leading_term(R.parse("x*z^2 + y^3"), GREVLEX)[0] == (0, 3, 0)
    assert leading_term(R.parse("x*z^2 + y^3"), LEX)[0] == (1, 0, 2)


def test_block_order_eliminates_first_block():
    R = PolyRing(["t", "x", "y"], F7)
    # any monomial with t beats any monomial without it
    assert leading_term(R.parse("t + x^5*y^5"), MonomialOrder.elimination(1))[0] == (1, 0, 0)
    assert leading_term(R.parse("t + x^5*y^5"), GREVLEX)[0] == (0, 5, 5)


def test_terms_sorted_descending(R2):
    f = R2.parse("y^2 + x*y + x^2 + 1 + x")
    assert [m for m, _ in f.terms] == [(2, 0), (1, 1), (0, 2), (1, 0), (0, 0)]


def test_substitute_and_ring_change(R2):
    f = R2.parse("x^2 + x*y")
    g = f.substitute({0: R2.parse("y")})
    assert g == R2.parse("2*y^2")
    S = PolyRing(["x", "y", "t"], R2.field)
    assert f.to_ring(S).to_ring(R2) == f


def test_polynomial_predicates(R2):
    f = R2.parse("x^3 + x*y")
    assert f.degree() == 3 and f.order_of_vanishing() == 2
    assert not f.is_homogeneous() and R2.parse("x^2 + y^2").is_homogeneous()
    assert R2.parse("5*x*y").is_monomial()
    assert f.coefficient((1, 1)) == 1 and f.coefficient((0, 0)) == 0


def test_exponent_overflow_rejected(R2):
    with pytest.raises(ValueError):
        R2.monomial((40000, 0))


@given(polynomials(RINGS[2]), polynomials(RINGS[2]), polynomials(RINGS[2]))
def test_ring_axioms(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f - f == f.ring.zero()
    assert (f + g) ** 2 == f * f + 2 * f * g + g * g


@given(polynomials(RINGS[3], max_terms=5))
def test_format_parse_round_trip(f):
    assert f.ring.parse(str(f)) == f


@given(polynomials(RINGS[3]), polynomials(RINGS[3]))
def test_leading_monomial_multiplicative(f, g):
    assert leading_term(f * g, GREVLEX)[0] == tuple(
        a + b for a, b in zip(leading_term(f, GREVLEX)[0], leading_term(g, GREVLEX)[0]))

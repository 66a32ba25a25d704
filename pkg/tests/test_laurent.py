import pytest
from hypothesis import given, strategies as st

from vkh.laurent import LaurentPoly2, format_jones, parse_poly

import published

PRINTED = list(published.POINCARE.values()) + list(published.TORSION.values())


@pytest.mark.parametrize("text", PRINTED)
def test_printed_round_trip(text):
    assert str(parse_poly(text)) == text


def test_zero():
    assert str(LaurentPoly2()) == "0" and parse_poly("0") == LaurentPoly2()


def test_term_shapes():
    p = LaurentPoly2({(2, -1): 2, (-4, -1): 1, (-1, 1): 1, (0, 0): -3})
    assert str(p) == "-3 + 1/(q^4 t) + (2 q^2)/t + t/q"
    assert parse_poly(str(p)) == p


def test_arithmetic():
    q = LaurentPoly2.monomial(1)
    qi = LaurentPoly2.monomial(-1)
    assert q * qi == LaurentPoly2.monomial()
    assert (q + qi) - q == qi
    assert (q + qi).invert() == q + qi


def test_divide_q_plus_inverse():
    unknot = parse_poly("1/q + q")
    assert unknot.divide_q_plus_inverse() == LaurentPoly2.monomial()
    with pytest.raises(ArithmeticError):
        parse_poly("q").divide_q_plus_inverse()
    with pytest.raises(ArithmeticError):
        parse_poly("q t").divide_q_plus_inverse()
    assert LaurentPoly2().divide_q_plus_inverse() == LaurentPoly2()


def test_at_t_minus_one():
    p = parse_poly("1/q^3 + 1/q + 1/(q^6 t^2) + 1/(q^2 t)")
    assert p.at_t(-1) == parse_poly("1/q^6 + 1/q^3 - 1/q^2 + 1/q")
    assert all(isinstance(c, int) for c in p.at_t(-1).terms.values())


def test_format_jones():
    assert format_jones(LaurentPoly2.monomial()) == "1"
    assert format_jones(parse_poly("1/q^5 - 1/q^3 + 1/q^2")) == "(1 - q^2 + q^3)/q^5"
    assert format_jones(parse_poly("1/q^2")) == "1/q^2"
    assert format_jones(parse_poly("q^2 - q^3")) == "q^2 - q^3"


polys = st.dictionaries(
    st.tuples(st.integers(-6, 6), st.integers(-4, 4)), st.integers(-5, 5), max_size=8
).map(LaurentPoly2)


@given(polys)
def test_round_trip_property(p):
    assert parse_poly(str(p)) == p
    assert LaurentPoly2.from_json(p.to_json()) == p


@given(polys, polys)
def test_ring_laws(a, b):
    assert a + b == b + a and a * b == b * a
    assert (a - b) + b == a


@given(polys)
def test_division_inverts_multiplication(p):
    p = p.at_t(1)
    q_plus = parse_poly("1/q + q")
    assert (p * q_plus).divide_q_plus_inverse() == p

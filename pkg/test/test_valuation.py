from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lib import errors as er
from lib import field2 as f2
from lib import valuation as vl

W = vl.MonomialWeight({"x": Fraction(1, 4), "u": Fraction(1, 8)})
LEX = vl.MonomialWeight({"x": vl.LexPair(Fraction(1, 4), 0), "y": vl.LexPair(0, Fraction(1, 4))}, lex=True)

x, y, u, q1 = (f2.series_gen(n) for n in ("x", "y", "u", "q1"))

monoms = st.tuples(st.integers(0, 2), st.integers(0, 1), st.integers(0, 1),
                   st.integers(0, 3), st.integers(0, 2), st.integers(0, 3))
polys = st.lists(monoms, min_size=1, max_size=4).map(f2.poly_from_terms).filter(bool)


def test_lex_pairs_order_lexicographically():
    assert vl.LexPair(0, 5) < vl.LexPair(1, 0)
    assert vl.LexPair(1, 2) + vl.LexPair(0, 1) == vl.LexPair(1, 3)
    assert 3 * vl.LexPair(0, 1) == vl.LexPair(0, 3)
    assert str(vl.LexPair(Fraction(1, 2), 0)) == "(1/2, 0)"


def test_ord_of_monomials():
    assert vl.ord_poly(x ** 2 * u * q1, W) == Fraction(5, 8)
    assert vl.ord_rf(f2.rf(x, u), W) == Fraction(1, 8)
    assert vl.ord_poly(x + y ** 4, LEX) == vl.LexPair(0, 1)
    with pytest.raises(er.ZeroElement):
        vl.ord_rf(f2.SERIES_FIELD.zero, W)


def test_leading_form():
    assert vl.leading_form(1 + x + u, W) == f2.SERIES.one
    assert vl.leading_form(x + u ** 2 + x * u, W) == x + u ** 2


def test_weight_validation():
    with pytest.raises(er.ParseError):
        vl.MonomialWeight({"q1": Fraction(1)})
    with pytest.raises(er.ParseError):
        vl.MonomialWeight({"x": Fraction(-1)})
    with pytest.raises(er.ParseError):
        vl.MonomialWeight({"z": Fraction(1)})


def test_value_div_and_min_multiple():
    assert vl.value_div(Fraction(3, 4), Fraction(1, 2)) == Fraction(3, 2)
    assert vl.value_div(vl.LexPair(0, 1), vl.LexPair(0, 1)) is None
    assert vl.min_multiple(Fraction(3, 4), Fraction(1, 2)) == 2
    assert vl.min_multiple(vl.LexPair(0, 3), vl.LexPair(0, 1)) == 3
    assert vl.min_multiple(vl.LexPair(1, 0), vl.LexPair(0, 1)) is None
    assert vl.min_multiple(vl.LexPair(1, 5), vl.LexPair(1, 0)) == 2
    assert vl.min_multiple(Fraction(-1), Fraction(1)) == 0


def test_parse_rational():
    assert vl.parse_rational(" 3/4 ") == Fraction(3, 4)
    with pytest.raises(er.ParseError):
        vl.parse_rational("0.7.5")


@settings(max_examples=1000, deadline=None)
@given(polys, polys)
def test_valuation_axioms(a, b):
    for w in (W, LEX):
        assert vl.ord_poly(a * b, w) == vl.ord_poly(a, w) + vl.ord_poly(b, w)
        if a + b:
            assert vl.ord_poly(a + b, w) >= min(vl.ord_poly(a, w), vl.ord_poly(b, w))


@settings(max_examples=1000, deadline=None)
@given(polys, polys)
def test_leading_forms_multiply(a, b):
    for w in (W, LEX):
        assert vl.leading_form(a * b, w) == vl.leading_form(a, w) * vl.leading_form(b, w)

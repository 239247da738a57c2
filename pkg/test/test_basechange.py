import time
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lib import errors as er
from lib import field2 as f2
from lib import laurent as lr
from lib import valuation as vl
from lib import basechange as bc

exps = st.tuples(*[st.integers(-2, 2)] * lr.NVARS)
elements = st.lists(exps, max_size=3).map(lambda terms: lr.laurent(terms, lr.FULL))


def test_example_a_orders_and_leading_form():
    sigma = bc.builtin("A")
    assert bc.pi_lambda(sigma) == (Fraction(1), Fraction(1))
    q1, q2, q3, x = (f2.series_gen(n) for n in ("q1", "q2", "q3", "x"))
    expected = (q2 ** 2 * q3 ** 2 + q3 ** 2 * q1 ** 2 + q1 ** 2 * q2 ** 2) * x ** 4
    assert bc.leading_terms(sigma)["P"] == f2.rf(expected)


@pytest.mark.parametrize("r", [Fraction(1, 4), Fraction(1, 2), Fraction(1)])
def test_example_b_orders(r):
    assert bc.pi_lambda(bc.builtin("B", r)) == (Fraction(1), r)


def test_example_b_needs_r():
    with pytest.raises(er.MissingParameter):
        bc.builtin("B")
    with pytest.raises(er.MissingParameter):
        bc.builtin("B", Fraction(3, 2))
    assert bc.builtin("B", Fraction(1, 2)).label() == "B(r=1/2)"


def test_example_c_is_lexicographic():
    pi, lam = bc.pi_lambda(bc.builtin("C"))
    assert (pi, lam) == (vl.LexPair(1, 0), vl.LexPair(0, 1))


def test_example_d_identifies_p_and_v():
    sigma = bc.builtin("D")
    assert sigma.sigma_P == sigma.sigma_V
    assert sigma.nonorientable_valid


def test_example_c_prime_is_degenerate():
    sigma = bc.builtin("Cprime")
    assert not sigma.sigma_P
    assert vl.ord_rf(sigma.sigma_L, sigma.weight) == Fraction(1)
    with pytest.raises(er.DegenerateBaseChange):
        bc.pi_lambda(sigma)


def test_unknown_example():
    with pytest.raises(er.UnknownExample):
        bc.builtin("Z")


def test_custom_base_change_matches_builtin():
    sigma = bc.custom({"T1": "1+y", "T2": "1+x", "T3": "1+x"}, {"x": "1/4", "y": "1/4"}, lex=("x", "y"))
    c = bc.builtin("C")
    assert sigma.images == c.images
    assert bc.pi_lambda(sigma) == bc.pi_lambda(c)
    with pytest.raises(er.MissingParameter):
        bc.custom({"T1": "1+y"}, {"y": "1/4"})


def test_custom_degenerate_images_are_rejected():
    with pytest.raises(er.DegenerateBaseChange):
        bc.custom({"T1": "1+y", "T2": "1", "T3": "1"}, {"y": "1/4"})
    with pytest.raises(er.ZeroElement):
        bc.custom({"T1": "0", "T2": "1", "T3": "1"}, {"y": "1/4"}, degenerate=True)


@settings(max_examples=1000, deadline=None)
@given(elements, elements)
def test_apply_is_a_ring_homomorphism(a, b):
    sigma = bc.builtin("B", Fraction(1, 2))
    assert bc.apply(sigma, a + b) == bc.apply(sigma, a) + bc.apply(sigma, b)
    assert bc.apply(sigma, a * b) == bc.apply(sigma, a) * bc.apply(sigma, b)


def substitute_termwise(sigma, a):
    total = f2.SERIES_FIELD.zero
    for monom in a.terms:
        term = f2.SERIES_FIELD.one
        for image, e in zip(sigma.images, monom):
            term *= image ** e
        total += term
    return total


@settings(max_examples=200, deadline=None)
@given(elements)
def test_apply_matches_termwise_substitution(a):
    sigma = bc.custom({"T1": "1+y", "T2": "(1+x)/(1+y)", "T3": "1+x+x*y"}, {"x": "1/4", "y": "1/4"})
    assert bc.apply(sigma, a) == substitute_termwise(sigma, a)
    half = bc.builtin("B", Fraction(1, 2))
    assert bc.apply(half, a) == substitute_termwise(half, a)


def test_apply_cancels_example_e_powers_quickly():
    sigma = bc.builtin("B", Fraction(1, 4))
    started = time.perf_counter()
    cube = bc.apply(sigma, lr.V ** 3)
    assert time.perf_counter() - started < 20
    assert cube == sigma.sigma_V ** 3
    assert vl.ord_rf(cube, sigma.weight) == 3 * Fraction(1, 4)

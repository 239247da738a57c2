from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lib import errors as er
from lib import field2 as f2
from lib import laurent as lr
from lib import valuation as vl
from lib import basechange as bc
from lib import homalg as ha

BN = lr.BN
L, P = lr.constant("L", BN), lr.constant("P", BN)
HALF = bc.builtin("B", Fraction(1, 2))


def trefoil_complex():
    return ha.ChainComplex(BN, {0: 1, 1: 2}, {1: ha.laurent_matrix([[L], [P]], BN)})


exps = st.tuples(st.just(0), st.integers(-1, 1), st.integers(-1, 1), st.integers(-1, 1))
elements = st.lists(exps, max_size=3).map(lambda terms: lr.laurent(terms, BN))


@st.composite
def two_term_complexes(draw):
    n, m = draw(st.integers(1, 2)), draw(st.integers(1, 2))
    rows = [[draw(elements) for _ in range(n)] for _ in range(m)]
    return ha.ChainComplex(BN, {0: n, 1: m}, {1: ha.laurent_matrix(rows, BN)})


def test_square_must_vanish():
    d1 = ha.laurent_matrix([[1]], BN)
    d2 = ha.laurent_matrix([[1]], BN)
    with pytest.raises(er.IntegrityError):
        ha.ChainComplex(BN, {0: 1, 1: 1, 2: 1}, {1: d1, 2: d2})


def test_missing_degrees_are_filled():
    C = ha.ChainComplex(BN, {0: 1, 2: 1})
    assert C.degrees == (0, 1, 2)
    assert C.rank(1) == 0
    assert ha.is_zero(C.boundary(5))


def test_cone_of_skein_map_and_basis_change():
    unknot = ha.ChainComplex(BN, {0: 1})
    hopf = ha.ChainComplex(BN, {0: 2})
    X = ha.laurent_matrix([[L + P], [P]], BN)
    cone = ha.mapping_cone(X, unknot, hopf)
    assert cone.degrees == (-1, 0)
    B = ha.laurent_matrix([[1, 1], [0, 1]], BN)
    rebased = ha.shift(ha.change_basis(cone, 0, B), 1)
    assert rebased == trefoil_complex()


def test_cone_rejects_non_chain_maps():
    C = ha.ChainComplex(BN, {0: 1, 1: 1}, {1: ha.laurent_matrix([[L]], BN)})
    f = {0: ha.laurent_matrix([[1]], BN), 1: ha.laurent_matrix([[0]], BN)}
    with pytest.raises(er.NotAChainMap):
        ha.mapping_cone(f, C, C)


def test_basis_change_needs_unit_determinant():
    C = trefoil_complex()
    with pytest.raises(er.NotInvertible):
        ha.change_basis(C, 1, ha.laurent_matrix([[L, 0], [0, 1]], BN))


def test_trefoil_homology_over_example_b():
    C = trefoil_complex()
    cycle = ha.DistinguishedCycle(1, (lr.zero(BN), lr.one(BN)), 0, 1)
    summary = ha.homology_over_valuation(C, HALF, cycle)
    assert summary.free_rank(1) == 1
    assert summary.free_rank(0) == 0
    assert summary.torsion(1) == (Fraction(1, 2),)
    assert summary.coefficient == f2.SERIES_FIELD.one


def test_homology_errors():
    C = trefoil_complex()
    with pytest.raises(er.NotACycle):
        ha.homology_over_valuation(C, HALF, ha.DistinguishedCycle(0, (lr.one(BN),)))
    hopf = ha.ChainComplex(BN, {0: 2})
    with pytest.raises(er.RankNotOne):
        ha.homology_over_valuation(hopf, HALF, ha.DistinguishedCycle(0, (lr.one(BN), lr.zero(BN))))
    split = ha.ChainComplex(BN, {0: 1, 1: 2}, {1: ha.laurent_matrix([[L], [0]], BN)})
    with pytest.raises(er.CycleInTorsion):
        ha.homology_over_valuation(split, HALF, ha.DistinguishedCycle(1, (lr.one(BN), lr.zero(BN))))


def test_tensor_cycle_directions_must_agree():
    C = trefoil_complex()
    up = ha.DistinguishedCycle(1, (lr.zero(BN), lr.one(BN)), 0, 1)
    down = ha.DistinguishedCycle(1, (P, L), direction=ha.K_TO_UNKNOT)
    with pytest.raises(er.DirectionMismatch):
        ha.tensor_cycle(C, C, up, down)
    both = ha.tensor_cycle(C, C, up, up)
    assert both.degree == 2 and both.dplus == 2
    ha.check_cycle(ha.tensor(C, C), both)


def test_dual_exchanges_cycles_and_cocycles():
    C = trefoil_complex()
    D = ha.dualize(C)
    assert D.degrees == (-1, 0)
    assert ha.dualize(D) == C
    cocycle = ha.dualize_cycle(ha.DistinguishedCycle(1, (lr.zero(BN), lr.one(BN))))
    assert cocycle.is_covector and cocycle.degree == -1
    ha.check_cycle(D, cocycle)


def test_json_round_trip():
    C = trefoil_complex()
    data = ha.complex_to_json(C)
    assert data["boundaries"]["1"] == [[lr.to_text(L), lr.to_text(P)]]
    assert ha.complex_from_json(data) == C
    with pytest.raises(er.ParseError):
        ha.complex_from_json({"ring": "BN", "ranks": {"0": 1, "1": 2}, "boundaries": {"1": [["L"]]}})


@settings(max_examples=1000, deadline=None)
@given(two_term_complexes(), two_term_complexes())
def test_constructions_keep_square_zero(C, D):
    T = ha.tensor(C, D)
    for k in T.degrees:
        assert ha.is_zero(ha.dot(T.boundary(k + 1), T.boundary(k), T.zero))
    assert ha.dualize(ha.dualize(C)) == C
    identity = {k: ha.identity(C.rank(k), C.one, C.zero) for k in C.degrees}
    cone = ha.mapping_cone(identity, C, C)
    for k in cone.degrees:
        assert ha.is_zero(ha.dot(cone.boundary(k + 1), cone.boundary(k), cone.zero))


W = vl.MonomialWeight({"x": Fraction(1, 4), "u": Fraction(1, 8)})
series_monoms = st.tuples(st.integers(0, 1), st.just(0), st.just(0), st.integers(0, 3), st.just(0), st.integers(0, 3))
series = st.lists(series_monoms, max_size=3).map(lambda t: f2.rf(f2.poly_from_terms(t)))


@st.composite
def series_matrices(draw):
    n, m = draw(st.integers(1, 3)), draw(st.integers(1, 3))
    A = ha.zeros(n, m, f2.SERIES_FIELD.zero)
    for i in range(n):
        for j in range(m):
            A[i, j] = draw(series)
    return A


@settings(max_examples=1000, deadline=None)
@given(series_matrices(), series, st.data())
def test_elementary_divisors_are_invariant(A, c, data):
    n, m = A.shape
    B = A.copy()
    if n > 1:
        i, j = data.draw(st.permutations(range(n)))[:2]
        for col in range(m):
            B[i, col] = B[i, col] + c * B[j, col]
    if m > 1:
        i, j = data.draw(st.permutations(range(m)))[:2]
        for row in range(n):
            B[row, i] = B[row, i] + c * B[row, j]
    unit = f2.rf(1 + f2.series_gen("x"))
    for col in range(m):
        B[0, col] = B[0, col] * unit
    before = sorted(ha.elementary_divisors(A, W).ords)
    after = sorted(ha.elementary_divisors(B, W).ords)
    assert before == after

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphs import C4, C5, K2, K3, L_C4, L_K2, L_P3, P3, P3_PLUS_I, P4, Q3, random_graph
from pstdecide.decider import (
    NO,
    NOT_COSPECTRAL,
    NOT_PERIODIC,
    POLES_NOT_SIMPLE,
    SIGN_PARITY_MISMATCH,
    SINGLETON_SUPPORT,
    YES,
    CoefficientWitness,
    Failure,
    PSTContext,
    PSTVerdict,
    decide_all,
    decide_pst,
    is_cospectral,
    is_strongly_cospectral,
    pole_multiplicity,
    recheck_failure,
    strong_cospectrality_failure,
)
from pstdecide.matrix import IntSymMatrix, build_adjacency
from pstdecide.support import Eigenvalue, MinTime, NotPeriodicWitness

YES_CASES = [
    (K2, 0, 1, 2, 1),
    (P3, 0, 2, 1, 2),
    (C4, 0, 2, 2, 1),
    (Q3, 0, 7, 2, 1),
    (L_K2, 0, 1, 2, 1),
    (L_C4, 0, 2, 2, 1),
    (P3_PLUS_I, 0, 2, 1, 2),
]


@pytest.mark.parametrize("M, a, b, g, delta", YES_CASES)
def test_golden_yes(M, a, b, g, delta):
    v = decide_pst(M, a, b)
    assert v.status == YES
    assert (v.time.g, v.time.delta) == (g, delta)


def test_p3_signs():
    v = decide_pst(P3, 0, 2)
    assert [(str(t), s) for t, s in v.signs] == [("sqrt(2)", 1), ("0", -1), ("-sqrt(2)", 1)]
    assert v.time.numeric == pytest.approx(math.pi / math.sqrt(2))


def test_p3_laplacian_sign_mismatch():
    v = decide_pst(L_P3, 0, 2)
    assert v.failure.kind == SIGN_PARITY_MISMATCH
    w = v.failure.witness
    assert w.theta == Eigenvalue.integer(1)
    assert (w.d, w.sign) == (2, -1)
    assert recheck_failure(L_P3, v)


def test_k3_double_pole():
    for a, b in [(0, 1), (0, 2), (1, 2)]:
        v = decide_pst(K3, a, b)
        assert v.failure.kind == POLES_NOT_SIMPLE
        assert v.failure.witness.theta == Eigenvalue.integer(-1)
        assert v.failure.witness.order == 2


def test_c4_adjacent_pair():
    v = decide_pst(C4, 0, 1)
    assert v.failure.kind == POLES_NOT_SIMPLE
    assert v.failure.witness.theta == Eigenvalue.integer(0)


def test_p4_and_c5_not_periodic():
    v = decide_pst(P4, 0, 3)
    assert v.failure.kind == NOT_PERIODIC
    assert v.failure.witness.reason == "MissingIntegerZRoot"
    for a, b in [(0, 1), (0, 2), (1, 4)]:
        v = decide_pst(C5, a, b)
        assert v.failure == Failure(NOT_PERIODIC, NotPeriodicWitness("MixedIntegerQuadratic", 2))


def test_not_cospectral():
    v = decide_pst(P3, 0, 1)
    assert v.failure == Failure(NOT_COSPECTRAL, CoefficientWitness(0))
    assert recheck_failure(P3, v)


def test_singleton_support_is_caught_by_the_pole_check():
    # a singleton support forces e_a = +-e_b, so the pole test always fires first
    M = IntSymMatrix.from_rows([[3, 0], [0, 3]])
    v = decide_pst(M, 0, 1)
    assert v.failure.kind == POLES_NOT_SIMPLE
    assert v.failure.witness.theta == Eigenvalue.integer(3)
    assert recheck_failure(M, v)
    # the singleton certificate itself still re-validates on its own terms
    single = PSTVerdict(NO, (0, 1), failure=Failure(SINGLETON_SUPPORT, Eigenvalue.integer(3)))
    assert recheck_failure(M, single)


def test_cospectrality_examples():
    assert is_cospectral(P4, 0, 3)
    assert not is_cospectral(P3, 0, 1)
    assert all(is_cospectral(C4, 0, b) for b in (1, 2, 3))
    assert is_strongly_cospectral(C4, 0, 2)
    assert not is_strongly_cospectral(C4, 0, 1)
    assert strong_cospectrality_failure(C4, 0, 1).witness.theta == Eigenvalue.integer(0)
    assert is_strongly_cospectral(P4, 0, 3)


@pytest.mark.parametrize("T, expected", [([0], 1), ([0, 1], 2), ([0, 2], 0)])
def test_pole_multiplicity(T, expected):
    assert pole_multiplicity(C4, T, Eigenvalue.integer(0)) == expected
    assert pole_multiplicity(C4, T, 1e-12) == expected


def test_pole_multiplicity_rejects_non_eigenvalue():
    with pytest.raises(ValueError):
        pole_multiplicity(C4, [0], Eigenvalue.integer(1))
    with pytest.raises(ValueError):
        pole_multiplicity(C4, [0], 0.5)


def test_decide_all_examples():
    assert [(v.status, v.pair) for v in decide_all(K2)] == [(YES, (0, 1))]
    yes = [v.pair for v in decide_all(C4) if v.is_yes]
    assert yes == [(0, 2), (1, 3)]
    assert all(v.time == MinTime(2, 1) for v in decide_all(C4) if v.is_yes)
    assert all(v.status == NO for v in decide_all(P4))
    assert len(decide_all(P4)) == 6


def test_invalid_pairs():
    with pytest.raises(ValueError):
        decide_pst(K2, 0, 0)
    with pytest.raises((ValueError, IndexError)):
        decide_pst(K2, 0, 2)
    with pytest.raises(ValueError):
        decide_all(IntSymMatrix.from_rows([[0]]))


def test_verdict_validation():
    with pytest.raises(ValueError):
        PSTVerdict(YES, (0, 1))
    with pytest.raises(ValueError):
        PSTVerdict("maybe", (0, 1))
    with pytest.raises(ValueError):
        Failure("Whatever", CoefficientWitness(0))


def test_forged_failures_do_not_recheck():
    forged = PSTVerdict(NO, (0, 2), failure=Failure(NOT_COSPECTRAL, CoefficientWitness(1)))
    assert not recheck_failure(C4, forged)
    forged = PSTVerdict(NO, (0, 2), failure=Failure(SINGLETON_SUPPORT, Eigenvalue.integer(0)))
    assert not recheck_failure(C4, forged)
    yes = decide_pst(K2, 0, 1)
    assert not recheck_failure(K2, yes)


def test_sign_rule_is_shift_invariant():
    for M in (P3, C4, Q3, L_P3):
        shifted = M.shifted(3)
        for v, w in zip(decide_all(M), decide_all(shifted)):
            assert v.status == w.status
            if v.is_yes:
                assert v.time == w.time


def test_large_graph_uses_cached_deleted_polys():
    rng = np.random.default_rng(11)
    M = build_adjacency(random_graph(rng, 24, 0.3), 24)
    ctx = PSTContext(M)
    verdicts = decide_all(M, ctx)
    assert len(verdicts) == 24 * 23 // 2
    for v in verdicts[:20]:
        assert v.failure is None or recheck_failure(M, v)


graphs = st.integers(2, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(
        st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] < e[1]),
        unique=True, max_size=n * (n - 1) // 2)))


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_symmetry_and_support_equality(g):
    n, edges = g
    M = build_adjacency(edges, n)
    ctx = PSTContext(M)
    for a in range(n):
        for b in range(a + 1, n):
            v, w = ctx.decide(a, b), ctx.decide(b, a)
            assert v.status == w.status
            assert v.time == w.time
            if ctx.strong_cospectrality_failure(a, b) is None:
                assert ctx.support_poly(a) == ctx.support_poly(b)
            if v.status == NO:
                assert recheck_failure(M, v)


def test_single_vertex_edge_cases():
    M = IntSymMatrix.from_rows([[-2]])
    sc = PSTContext(M).classification(0)
    assert [str(e) for e in sc.eigenvalues] == ["-2"]
    assert pole_multiplicity(M, [0], Eigenvalue.integer(-2)) == 1
    assert pole_multiplicity(K2, [0, 1], Eigenvalue.integer(1)) == 1

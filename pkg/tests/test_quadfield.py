from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphs import C4, P3, random_symmetric
from pstdecide.decider import PSTContext
from pstdecide.poly import root_multiplicity
from pstdecide.quadfield import QuadNum, nullspace_quad, sign_ratio
from pstdecide.support import Eigenvalue, NotPeriodicWitness

SQRT2 = QuadNum(0, 1, 2)


def q(a, b=0, d=2):
    return QuadNum(Fraction(a), Fraction(b), d)


class TestArithmetic:
    def test_conjugate_product(self):
        assert (q(1, 1) * q(1, -1)) == q(-1)

    def test_inverse(self):
        assert 1 / q(1, 1) == q(-1, 1)
        with pytest.raises(ZeroDivisionError):
            q(0).inverse()

    def test_sign(self):
        assert QuadNum(Fraction(1, 2), Fraction(-1, 2), 5).sign() == -1
        assert q(3, -2).sign() == 1  # 3 > 2*sqrt2
        assert q(-3, 2).sign() == -1
        assert q(0).sign() == 0

    def test_ordering_and_float(self):
        assert q(1, 1) > q(2)
        assert float(q(1, 1)) == pytest.approx(1 + 2 ** 0.5)

    def test_delta_mismatch(self):
        with pytest.raises(ValueError):
            QuadNum(0, 1, 2) + QuadNum(0, 1, 3)
        assert (QuadNum(0, 1, 2) + QuadNum(1, 0, 3)) == q(1, 1)

    def test_delta_one_folds(self):
        assert QuadNum(1, 2, 1) == QuadNum(3, 0, 1)


fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@settings(max_examples=200, deadline=None)
@given(fracs, fracs, fracs, fracs, fracs, fracs, st.sampled_from([2, 3, 5, 6, 7]))
def test_field_axioms(a, b, c, d, e, f, delta):
    x, y, z = QuadNum(a, b, delta), QuadNum(c, d, delta), QuadNum(e, f, delta)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    if not x.is_zero():
        assert x * x.inverse() == QuadNum(1, 0, delta)
    assert x.norm() == (x * x.conjugate()).rat
    assert float(x - y) == pytest.approx(float(x) - float(y), abs=1e-9)
    if abs(float(x) - float(y)) > 1e-9:
        assert (x < y) == (float(x) < float(y))
    assert (x - y).sign() == -(y - x).sign()


def _matvec(M, v):
    return [sum((M[i, j] * v[j] for j in range(M.n)), QuadNum(0, 0, v[0].delta))
            for i in range(M.n)]


def _proportional(u, v):
    k = next(i for i, x in enumerate(u) if not x.is_zero())
    r = v[k] / u[k]
    return all(v[i] == r * u[i] for i in range(len(u)))


class TestNullspace:
    def test_p3_sqrt2(self):
        basis = nullspace_quad(P3, Eigenvalue(0, 2, 2))
        assert len(basis) == 1
        assert _proportional(basis[0], [q(1), SQRT2, q(1)])

    def test_p3_zero(self):
        basis = nullspace_quad(P3, Eigenvalue.integer(0))
        assert len(basis) == 1
        assert _proportional(basis[0], [q(1, 0, 1), q(0, 0, 1), q(-1, 0, 1)])

    def test_c4_zero_is_two_dimensional(self):
        basis = nullspace_quad(C4, Eigenvalue.integer(0))
        assert len(basis) == 2
        for v in basis:
            assert all(x.is_zero() for x in _matvec(C4, v))

    def test_non_eigenvalue(self):
        with pytest.raises(ValueError):
            nullspace_quad(P3, Eigenvalue.integer(1))


@pytest.mark.parametrize("M, theta, a, b, expected", [
    (P3, Eigenvalue.integer(0), 0, 2, -1),
    (P3, Eigenvalue(0, 2, 2), 0, 2, 1),
    (C4, Eigenvalue.integer(0), 0, 2, -1),
    (C4, Eigenvalue.integer(2), 0, 2, 1),
])
def test_sign_ratio(M, theta, a, b, expected):
    assert sign_ratio(M, theta, a, b) == expected


def test_sign_ratio_inconsistent_pair_asserts():
    # 0 and 1 in C4 are not strongly cospectral: at theta = 0 the kernel
    # contains vectors with x_0 = 0 != x_1 and vice versa
    with pytest.raises(AssertionError):
        sign_ratio(C4, Eigenvalue.integer(0), 0, 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_nullspace_dimension_is_multiplicity(n, seed):
    M = random_symmetric(np.random.default_rng(seed), n, -3, 3)
    ctx = PSTContext(M)
    for a in range(n):
        sc = ctx.classification(a)
        if isinstance(sc, NotPeriodicWitness):
            continue
        for theta in sc.eigenvalues:
            basis = nullspace_quad(M, theta)
            assert len(basis) == root_multiplicity(ctx.phi, theta.minimal_poly())
            t = theta.as_quad()
            for v in basis:
                assert _matvec(M, v) == [t * x for x in v]

"""Exact perfect-state-transfer decision between two columns of M.

The checks run cheapest first: cospectrality (equal vertex-deleted
polynomials), periodicity (integer or quadratic support), simple poles of
phi_ab/phi (which together with cospectrality is strong cospectrality),
and finally the sign/parity compatibility of eigenvector entries against
d_r = (theta_0 - theta_r)/(g*sqrt(delta)).  Cospectral columns share their
support polynomial, so the order is symmetric in the two columns.  The
first failing check produces the certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .matrix import (
    IntSymMatrix,
    charpoly,
    charpoly_deleted,
    deleted_charpolys,
    spectral_bound,
    vertex_set,
)
from .poly import (
    IntPoly,
    derivative,
    exact_div,
    exact_div_rational,
    integer_roots,
    is_squarefree,
    poly_gcd,
    root_multiplicity,
    squarefree_decomposition,
)
from .quadfield import nullspace_quad, sign_ratio
from .support import (
    Eigenvalue,
    MinTime,
    NotPeriodicWitness,
    SupportClassification,
    classify_support,
    pst_time,
    squarefree_part,
)

YES = "yes"
NO = "no"

NOT_COSPECTRAL = "NotCospectral"
POLES_NOT_SIMPLE = "PolesNotSimple"
NOT_PERIODIC = "NotPeriodic"
SINGLETON_SUPPORT = "SingletonSupport"
SIGN_PARITY_MISMATCH = "SignParityMismatch"

FAILURE_KINDS = (NOT_COSPECTRAL, POLES_NOT_SIMPLE, NOT_PERIODIC, SINGLETON_SUPPORT,
                 SIGN_PARITY_MISMATCH)


@dataclass(frozen=True)
class CoefficientWitness:
    """phi_a and phi_b differ in the coefficient of x**power."""

    power: int


@dataclass(frozen=True)
class PoleWitness:
    """factor**order divides phi/gcd(phi, phi_ab) with order >= 2."""

    factor: IntPoly
    order: int
    theta: Eigenvalue | None = None


@dataclass(frozen=True)
class SignWitness:
    """base_sign * sign at support index r disagrees with (-1)**d."""

    r: int
    theta: Eigenvalue
    d: int
    sign: int
    base_sign: int


Witness = Union[CoefficientWitness, PoleWitness, NotPeriodicWitness, Eigenvalue, SignWitness]


@dataclass(frozen=True)
class Failure:
    kind: str
    witness: Witness

    def __post_init__(self) -> None:
        if self.kind not in FAILURE_KINDS:
            raise ValueError(f"unknown failure kind {self.kind!r}")


@dataclass(frozen=True)
class PSTVerdict:
    status: str
    pair: tuple[int, int]
    time: MinTime | None = None
    signs: tuple[tuple[Eigenvalue, int], ...] = ()
    failure: Failure | None = None
    classification: SupportClassification | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.status == YES:
            if self.time is None or not self.signs or self.failure is not None:
                raise ValueError("a yes verdict carries a time and signs, and no failure")
        elif self.status == NO:
            if self.failure is None or self.time is not None:
                raise ValueError("a no verdict carries exactly one failure")
        else:
            raise ValueError(f"status must be {YES!r} or {NO!r}")

    @property
    def is_yes(self) -> bool:
        return self.status == YES


def _eigenvalue_from_factor(F: IntPoly, R: int) -> Eigenvalue | None:
    """An exact root of F when it is an integer or a quadratic integer."""
    ints = integer_roots(F, R)
    if ints:
        return Eigenvalue.integer(ints[-1][0])
    if F.degree == 2 and F.lc == 1:
        c, b, _ = F.coeffs
        disc = b * b - 4 * c
        if disc > 0:
            delta, s = squarefree_part(disc)
            if delta > 1:
                return Eigenvalue(-b, s, delta)
    return None


class PSTContext:
    """Per-matrix caches shared by every pair decision on the same M."""

    def __init__(self, M: IntSymMatrix) -> None:
        self.M = M
        self.R = spectral_bound(M)
        self._phi: IntPoly | None = None
        self._phi_a: dict[int, IntPoly] = {}
        self._support: dict[int, SupportClassification | NotPeriodicWitness] = {}
        self._kernels: dict[Eigenvalue, list] = {}

    @property
    def phi(self) -> IntPoly:
        if self._phi is None:
            self._phi = charpoly(self.M)
        return self._phi

    def preload_deleted(self) -> None:
        if self.M.n >= 2 and len(self._phi_a) < self.M.n:
            for a, poly in enumerate(deleted_charpolys(self.M, self.phi)):
                self._phi_a[a] = poly

    def phi_a(self, a: int) -> IntPoly:
        if a not in self._phi_a:
            vertex_set([a], self.M.n)
            # deleting the only index leaves the empty determinant, 1
            self._phi_a[a] = charpoly_deleted(self.M, [a]) if self.M.n > 1 else IntPoly([1])
        return self._phi_a[a]

    def support_poly(self, a: int) -> IntPoly:
        return exact_div(self.phi, poly_gcd(self.phi, self.phi_a(a)))

    def classification(self, a: int) -> SupportClassification | NotPeriodicWitness:
        if a not in self._support:
            self._support[a] = classify_support(self.support_poly(a), self.R)
        return self._support[a]

    def kernel(self, theta: Eigenvalue) -> list:
        if theta not in self._kernels:
            self._kernels[theta] = nullspace_quad(self.M, theta)
        return self._kernels[theta]

    def _check_pair(self, a: int, b: int) -> None:
        vertex_set([a, b], self.M.n)
        if a == b:
            raise ValueError("perfect state transfer needs two distinct indices")

    def cospectral_witness(self, a: int, b: int) -> CoefficientWitness | None:
        fa, fb = self.phi_a(a), self.phi_a(b)
        if fa == fb:
            return None
        top = max(fa.degree, fb.degree)
        for k in range(top, -1, -1):
            ca = fa.coeffs[k] if k < len(fa.coeffs) else 0
            cb = fb.coeffs[k] if k < len(fb.coeffs) else 0
            if ca != cb:
                return CoefficientWitness(k)
        raise AssertionError("unequal polynomials with equal coefficients")

    def pole_quotient(self, a: int, b: int) -> IntPoly:
        phi_ab = charpoly_deleted(self.M, [a, b]) if self.M.n > 2 else IntPoly([1])
        return exact_div(self.phi, poly_gcd(self.phi, phi_ab))

    def pole_witness(self, a: int, b: int) -> PoleWitness | None:
        quotient = self.pole_quotient(a, b)
        if is_squarefree(quotient):
            return None
        factor, order = next((F, i) for F, i in squarefree_decomposition(quotient) if i >= 2)
        return PoleWitness(factor, order, _eigenvalue_from_factor(factor, self.R))

    def strong_cospectrality_failure(self, a: int, b: int) -> Failure | None:
        self._check_pair(a, b)
        cw = self.cospectral_witness(a, b)
        if cw is not None:
            return Failure(NOT_COSPECTRAL, cw)
        pw = self.pole_witness(a, b)
        if pw is not None:
            return Failure(POLES_NOT_SIMPLE, pw)
        return None

    def decide(self, a: int, b: int) -> PSTVerdict:
        pair = (a, b)
        self._check_pair(a, b)
        cw = self.cospectral_witness(a, b)
        if cw is not None:
            return PSTVerdict(NO, pair, failure=Failure(NOT_COSPECTRAL, cw))
        sc = self.classification(a)
        if isinstance(sc, NotPeriodicWitness):
            return PSTVerdict(NO, pair, failure=Failure(NOT_PERIODIC, sc))
        pw = self.pole_witness(a, b)
        if pw is not None:
            return PSTVerdict(NO, pair, failure=Failure(POLES_NOT_SIMPLE, pw))
        if sc.k == 0:
            return PSTVerdict(NO, pair, failure=Failure(SINGLETON_SUPPORT, sc.eigenvalues[0]),
                              classification=sc)
        signs = []
        base = None
        for r, (theta, diff) in enumerate(zip(sc.eigenvalues, sc.differences())):
            d = diff // sc.g
            s = sign_ratio(self.M, theta, a, b, basis=self.kernel(theta))
            if base is None:
                base = s
            # the phases exp(i*t*theta_r)*s_r must all agree at t = pi/(g*sqrt(delta))
            if base * s != (-1) ** d:
                witness = SignWitness(r, theta, d, s, base)
                return PSTVerdict(NO, pair, failure=Failure(SIGN_PARITY_MISMATCH, witness),
                                  classification=sc)
            signs.append((theta, s))
        return PSTVerdict(YES, pair, time=pst_time(sc), signs=tuple(signs), classification=sc)


def is_cospectral(M: IntSymMatrix, a: int, b: int) -> bool:
    ctx = PSTContext(M)
    ctx._check_pair(a, b)
    return ctx.cospectral_witness(a, b) is None


def strong_cospectrality_failure(M: IntSymMatrix, a: int, b: int) -> Failure | None:
    return PSTContext(M).strong_cospectrality_failure(a, b)


def is_strongly_cospectral(M: IntSymMatrix, a: int, b: int) -> bool:
    return strong_cospectrality_failure(M, a, b) is None


def is_periodic(M: IntSymMatrix, a: int) -> SupportClassification | NotPeriodicWitness:
    return PSTContext(M).classification(a)


def _coprime_parts(phi: IntPoly, phi_t: IntPoly) -> list[tuple[IntPoly, int]]:
    """Square-free coprime pieces of phi paired with the pole order there.

    The pole orders come from phi/gcd(phi, phi_T); what remains of phi's
    square-free part has pole order 0.
    """
    reduced = exact_div_rational(phi, poly_gcd(phi, phi_t))
    parts = squarefree_decomposition(reduced) if reduced.degree > 0 else []
    rest = exact_div_rational(phi, poly_gcd(phi, derivative(phi)))
    for F, _ in parts:
        rest = exact_div_rational(rest, poly_gcd(rest, F))
    if rest.degree > 0:
        parts.append((rest, 0))
    return parts


def pole_multiplicity(M: IntSymMatrix, T, theta: Union[Eigenvalue, float]) -> int:
    """Order of theta as a pole of phi_T / phi.

    ``theta`` is either an exact ``Eigenvalue`` or a float approximating a
    root of phi; in the float case the root is located among the
    square-free coprime pieces of phi by nearest numerical root.
    """
    members = vertex_set(T, M.n)
    phi = charpoly(M)
    if not members:
        phi_t = phi
    elif len(members) == M.n:
        phi_t = IntPoly([1])  # determinant of the empty matrix
    else:
        phi_t = charpoly_deleted(M, members)
    if isinstance(theta, Eigenvalue):
        mp = theta.minimal_poly()
        m_phi = root_multiplicity(phi, mp)
        if m_phi == 0:
            raise ValueError(f"{theta} is not an eigenvalue")
        return max(0, m_phi - root_multiplicity(phi_t, mp))
    x = float(theta)
    best: tuple[float, int] | None = None
    for F, order in _coprime_parts(phi, phi_t):
        roots = np.roots([float(c) for c in reversed(F.coeffs)])
        dist = float(np.min(np.abs(roots - x)))
        if best is None or dist < best[0]:
            best = (dist, order)
    scale = max(1.0, abs(x))
    if best is None or best[0] > 1e-6 * scale:
        raise ValueError(f"{theta} is not close to an eigenvalue")
    return best[1]


def decide_pst(M: IntSymMatrix, a: int, b: int) -> PSTVerdict:
    return PSTContext(M).decide(a, b)


def decide_all(M: IntSymMatrix, ctx: PSTContext | None = None) -> list[PSTVerdict]:
    """Verdicts for every pair a < b, in lexicographic order."""
    if M.n < 2:
        raise ValueError("need at least two indices")
    if ctx is None:
        ctx = PSTContext(M)
    ctx.preload_deleted()
    return [ctx.decide(a, b) for a in range(M.n) for b in range(a + 1, M.n)]


def recheck_failure(M: IntSymMatrix, verdict: PSTVerdict) -> bool:
    """Re-derive a NO certificate from scratch; True when it still holds."""
    if verdict.status != NO or verdict.failure is None:
        return False
    a, b = verdict.pair
    ctx = PSTContext(M)
    kind, w = verdict.failure.kind, verdict.failure.witness
    try:
        if kind == NOT_COSPECTRAL:
            fa, fb = ctx.phi_a(a), ctx.phi_a(b)
            coeff = lambda f: f.coeffs[w.power] if w.power < len(f.coeffs) else 0  # noqa: E731
            return coeff(fa) != coeff(fb)
        if kind == NOT_PERIODIC:
            return ctx.classification(a) == w
        if kind == POLES_NOT_SIMPLE:
            quotient = ctx.pole_quotient(a, b)
            if w.order < 2 or root_multiplicity(quotient, w.factor) < w.order:
                return False
            if w.theta is not None:
                return root_multiplicity(quotient, w.theta.minimal_poly()) >= 2
            return True
        sc = ctx.classification(a)
        if isinstance(sc, NotPeriodicWitness):
            return False
        if kind == SINGLETON_SUPPORT:
            return sc.k == 0 and sc.eigenvalues[0] == w
        if kind == SIGN_PARITY_MISMATCH:
            if not (0 < w.r <= sc.k) or sc.eigenvalues[w.r] != w.theta:
                return False
            d = sc.differences()[w.r] // sc.g
            s = sign_ratio(M, w.theta, a, b)
            base = sign_ratio(M, sc.eigenvalues[0], a, b)
            return d == w.d and s == w.sign and base == w.base_sign and base * s != (-1) ** d
    except (ValueError, ArithmeticError, AssertionError, AttributeError):
        return False
    return False

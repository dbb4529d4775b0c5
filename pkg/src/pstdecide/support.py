"""Eigenvalue supports: extraction, integer/quadratic classification, and g.

A column's support polynomial is phi / gcd(phi, phi_a).  Its roots are the
eigenvalues whose eigenspace sees the column.  Periodicity forces those
roots to be integers, or quadratic integers (p + q*sqrt(delta))/2 sharing
one p and one delta.  Classification never factors or isolates roots:
after removing integer roots, the substitution x -> (x + p)/2 turns the
rest into an even polynomial whose roots squared must be integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import gcd, isqrt

from .matrix import IntSymMatrix, charpoly, charpoly_deleted, spectral_bound
from .poly import IntPoly, eval_quad, exact_div, integer_roots, is_squarefree, poly_gcd, shift_scale
from .quadfield import QuadNum

# NotPeriodicWitness reasons
MIXED_INTEGER_QUADRATIC = "MixedIntegerQuadratic"
ODD_DEGREE_REMAINDER = "OddDegreeRemainder"
NON_INTEGER_SHARED_TRACE = "NonIntegerSharedTrace"
ZERO_WITH_NONZERO_TRACE = "ZeroWithNonzeroTrace"
ODD_COEFFICIENT_AFTER_SHIFT = "OddCoefficientAfterShift"
MISSING_INTEGER_Z_ROOT = "MissingIntegerZRoot"
PERFECT_SQUARE_Z_ROOT = "PerfectSquareZRoot"
INCONSISTENT_DELTA = "InconsistentDelta"

REASONS = (
    MIXED_INTEGER_QUADRATIC,
    ODD_DEGREE_REMAINDER,
    NON_INTEGER_SHARED_TRACE,
    ZERO_WITH_NONZERO_TRACE,
    ODD_COEFFICIENT_AFTER_SHIFT,
    MISSING_INTEGER_Z_ROOT,
    PERFECT_SQUARE_Z_ROOT,
    INCONSISTENT_DELTA,
)


def is_squarefree_int(m: int) -> bool:
    if m < 1:
        return False
    return squarefree_part(m)[1] == 1


def squarefree_part(m: int) -> tuple[int, int]:
    """(delta, s) with m = s**2 * delta and delta square-free, by trial division."""
    if m < 1:
        raise ValueError("squarefree_part needs a positive integer")
    delta, s = 1, 1
    d = 2
    while d * d <= m:
        e = 0
        while m % d == 0:
            m //= d
            e += 1
        if e:
            s *= d ** (e // 2)
            if e % 2:
                delta *= d
        d += 1 if d == 2 else 2
    return delta * m, s


@dataclass(frozen=True)
class Eigenvalue:
    """The real number (p + q*sqrt(delta))/2.

    Integer supports use delta = 1, p = 0 and q = 2*value so that
    differences divided by sqrt(delta) read the same in both cases.
    """

    p: int
    q: int
    delta: int

    def __post_init__(self) -> None:
        if self.delta < 1 or not is_squarefree_int(self.delta):
            raise ValueError(f"delta = {self.delta} is not a positive square-free integer")
        if self.delta == 1 and (self.p != 0 or self.q % 2):
            raise ValueError("integer eigenvalues are stored as p = 0, q = 2*value")
        if (self.p * self.p - self.q * self.q * self.delta) % 4:
            raise ValueError(f"({self.p} + {self.q}*sqrt({self.delta}))/2 is not an algebraic integer")

    @classmethod
    def integer(cls, value: int) -> Eigenvalue:
        return cls(0, 2 * value, 1)

    def as_quad(self) -> QuadNum:
        return QuadNum(Fraction(self.p, 2), Fraction(self.q, 2), self.delta)

    @property
    def is_integer(self) -> bool:
        return self.delta == 1 or self.q == 0

    @property
    def value(self) -> float:
        return (self.p + self.q * math.sqrt(self.delta)) / 2

    def minimal_poly(self) -> IntPoly:
        if self.delta == 1:
            return IntPoly([-(self.q // 2), 1])
        if self.q == 0:
            return IntPoly([-(self.p // 2), 1])
        return IntPoly([(self.p * self.p - self.q * self.q * self.delta) // 4, -self.p, 1])

    def compare(self, other: Eigenvalue) -> int:
        return (self.as_quad() - other.as_quad()).sign()

    def __str__(self) -> str:
        if self.delta == 1:
            return str(self.q // 2)
        if self.q == 0:
            return str(self.p // 2)
        return str(self.as_quad())


@dataclass(frozen=True)
class NotPeriodicWitness:
    reason: str
    detail: IntPoly | int

    def __post_init__(self) -> None:
        if self.reason not in REASONS:
            raise ValueError(f"unknown reason {self.reason!r}")


@dataclass(frozen=True)
class MinTime:
    """The exact time pi / (g * sqrt(delta))."""

    g: int
    delta: int

    @property
    def numeric(self) -> float:
        return math.pi / (self.g * math.sqrt(self.delta))

    @property
    def symbolic(self) -> str:
        if self.delta == 1:
            return "pi" if self.g == 1 else f"pi/{self.g}"
        if self.g == 1:
            return f"pi/sqrt({self.delta})"
        return f"pi/({self.g}*sqrt({self.delta}))"

    def __str__(self) -> str:
        return self.symbolic


@dataclass(frozen=True)
class SupportClassification:
    eigenvalues: tuple[Eigenvalue, ...]  # strictly descending
    delta: int
    p: int
    g: int | None  # None for a singleton support

    @property
    def k(self) -> int:
        return len(self.eigenvalues) - 1

    def differences(self) -> list[int]:
        """(theta_0 - theta_r)/sqrt(delta) for every r, as integers."""
        q0 = self.eigenvalues[0].q
        return [(q0 - e.q) // 2 for e in self.eigenvalues]

    def product_poly(self) -> list[QuadNum]:
        """prod (x - theta_r) with coefficients in Q(sqrt(delta)), low power first."""
        coeffs = [QuadNum(1, 0, self.delta)]
        for e in self.eigenvalues:
            t = e.as_quad()
            nxt = [QuadNum(0, 0, self.delta)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] = nxt[i + 1] + c
                nxt[i] = nxt[i] - c * t
            coeffs = nxt
        return coeffs

    def reconstructs(self, f: IntPoly) -> bool:
        coeffs = self.product_poly()
        if any(c.irr != 0 or c.rat.denominator != 1 for c in coeffs):
            return False
        return IntPoly(int(c.rat) for c in coeffs) == f


def support_poly(M: IntSymMatrix, a: int, *, phi: IntPoly | None = None,
                 phi_a: IntPoly | None = None) -> IntPoly:
    """phi / gcd(phi, phi_a): monic, square-free, roots = support of column a."""
    if not 0 <= a < M.n:
        raise IndexError(f"index {a} out of range for order {M.n}")
    if phi is None:
        phi = charpoly(M)
    if M.n == 1:
        return phi
    if phi_a is None:
        phi_a = charpoly_deleted(M, [a])
    return exact_div(phi, poly_gcd(phi, phi_a))


def _sort_desc(eigs: list[Eigenvalue]) -> list[Eigenvalue]:
    return sorted(eigs, key=cmp_to_key(lambda x, y: y.compare(x)))


def classify_support(f: IntPoly, R: int) -> SupportClassification | NotPeriodicWitness:
    """Classify the roots of the support polynomial f (all real roots in [-R, R])."""
    if f.degree < 1 or not f.is_monic():
        raise ValueError("support polynomial must be monic and nonconstant")
    if not is_squarefree(f):
        raise ValueError("support polynomial must be square-free")

    roots = [r for r, _ in integer_roots(f, R)]
    h = f
    for r in roots:
        h = exact_div(h, IntPoly([-r, 1]))

    if h.degree == 0:
        eigs = _sort_desc([Eigenvalue.integer(r) for r in roots])
        return _finish(f, eigs, 1, 0)

    if len(roots) > 1:
        nonzero = [r for r in roots if r != 0]
        return NotPeriodicWitness(MIXED_INTEGER_QUADRATIC, nonzero[0])
    m = h.degree
    if m % 2:
        return NotPeriodicWitness(ODD_DEGREE_REMAINDER, h)
    sub = h.coeffs[m - 1]
    if (2 * sub) % m:
        return NotPeriodicWitness(NON_INTEGER_SHARED_TRACE, h)
    p = -(2 * sub) // m
    if roots and 2 * roots[0] != p:
        # an integer root inside a quadratic support must equal p/2
        if roots[0] == 0:
            return NotPeriodicWitness(ZERO_WITH_NONZERO_TRACE, p)
        return NotPeriodicWitness(MIXED_INTEGER_QUADRATIC, roots[0])

    hh = shift_scale(h, p)
    if any(c for c in hh.coeffs[1::2]):
        return NotPeriodicWitness(ODD_COEFFICIENT_AFTER_SHIFT, hh)
    G = IntPoly(hh.coeffs[0::2])
    top = (2 * R + abs(p)) ** 2
    zs = [z for z, _ in integer_roots(G, top, lo=1, limit=G.degree)]
    if len(zs) < G.degree:
        return NotPeriodicWitness(MISSING_INTEGER_Z_ROOT, G)
    for z in zs:
        if isqrt(z) ** 2 == z:
            return NotPeriodicWitness(PERFECT_SQUARE_Z_ROOT, z)
    delta, _ = squarefree_part(max(zs))
    qs = []
    for z in zs:
        d, s = squarefree_part(z)
        if d != delta:
            return NotPeriodicWitness(INCONSISTENT_DELTA, z)
        qs.append(s)
    eigs = [Eigenvalue(p, s, delta) for s in qs] + [Eigenvalue(p, -s, delta) for s in qs]
    if roots:
        eigs.append(Eigenvalue(p, 0, delta))
    return _finish(f, _sort_desc(eigs), delta, p)


def _finish(f: IntPoly, eigs: list[Eigenvalue], delta: int, p: int) -> SupportClassification:
    for e in eigs:
        if not eval_quad(f, e.as_quad()).is_zero():
            raise AssertionError(f"classified value {e} is not a root of {f}")
    g = None
    if len(eigs) > 1:
        q0 = eigs[0].q
        g = 0
        for e in eigs[1:]:
            g = gcd(g, (q0 - e.q) // 2)
    sc = SupportClassification(tuple(eigs), delta, p, g)
    if not sc.reconstructs(f):
        raise AssertionError(f"classification does not reconstruct {f}")
    return sc


def compute_g(sc: SupportClassification) -> int:
    if sc.k < 1 or sc.g is None:
        raise ValueError("g is undefined for a singleton support")
    return sc.g


def pst_time(sc: SupportClassification) -> MinTime:
    return MinTime(compute_g(sc), sc.delta)


def is_periodic(M: IntSymMatrix, a: int, *, phi: IntPoly | None = None,
                phi_a: IntPoly | None = None) -> SupportClassification | NotPeriodicWitness:
    return classify_support(support_poly(M, a, phi=phi, phi_a=phi_a), spectral_bound(M))

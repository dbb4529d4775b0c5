"""Dense integer polynomials and the exact operations the decider needs.

Coefficients are stored lowest power first; the zero polynomial has no
coefficients.  Everything here works over the integers (gcds are computed
with a subresultant pseudo-remainder sequence), so no rational blow-up
occurs even for characteristic polynomials of 64 x 64 matrices.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Any, Iterable, Sequence


class IntPoly:
    """Immutable polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()) -> None:
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def from_descending(cls, coeffs: Sequence[int]) -> IntPoly:
        return cls(reversed(list(coeffs)))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPoly:
        out = cls([1])
        for r in roots:
            out = out * cls([-r, 1])
        return out

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPoly:
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def content(self) -> int:
        c = 0
        for a in self.coeffs:
            c = gcd(c, a)
        return c

    def primitive(self) -> IntPoly:
        """Primitive part, normalised to a positive leading coefficient."""
        if not self.coeffs:
            return self
        c = self.content()
        if self.lc < 0:
            c = -c
        return IntPoly(a // c for a in self.coeffs)

    def max_bits(self) -> int:
        return max((abs(c).bit_length() for c in self.coeffs), default=0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                base = "x" if k == 1 else f"x^{k}"
                body = base if mag == 1 else f"{mag}*{base}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self.coeffs)

    def __add__(self, other: IntPoly | int) -> IntPoly:
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __sub__(self, other: IntPoly | int) -> IntPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other: IntPoly | int) -> IntPoly:
        return _coerce(other) - self

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPoly:
        out = IntPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, x: Any) -> Any:
        """Horner evaluation; works for int, Fraction, float and QuadNum."""
        acc: Any = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def _coerce(v: IntPoly | int) -> IntPoly:
    if isinstance(v, IntPoly):
        return v
    if isinstance(v, int):
        return IntPoly([v])
    raise TypeError(f"cannot use {type(v).__name__} as IntPoly")


def derivative(f: IntPoly) -> IntPoly:
    return IntPoly(k * c for k, c in enumerate(f.coeffs) if k > 0)


def pseudo_rem(f: IntPoly, g: IntPoly) -> IntPoly:
    """lc(g)**(deg f - deg g + 1) * f  mod  g, computed in Z[x]."""
    if g.is_zero():
        raise ZeroDivisionError("pseudo-remainder by zero polynomial")
    r = list(f.coeffs)
    dg = g.degree
    lg = g.lc
    e = f.degree - dg + 1
    if e <= 0:
        return f
    gc = g.coeffs
    while len(r) - 1 >= dg and r:
        top = r[-1]
        shift = len(r) - 1 - dg
        r = [lg * c for c in r]
        for i, c in enumerate(gc):
            r[shift + i] -= top * c
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        e -= 1
    if e > 0:
        m = lg**e
        r = [m * c for c in r]
    return IntPoly(r)


def divmod_exact(f: IntPoly, g: IntPoly) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder over Q[x] (rational coefficients, low first)."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    r = [Fraction(c) for c in f.coeffs]
    dg = g.degree
    lg = g.lc
    q = [Fraction(0)] * max(f.degree - dg + 1, 0)
    while len(r) - 1 >= dg and r:
        shift = len(r) - 1 - dg
        t = r[-1] / lg
        q[shift] = t
        for i, c in enumerate(g.coeffs):
            r[shift + i] -= t * c
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return q, r


def exact_div(f: IntPoly, g: IntPoly) -> IntPoly:
    """The integer polynomial q with f == q * g.

    Raises ``ArithmeticError`` when g does not divide f exactly in Z[x].
    """
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if g.lc in (1, -1):
        # Fast integer-only path for the monic divisors the decider uses.
        r = list(f.coeffs)
        dg = g.degree
        lg = g.lc
        q = [0] * max(f.degree - dg + 1, 0)
        gc = g.coeffs
        while len(r) - 1 >= dg and r:
            shift = len(r) - 1 - dg
            t = r[-1] * lg
            q[shift] = t
            if t:
                for i, c in enumerate(gc):
                    r[shift + i] -= t * c
            r.pop()
            while r and r[-1] == 0:
                r.pop()
        if r:
            raise ArithmeticError(f"{g} does not divide {f}")
        return IntPoly(q)
    q, r = divmod_exact(f, g)
    if r or any(c.denominator != 1 for c in q):
        raise ArithmeticError(f"{g} does not divide {f} over the integers")
    return IntPoly(int(c) for c in q)


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd with positive leading coefficient (subresultant PRS)."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    if f.is_zero():
        return g.primitive()
    if g.is_zero():
        return f.primitive()
    a, b = f.primitive(), g.primitive()
    if a.degree < b.degree:
        a, b = b, a
    if b.degree == 0:
        return IntPoly([1])
    sg, h = 1, 1
    while True:
        delta = a.degree - b.degree
        r = pseudo_rem(a, b)
        if r.is_zero():
            return b.primitive()
        if r.degree == 0:
            return IntPoly([1])
        a = b
        den = sg * h**delta
        b = IntPoly(c // den for c in r.coeffs)
        sg = a.lc
        if delta == 1:
            h = sg
        elif delta > 1:
            h = sg**delta // h ** (delta - 1)


def is_squarefree(f: IntPoly) -> bool:
    if f.is_zero():
        raise ValueError("square-freeness of the zero polynomial is undefined")
    if f.degree <= 1:
        return True
    return poly_gcd(f, derivative(f)).degree == 0


def squarefree_decomposition(f: IntPoly) -> list[tuple[IntPoly, int]]:
    """Split primitive f as prod F_i**i with F_i square-free and pairwise coprime.

    Only factors of positive degree are returned, as ``(F_i, i)`` pairs.
    Uses gcds and exact divisions only, so content normalisation is harmless.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no square-free decomposition")
    f = f.primitive()
    if f.degree <= 0:
        return []
    out: list[tuple[IntPoly, int]] = []
    c = poly_gcd(f, derivative(f))
    w = exact_div_rational(f, c)
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        fi = exact_div_rational(w, y)
        if fi.degree > 0:
            out.append((fi, i))
        w = y
        c = exact_div_rational(c, y)
        i += 1
    return out


def exact_div_rational(f: IntPoly, g: IntPoly) -> IntPoly:
    """Exact quotient over Q[x], returned as its primitive integer multiple.

    Handy inside gcd-based algorithms where only the roots matter.
    """
    q, r = divmod_exact(f, g)
    if r:
        raise ArithmeticError(f"{g} does not divide {f}")
    den = 1
    for c in q:
        den = den * c.denominator // gcd(den, c.denominator)
    return IntPoly(int(c * den) for c in q).primitive() if q else IntPoly()


def root_multiplicity(f: IntPoly, factor: IntPoly) -> int:
    """Largest m with factor**m dividing f (factor of positive degree)."""
    if f.is_zero():
        raise ValueError("every factor divides the zero polynomial")
    if factor.degree < 1:
        raise ValueError("factor must have positive degree")
    m = 0
    cur = f
    while True:
        q, r = divmod_exact(cur, factor)
        if r:
            return m
        m += 1
        den = 1
        for c in q:
            den = den * c.denominator // gcd(den, c.denominator)
        cur = IntPoly(int(c * den) for c in q)


def integer_roots(f: IntPoly, bound: int, *, lo: int | None = None,
                  limit: int | None = None) -> list[tuple[int, int]]:
    """Integer roots of f in [lo, bound] (lo defaults to -bound), ascending.

    Each root comes with its multiplicity.  ``limit`` stops the scan once
    that many distinct roots have been found.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere")
    start = -bound if lo is None else lo
    out: list[tuple[int, int]] = []
    if f.degree <= 0:
        return out
    cs = f.coeffs[::-1]
    for x in range(start, bound + 1):
        acc = 0
        for c in cs:
            acc = acc * x + c
        if acc == 0:
            out.append((x, root_multiplicity(f, IntPoly([-x, 1]))))
            if limit is not None and len(out) >= limit:
                break
    return out


def eval_quad(f: IntPoly, v: Any) -> Any:
    """Exact Horner evaluation of f at an element of Q(sqrt(delta))."""
    return f(v)


def shift_scale(f: IntPoly, p: int) -> IntPoly:
    """2**deg(f) * f((x + p) / 2) as an integer polynomial."""
    m = f.degree
    out = IntPoly()
    base = IntPoly([p, 1])
    power = IntPoly([1])
    for k, c in enumerate(f.coeffs):
        if c:
            out = out + power * (c * 2 ** (m - k))
        power = power * base
    return out

"""Exact arithmetic in Q(sqrt(delta)) and nullspaces of M - theta*I."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

from .matrix import IntSymMatrix

Number = Union[int, Fraction]


class QuadNum:
    """rat + irr * sqrt(delta) with rational parts and square-free delta >= 1."""

    __slots__ = ("rat", "irr", "delta")

    def __init__(self, rat: Number = 0, irr: Number = 0, delta: int = 1) -> None:
        if delta < 1:
            raise ValueError("delta must be a positive square-free integer")
        rat = Fraction(rat)
        irr = Fraction(irr)
        if delta == 1:
            rat, irr = rat + irr, Fraction(0)
        self.rat = rat
        self.irr = irr
        self.delta = delta

    def _lift(self, other: object) -> QuadNum:
        if isinstance(other, QuadNum):
            if other.delta != self.delta:
                if other.irr == 0:
                    return QuadNum(other.rat, 0, self.delta)
                if self.irr == 0:
                    # self is rational; adopt the other's field below
                    return other
                raise ValueError(
                    f"delta mismatch: sqrt({self.delta}) vs sqrt({other.delta})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadNum(other, 0, self.delta)
        return NotImplemented  # type: ignore[return-value]

    def _field(self, other: QuadNum) -> int:
        return other.delta if self.irr == 0 and other.irr != 0 else self.delta

    def __add__(self, other: object) -> QuadNum:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadNum(self.rat + o.rat, self.irr + o.irr, self._field(o))

    __radd__ = __add__

    def __neg__(self) -> QuadNum:
        return QuadNum(-self.rat, -self.irr, self.delta)

    def __sub__(self, other: object) -> QuadNum:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadNum(self.rat - o.rat, self.irr - o.irr, self._field(o))

    def __rsub__(self, other: object) -> QuadNum:
        return (-self) + other

    def __mul__(self, other: object) -> QuadNum:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        d = self._field(o)
        return QuadNum(self.rat * o.rat + self.irr * o.irr * d,
                       self.rat * o.irr + self.irr * o.rat, d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm rat**2 - delta * irr**2."""
        return self.rat * self.rat - self.delta * self.irr * self.irr

    def conjugate(self) -> QuadNum:
        return QuadNum(self.rat, -self.irr, self.delta)

    def inverse(self) -> QuadNum:
        nm = self.norm()
        if nm == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt(delta))")
        return QuadNum(self.rat / nm, -self.irr / nm, self.delta)

    def __truediv__(self, other: object) -> QuadNum:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> QuadNum:
        return self.inverse() * other

    def is_zero(self) -> bool:
        return self.rat == 0 and self.irr == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def sign(self) -> int:
        """Exact sign of the real number rat + irr*sqrt(delta)."""
        sr = (self.rat > 0) - (self.rat < 0)
        si = (self.irr > 0) - (self.irr < 0)
        if si == 0:
            return sr
        if sr == 0 or sr == si:
            return si
        # opposite signs: the part with larger square wins
        diff = self.rat * self.rat - self.irr * self.irr * self.delta
        if diff == 0:
            return 0
        return sr if diff > 0 else si

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.irr == 0 and self.rat == other
        if isinstance(other, QuadNum):
            if self.irr == 0 and other.irr == 0:
                return self.rat == other.rat
            return (self.delta, self.rat, self.irr) == (other.delta, other.rat, other.irr)
        return NotImplemented

    def __hash__(self) -> int:
        if self.irr == 0:
            return hash(self.rat)
        return hash((self.rat, self.irr, self.delta))

    def __lt__(self, other: object) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: object) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: object) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: object) -> bool:
        return (self - other).sign() >= 0

    def __float__(self) -> float:
        return float(self.rat) + float(self.irr) * self.delta ** 0.5

    def __repr__(self) -> str:
        return f"QuadNum({self.rat}, {self.irr}, {self.delta})"

    def __str__(self) -> str:
        if self.irr == 0:
            return str(self.rat)
        root = f"sqrt({self.delta})"
        irr = root if self.irr == 1 else f"-{root}" if self.irr == -1 else f"{self.irr}*{root}"
        if self.rat == 0:
            return irr
        return f"{self.rat} + {irr}" if self.irr > 0 else f"{self.rat} - {irr.lstrip('-')}"


# Eigenvectors: entries share one delta.
QuadVector = list[QuadNum]


def _kernel_rref(rows: list[list[QuadNum]]) -> list[list[QuadNum]]:
    """Basis of the right kernel of the given matrix from its reduced echelon form."""
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    a = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv if x else x for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                ri = a[r]
                a[i] = [x - f * y if y else x for x, y in zip(a[i], ri)]
        pivots.append(c)
        r += 1
        if r == m:
            break
    delta = rows[0][0].delta if rows else 1
    zero = QuadNum(0, 0, delta)
    one = QuadNum(1, 0, delta)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        basis.append(v)
    return basis


def nullspace_quad(M: IntSymMatrix, theta) -> list[list[QuadNum]]:
    """Kernel basis of 2M - (p + q*sqrt(delta)) I for theta = (p + q*sqrt(delta))/2.

    ``theta`` is anything with integer ``p``, ``q`` and ``delta`` attributes.
    Raises ``ValueError`` when the kernel is trivial.
    """
    p, q, delta = theta.p, theta.q, theta.delta
    diag = QuadNum(p, q, delta)
    rows = []
    for i, row in enumerate(M.entries):
        out = [QuadNum(2 * x, 0, delta) for x in row]
        out[i] = out[i] - diag
        rows.append(out)
    basis = _kernel_rref(rows)
    if not basis:
        raise ValueError(f"{theta} is not an eigenvalue of the matrix")
    return basis


def sign_ratio(M: IntSymMatrix, theta, a: int, b: int,
               basis: Sequence[Sequence[QuadNum]] | None = None) -> int:
    """The s in {+1, -1} with x_b = s * x_a on the theta-eigenspace.

    Raises ``AssertionError`` when no such constant exists, which means a
    and b are not strongly cospectral at theta.
    """
    if basis is None:
        basis = nullspace_quad(M, theta)
    sign = None
    for v in basis:
        xa, xb = v[a], v[b]
        if not xa:
            if xb:
                raise AssertionError(f"x_a = 0 but x_b != 0 at theta = {theta}")
            continue
        if xb == xa:
            s = 1
        elif xb == -xa:
            s = -1
        else:
            raise AssertionError(f"ratio x_b/x_a = {xb / xa} is not +-1 at theta = {theta}")
        if sign is not None and s != sign:
            raise AssertionError(f"inconsistent sign across eigenvectors at theta = {theta}")
        sign = s
    if sign is None:
        raise AssertionError(f"every eigenvector vanishes at index {a} for theta = {theta}")
    return sign

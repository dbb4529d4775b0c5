"""Exact symmetric integer matrices and their characteristic polynomials.

Characteristic polynomials use Berkowitz's division-free algorithm.  Small
orders run directly on Python integers.  Larger orders run the same
recurrence modulo a handful of word-sized primes with numpy and lift the
result by Chinese remaindering; the number of primes comes from a
Hadamard-type bound on the coefficients, so the lift is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, isqrt, prod
from typing import Iterable, Sequence

import numpy as np

from .poly import IntPoly

# Above this order the multi-modular route is faster than Python integers.
MODULAR_THRESHOLD = 20


@dataclass(frozen=True)
class IntSymMatrix:
    """Symmetric matrix over Z, immutable after construction."""

    entries: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        n = len(rows)
        if n < 1:
            raise ValueError("matrix must have at least one row")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(
                        f"matrix is not symmetric: entry ({i},{j}) = {rows[i][j]} "
                        f"but ({j},{i}) = {rows[j][i]}"
                    )
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("labels must match the matrix order")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]],
                  labels: Sequence[str] | None = None) -> IntSymMatrix:
        return cls(tuple(tuple(r) for r in rows),
                   tuple(labels) if labels is not None else None)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def to_numpy(self, dtype=float) -> np.ndarray:
        return np.array(self.entries, dtype=dtype)

    def max_abs(self) -> int:
        return max(abs(x) for row in self.entries for x in row)

    def delete(self, T: Iterable[int]) -> IntSymMatrix:
        """Principal submatrix on the complement of T."""
        drop = vertex_set(T, self.n)
        keep = [i for i in range(self.n) if i not in set(drop)]
        if not keep:
            raise ValueError("cannot delete every index")
        labels = None
        if self.labels is not None:
            labels = tuple(self.labels[i] for i in keep)
        return IntSymMatrix(tuple(tuple(self.entries[i][j] for j in keep) for i in keep),
                            labels)

    def shifted(self, c: int) -> IntSymMatrix:
        """M + c*I."""
        return IntSymMatrix(
            tuple(tuple(x + (c if i == j else 0) for j, x in enumerate(row))
                  for i, row in enumerate(self.entries)),
            self.labels,
        )


def vertex_set(T: Iterable[int], n: int) -> tuple[int, ...]:
    """Validate T as a set of distinct indices of an order-n matrix."""
    members = tuple(sorted(int(t) for t in T))
    if len(set(members)) != len(members):
        raise ValueError(f"repeated index in {members}")
    for t in members:
        if not 0 <= t < n:
            raise IndexError(f"index {t} out of range for order {n}")
    return members


def _check_edges(edges: Iterable[tuple[int, int]], n: int) -> list[tuple[int, int]]:
    if n < 1:
        raise ValueError("graph must have at least one vertex")
    seen: set[tuple[int, int]] = set()
    out = []
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) has an endpoint outside [0,{n})")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValueError(f"duplicate edge {key}")
        seen.add(key)
        out.append(key)
    return out


def build_adjacency(edges: Iterable[tuple[int, int]], n: int) -> IntSymMatrix:
    rows = [[0] * n for _ in range(n)]
    for u, v in _check_edges(edges, n):
        rows[u][v] = rows[v][u] = 1
    return IntSymMatrix.from_rows(rows)


def build_laplacian(edges: Iterable[tuple[int, int]], n: int) -> IntSymMatrix:
    rows = [[0] * n for _ in range(n)]
    for u, v in _check_edges(edges, n):
        rows[u][v] = rows[v][u] = -1
        rows[u][u] += 1
        rows[v][v] += 1
    return IntSymMatrix.from_rows(rows)


def spectral_bound(M: IntSymMatrix) -> int:
    """Largest absolute row sum; every eigenvalue lies in [-R, R]."""
    return max(sum(abs(x) for x in row) for row in M.entries)


# --- Berkowitz over the integers -------------------------------------------


def _berkowitz_int(rows: Sequence[Sequence[int]]) -> list[int]:
    """Coefficients of det(xI - A), highest power first."""
    n = len(rows)
    poly = [1]
    for k in range(1, n + 1):
        a = rows[k - 1][k - 1]
        col_c = [rows[i][k - 1] for i in range(k - 1)]
        row_r = rows[k - 1][: k - 1]
        toeplitz = [1, -a]
        v = col_c
        for j in range(k - 1):
            toeplitz.append(-sum(r * x for r, x in zip(row_r, v)))
            if j < k - 2:
                v = [sum(rows[i][t] * v[t] for t in range(k - 1)) for i in range(k - 1)]
        new = [0] * (k + 1)
        for j, pj in enumerate(poly):
            if pj:
                for i in range(j, k + 1):
                    new[i] += toeplitz[i - j] * pj
        poly = new
    return poly


# --- multi-modular machinery ------------------------------------------------


@lru_cache(maxsize=None)
def _primes_below(limit: int, count: int) -> tuple[int, ...]:
    out = []
    cand = limit - 1 if limit % 2 == 0 else limit - 2
    while len(out) < count:
        r = isqrt(cand)
        if all(cand % d for d in range(3, r + 1, 2)):
            out.append(cand)
        cand -= 2
    return tuple(out)


def coefficient_bound(M: IntSymMatrix) -> int:
    """Bound on |coefficient| for det(xI - S), S any principal submatrix of M.

    Each coefficient is a signed sum of principal minors; the Hadamard
    inequality bounds a k x k minor by the product of its k largest column
    norms, and restricting a column only shrinks its norm.
    """
    norms = []
    for j in range(M.n):
        s = sum(M.entries[i][j] ** 2 for i in range(M.n))
        r = isqrt(s)
        norms.append(r if r * r == s else r + 1)
    norms.sort(reverse=True)
    best = 1
    running = 1
    for k in range(1, M.n + 1):
        running *= norms[k - 1]
        best = max(best, comb(M.n, k) * running)
    return best


def _prime_basis(M: IntSymMatrix) -> tuple[int, ...]:
    n = M.n
    # n * p**2 must fit in int64 for the matrix products below
    bits = min(26, (62 - n.bit_length()) // 2)
    need = 2 * coefficient_bound(M) + 1
    count = 1
    while True:
        ps = _primes_below(1 << bits, count)
        if prod(ps) > need:
            return ps
        count += 1


def _crt_symmetric(residues: np.ndarray, primes: Sequence[int]) -> list[int]:
    """Lift residues (primes x m) to integers in the symmetric range."""
    m = residues.shape[1]
    modulus = 1
    vals = [0] * m
    for row, p in zip(residues.tolist(), primes):
        inv = pow(modulus, -1, p)
        for i in range(m):
            t = ((row[i] - vals[i]) * inv) % p
            vals[i] += modulus * t
        modulus *= p
    half = modulus // 2
    return [v - modulus if v > half else v for v in vals]


def _reduce(M: IntSymMatrix, primes: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    ps = np.array(primes, dtype=np.int64)
    big = [[[x % p for x in row] for row in M.entries] for p in primes]
    return np.array(big, dtype=np.int64), ps


def _berkowitz_mod(A: np.ndarray, ps: np.ndarray) -> np.ndarray:
    """Berkowitz recurrence batched over primes; A has shape (P, n, n)."""
    P, n, _ = A.shape
    pc = ps[:, None]
    poly = np.ones((P, 1), dtype=np.int64)
    for k in range(1, n + 1):
        S = A[:, : k - 1, : k - 1]
        C = A[:, : k - 1, k - 1]
        R = A[:, k - 1, : k - 1]
        toeplitz = np.zeros((P, k + 1), dtype=np.int64)
        toeplitz[:, 0] = 1
        toeplitz[:, 1] = (-A[:, k - 1, k - 1]) % ps
        v = C
        for j in range(k - 1):
            toeplitz[:, j + 2] = (-(R * v).sum(axis=1)) % ps
            if j < k - 2:
                v = np.matmul(S, v[:, :, None])[:, :, 0] % pc
        new = np.zeros((P, k + 1), dtype=np.int64)
        for j in range(k):
            new[:, j:] = (new[:, j:] + toeplitz[:, : k + 1 - j] * poly[:, j : j + 1]) % pc
        poly = new
    return poly


def charpoly(M: IntSymMatrix) -> IntPoly:
    """det(xI - M), exact."""
    if M.n <= MODULAR_THRESHOLD:
        return IntPoly.from_descending(_berkowitz_int(M.entries))
    primes = _prime_basis(M)
    A, ps = _reduce(M, primes)
    return IntPoly.from_descending(_crt_symmetric(_berkowitz_mod(A, ps), primes))


def charpoly_deleted(M: IntSymMatrix, T: Iterable[int]) -> IntPoly:
    """Characteristic polynomial of M with the rows and columns in T removed."""
    members = vertex_set(T, M.n)
    if len(members) >= M.n:
        raise ValueError("must keep at least one index")
    if not members:
        return charpoly(M)
    return charpoly(M.delete(members))


def deleted_charpolys(M: IntSymMatrix, phi: IntPoly | None = None) -> list[IntPoly]:
    """All vertex-deleted characteristic polynomials phi_a, a = 0..n-1.

    For large orders these come from the adjugate expansion
    adj(xI - M) = sum_j x**(n-1-j) sum_{i<=j} c_i M**(j-i), whose diagonal
    entries are exactly the phi_a; it needs only the powers of M modulo
    the same primes as the Berkowitz lift.
    """
    n = M.n
    if n == 1:
        raise ValueError("vertex deletion needs order at least 2")
    if n <= MODULAR_THRESHOLD:
        return [charpoly_deleted(M, [a]) for a in range(n)]
    if phi is None:
        phi = charpoly(M)
    primes = _prime_basis(M)
    A, ps = _reduce(M, primes)
    pc = ps[:, None]
    P = len(primes)
    # diag(M^k), k = 0..n-1, per prime: shape (P, n_powers, n_vertices)
    diags = np.empty((P, n, n), dtype=np.int64)
    power = np.broadcast_to(np.eye(n, dtype=np.int64), (P, n, n)).copy()
    for k in range(n):
        diags[:, k, :] = np.diagonal(power, axis1=1, axis2=2)
        if k < n - 1:
            power = np.matmul(power, A) % ps[:, None, None]
    desc = list(reversed(phi.coeffs))  # c_0 = 1, c_1, ..., c_n
    cmod = np.array([[c % p for c in desc[:n]] for p in primes], dtype=np.int64)
    # b_j = sum_{i<=j} c_i d_{j-i}
    out = np.zeros((P, n, n), dtype=np.int64)
    for i in range(n):
        out[:, i:, :] = (out[:, i:, :] + cmod[:, i, None, None] * diags[:, : n - i, :]) % ps[:, None, None]
    polys = []
    for a in range(n):
        residues = out[:, :, a] % pc
        polys.append(IntPoly.from_descending(_crt_symmetric(residues, primes)))
    return polys

"""Floating-point quantum-walk companion used to cross-check exact verdicts.

Nothing here is authoritative: the eigensolver is a plain cyclic Jacobi
iteration and every comparison carries an explicit tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .decider import PSTVerdict, recheck_failure
from .matrix import IntSymMatrix

# Tolerances, all in absolute terms unless scaled by max(1, ||M||_max).
JACOBI_TOL = 1e-12
CLUSTER_TOL = 1e-8
FIDELITY_TOL = 1e-9
MAX_SWEEPS = 100


@dataclass(frozen=True)
class SpectralDecomp:
    values: np.ndarray  # ascending
    vectors: np.ndarray  # orthonormal columns
    clusters: tuple[tuple[int, ...], ...]

    def cluster_values(self) -> list[float]:
        return [float(np.mean(self.values[list(c)])) for c in self.clusters]

    def projector(self, k: int) -> np.ndarray:
        V = self.vectors[:, list(self.clusters[k])]
        return V @ V.T


@dataclass(frozen=True)
class MixingReport:
    t: float
    matrix: np.ndarray


def _as_array(M: IntSymMatrix | np.ndarray) -> np.ndarray:
    if isinstance(M, IntSymMatrix):
        return M.to_numpy(float)
    return np.asarray(M, dtype=float)


def jacobi_eigh(A: np.ndarray, tol: float = JACOBI_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi rotations until the off-diagonal norm is tol * ||A||_F."""
    a = np.array(A, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    norm = float(np.linalg.norm(a))
    target = tol * norm
    negligible = 1e-18 * norm
    for _ in range(MAX_SWEEPS):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= target:
            order = np.argsort(np.diag(a), kind="stable")
            return np.diag(a)[order].copy(), v[:, order]
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= negligible:
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q]
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                a[p, :] = c * rp - s * a[q, :]
                a[q, :] = s * rp + c * a[q, :]
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                v[:, p] = c * vp - s * v[:, q]
                v[:, q] = s * vp + c * v[:, q]
    raise RuntimeError("Jacobi iteration did not converge")


def eig_sym(M: IntSymMatrix | np.ndarray) -> SpectralDecomp:
    A = _as_array(M)
    values, vectors = jacobi_eigh(A)
    scale = max(1.0, float(np.max(np.abs(A))) if A.size else 1.0)
    clusters: list[list[int]] = []
    for i, x in enumerate(values):
        if clusters and x - values[clusters[-1][-1]] <= CLUSTER_TOL * scale:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    return SpectralDecomp(values, vectors, tuple(tuple(c) for c in clusters))


def evolution(M: IntSymMatrix | np.ndarray, t: float,
              decomp: SpectralDecomp | None = None) -> np.ndarray:
    """exp(i t M) from the spectral decomposition."""
    d = decomp if decomp is not None else eig_sym(M)
    V = d.vectors
    return (V * np.exp(1j * t * d.values)) @ V.T


def fidelity(M: IntSymMatrix | np.ndarray, t: float, a: int, b: int,
             decomp: SpectralDecomp | None = None) -> float:
    """|exp(i t M)[a, b]|."""
    if t < 0:
        raise ValueError("time must be nonnegative")
    d = decomp if decomp is not None else eig_sym(M)
    w = d.vectors[a, :] * d.vectors[b, :]
    return float(abs(np.sum(w * np.exp(1j * t * d.values))))


def mixing_matrix(M: IntSymMatrix | np.ndarray, t: float) -> MixingReport:
    if t < 0:
        raise ValueError("time must be nonnegative")
    U = evolution(M, t)
    return MixingReport(t, np.abs(U) ** 2)


def uniform_mixing_at(M: IntSymMatrix | np.ndarray, t: float, tol: float) -> bool:
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    N = mixing_matrix(M, t).matrix
    n = N.shape[0]
    return bool(np.max(np.abs(N - 1.0 / n)) <= tol)


def average_mixing(M: IntSymMatrix | np.ndarray,
                   decomp: SpectralDecomp | None = None) -> np.ndarray:
    """Sum over eigenvalue clusters of E_r o E_r (entrywise square)."""
    d = decomp if decomp is not None else eig_sym(M)
    n = d.vectors.shape[0]
    out = np.zeros((n, n))
    for k in range(len(d.clusters)):
        E = d.projector(k)
        out += E * E
    return out


def columns_equal(N: np.ndarray, a: int, b: int, tol: float = CLUSTER_TOL) -> bool:
    return bool(np.max(np.abs(N[:, a] - N[:, b])) <= tol)


def scan_fidelity(M: IntSymMatrix | np.ndarray, a: int, b: int, t_max: float,
                  step: float) -> tuple[float, float]:
    """Best fidelity on the grid step, 2*step, ..., t_max."""
    if t_max <= 0 or step <= 0:
        raise ValueError("t_max and step must be positive")
    d = eig_sym(M)
    w = d.vectors[a, :] * d.vectors[b, :]
    count = int(math.floor(t_max / step + 1e-9))
    if count < 1:
        raise ValueError("grid is empty")
    ts = step * np.arange(1, count + 1)
    vals = np.abs(np.exp(1j * np.outer(ts, d.values)) @ w)
    i = int(np.argmax(vals))
    return float(ts[i]), float(vals[i])


def verify_certificate(M: IntSymMatrix, verdict: PSTVerdict) -> bool:
    """YES: fidelity at the claimed time; NO: exact re-derivation of the failure."""
    if verdict.status == "yes":
        a, b = verdict.pair
        return fidelity(M, verdict.time.numeric, a, b) >= 1 - FIDELITY_TOL
    return recheck_failure(M, verdict)

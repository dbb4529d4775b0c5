"""Text formats in, JSON records out.

graph6 here is the single-byte-size variant (n <= 62): one byte n + 63,
then the upper triangle read column by column, (0,1), (0,2), (1,2),
(0,3), ..., packed big-endian six bits per byte, each byte offset by 63.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .decider import (
    FAILURE_KINDS,
    NO,
    NOT_COSPECTRAL,
    NOT_PERIODIC,
    POLES_NOT_SIMPLE,
    SIGN_PARITY_MISMATCH,
    SINGLETON_SUPPORT,
    YES,
    CoefficientWitness,
    Failure,
    PoleWitness,
    PSTVerdict,
    SignWitness,
)
from .matrix import IntSymMatrix, build_adjacency, build_laplacian
from .poly import IntPoly
from .support import Eigenvalue, MinTime, NotPeriodicWitness

FORMATS = ("graph6", "edgelist", "matrix")
MODELS = ("adjacency", "laplacian", "raw")
GRAPH6_HEADER = ">>graph6<<"


class ParseError(ValueError):
    """Malformed input text."""


Edges = list[tuple[int, int]]


@dataclass(frozen=True)
class InputSpec:
    source: str  # path, or "-" for standard input
    format: str
    model: str

    def __post_init__(self) -> None:
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.model == "raw" and self.format != "matrix":
            raise ValueError("the raw model needs matrix input")


# --- graph6 ----------------------------------------------------------------


def parse_graph6(line: str) -> tuple[int, Edges]:
    text = line.strip()
    if text.startswith(GRAPH6_HEADER):
        text = text[len(GRAPH6_HEADER):]
    if not text:
        raise ParseError("empty graph6 string")
    data = [ord(ch) for ch in text]
    for i, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise ParseError(f"invalid graph6 byte {byte} at position {i}")
    if data[0] == 126:
        raise ParseError("multi-byte graph6 sizes (n > 62) are not supported")
    n = data[0] - 63
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    payload = data[1:]
    if len(payload) < need:
        raise ParseError(f"truncated graph6 payload: {len(payload)} bytes, need {need}")
    if len(payload) > need:
        raise ParseError(f"graph6 payload too long: {len(payload)} bytes, need {need}")
    bits = []
    for byte in payload:
        v = byte - 63
        bits.extend((v >> (5 - k)) & 1 for k in range(6))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return n, edges


def encode_graph6(n: int, edges: Edges) -> str:
    if not 0 <= n <= 62:
        raise ValueError("only 0 <= n <= 62 can be encoded")
    present = {(min(u, v), max(u, v)) for u, v in edges}
    bits = [1 if (i, j) in present else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(n + 63)]
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        out.append(chr(v + 63))
    return "".join(out)


# --- edge lists and dense matrices ----------------------------------------


def _int_token(tok: str, where: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"non-integer token {tok!r} {where}") from None


def parse_edgelist(text: str) -> tuple[int, Edges]:
    n = None
    edges: Edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "n":
            if n is not None or edges or len(toks) != 2:
                raise ParseError(f"line {lineno}: 'n <count>' must be the first line")
            n = _int_token(toks[1], f"on line {lineno}")
            continue
        if len(toks) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {line!r}")
        edges.append((_int_token(toks[0], f"on line {lineno}"),
                      _int_token(toks[1], f"on line {lineno}")))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=0)
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge ({u},{v}) is out of range for n = {n}")
    return n, edges


def parse_matrix(text: str) -> IntSymMatrix:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        rows.append([_int_token(t, f"on line {lineno}") for t in line.split()])
    if not rows:
        raise ParseError("empty matrix")
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ParseError(f"row {i} has {len(row)} entries, expected {n}")
    try:
        return IntSymMatrix.from_rows(rows)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def matrix_to_graph(M: IntSymMatrix) -> tuple[int, Edges]:
    """Read a 0/1 adjacency matrix back into an edge list."""
    n = M.n
    edges = []
    for i in range(n):
        if M[i, i] != 0:
            raise ParseError("adjacency matrix must have a zero diagonal")
        for j in range(i + 1, n):
            if M[i, j] not in (0, 1):
                raise ParseError("adjacency matrix entries must be 0 or 1")
            if M[i, j]:
                edges.append((i, j))
    return n, edges


def graph_matrix(n: int, edges: Edges, model: str) -> IntSymMatrix:
    if model == "adjacency":
        return build_adjacency(edges, n)
    if model == "laplacian":
        return build_laplacian(edges, n)
    raise ValueError(f"model {model!r} does not apply to a graph")


def load_matrix(text: str, fmt: str, model: str) -> IntSymMatrix:
    try:
        InputSpec("-", fmt, model)
        if fmt == "graph6":
            lines = [ln for ln in text.splitlines() if ln.strip()]
            if len(lines) != 1:
                raise ParseError(f"expected one graph6 line, got {len(lines)}")
            return graph_matrix(*parse_graph6(lines[0]), model)
        if fmt == "edgelist":
            return graph_matrix(*parse_edgelist(text), model)
        M = parse_matrix(text)
        if model == "raw":
            return M
        return graph_matrix(*matrix_to_graph(M), model)
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from None


# --- JSON records ----------------------------------------------------------


def eigenvalue_to_dict(e: Eigenvalue) -> dict[str, Any]:
    return {"p": e.p, "q": e.q, "delta": e.delta, "value": e.value}


def eigenvalue_from_dict(d: dict[str, Any]) -> Eigenvalue:
    return Eigenvalue(int(d["p"]), int(d["q"]), int(d["delta"]))


def _detail_to_json(detail: IntPoly | int) -> dict[str, Any]:
    if isinstance(detail, IntPoly):
        return {"poly": list(detail.coeffs)}
    return {"value": detail}


def _detail_from_json(d: dict[str, Any]) -> IntPoly | int:
    if "poly" in d:
        return IntPoly(d["poly"])
    return int(d["value"])


def _witness_to_json(f: Failure) -> dict[str, Any]:
    w = f.witness
    if f.kind == NOT_COSPECTRAL:
        return {"power": w.power}
    if f.kind == POLES_NOT_SIMPLE:
        return {"factor": list(w.factor.coeffs), "order": w.order,
                "theta": eigenvalue_to_dict(w.theta) if w.theta is not None else None}
    if f.kind == NOT_PERIODIC:
        return {"reason": w.reason, **_detail_to_json(w.detail)}
    if f.kind == SINGLETON_SUPPORT:
        return {"theta": eigenvalue_to_dict(w)}
    return {"r": w.r, "theta": eigenvalue_to_dict(w.theta), "d": w.d,
            "sign": w.sign, "base_sign": w.base_sign}


def _witness_from_json(kind: str, d: dict[str, Any]):
    if kind == NOT_COSPECTRAL:
        return CoefficientWitness(int(d["power"]))
    if kind == POLES_NOT_SIMPLE:
        theta = eigenvalue_from_dict(d["theta"]) if d.get("theta") else None
        return PoleWitness(IntPoly(d["factor"]), int(d["order"]), theta)
    if kind == NOT_PERIODIC:
        return NotPeriodicWitness(d["reason"], _detail_from_json(d))
    if kind == SINGLETON_SUPPORT:
        return eigenvalue_from_dict(d["theta"])
    if kind == SIGN_PARITY_MISMATCH:
        return SignWitness(int(d["r"]), eigenvalue_from_dict(d["theta"]), int(d["d"]),
                           int(d["sign"]), int(d["base_sign"]))
    raise ValueError(f"unknown failure kind {kind!r}")


def verdict_to_dict(v: PSTVerdict) -> dict[str, Any]:
    out: dict[str, Any] = {"status": v.status, "pair": list(v.pair)}
    if v.status == YES:
        out.update({
            "g": v.time.g,
            "delta": v.time.delta,
            "time": v.time.symbolic,
            "time_numeric": v.time.numeric,
            "time_decimal": format(v.time.numeric, ".17g"),
            "signs": [{"theta": eigenvalue_to_dict(t), "sign": s} for t, s in v.signs],
        })
    else:
        out["failure"] = v.failure.kind
        out["witness"] = _witness_to_json(v.failure)
    return out


def verdict_from_dict(d: dict[str, Any]) -> PSTVerdict:
    pair = (int(d["pair"][0]), int(d["pair"][1]))
    if d["status"] == YES:
        signs = tuple((eigenvalue_from_dict(s["theta"]), int(s["sign"])) for s in d["signs"])
        return PSTVerdict(YES, pair, time=MinTime(int(d["g"]), int(d["delta"])), signs=signs)
    if d["status"] == NO:
        kind = d["failure"]
        if kind not in FAILURE_KINDS:
            raise ValueError(f"unknown failure kind {kind!r}")
        return PSTVerdict(NO, pair, failure=Failure(kind, _witness_from_json(kind, d["witness"])))
    raise ValueError(f"unknown status {d['status']!r}")

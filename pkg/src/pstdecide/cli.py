"""Command-line entry points.

Exit status: 0 on success, 1 on usage or parse errors, 2 when an internal
assertion fails (a certificate does not re-validate, or eigenvector signs
are inconsistent).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Sequence

from . import oracle
from .decider import PSTContext, decide_all
from .formats import (
    FORMATS,
    MODELS,
    ParseError,
    graph_matrix,
    load_matrix,
    parse_graph6,
    verdict_from_dict,
    verdict_to_dict,
)
from .matrix import IntSymMatrix

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INTERNAL = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc}") from None


def _parse_pair(text: str, n: int) -> tuple[int, int]:
    try:
        a, b = (int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"--pair expects 'a,b', got {text!r}") from None
    if not (0 <= a < n and 0 <= b < n) or a == b:
        raise UsageError(f"--pair {text} must name two distinct indices in [0,{n})")
    return a, b


def _dump(obj: Any) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _max_bits(ctx: PSTContext) -> int:
    bits = ctx.phi.max_bits()
    for poly in ctx._phi_a.values():
        bits = max(bits, poly.max_bits())
    return bits


def _verify_block(M: IntSymMatrix, verdicts: Sequence) -> dict[str, Any]:
    results = [oracle.verify_certificate(M, v) for v in verdicts]
    return {"checked": len(results), "valid": all(results),
            "invalid_pairs": [list(v.pair) for v, ok in zip(verdicts, results) if not ok]}


def _base_record(ident: str, model: str, M: IntSymMatrix) -> dict[str, Any]:
    return {"input": ident, "model": model, "n": M.n, "matrix": [list(r) for r in M.entries]}


def _scan_block(M: IntSymMatrix, a: int, b: int, t_max: float, step: float) -> dict[str, float]:
    t_star, value = oracle.scan_fidelity(M, a, b, t_max, step)
    return {"t_max": t_max, "step": step, "t_best": t_star, "fidelity_best": value}


def cmd_decide(args: argparse.Namespace) -> int:
    M = load_matrix(_read(args.input), args.format, args.model)
    start = time.perf_counter()
    ctx = PSTContext(M)
    if args.pair and not args.all_pairs:
        a, b = _parse_pair(args.pair, M.n)
        v = ctx.decide(a, b)
        rec = _base_record(args.input, args.model, M)
        rec.update(verdict_to_dict(v))
        verdicts = [v]
    elif args.all_pairs:
        if M.n < 2:
            raise UsageError("need at least two indices")
        verdicts = decide_all(M, ctx)
        rec = _base_record(args.input, args.model, M)
        rec["verdicts"] = [verdict_to_dict(v) for v in verdicts]
    else:
        raise UsageError("decide needs --pair a,b or --all-pairs")
    rec["timing_s"] = time.perf_counter() - start
    rec["max_coeff_bits"] = _max_bits(ctx)
    if args.tmax is not None:
        rec["scan"] = [_scan_block(M, *v.pair, args.tmax, args.step) for v in verdicts]
    status = EXIT_OK
    if args.verify:
        rec["verification"] = _verify_block(M, verdicts)
        if not rec["verification"]["valid"]:
            status = EXIT_INTERNAL
    _dump(rec)
    return status


def cmd_scan(args: argparse.Namespace) -> int:
    args.all_pairs = True
    return cmd_decide(args)


def all_pairs_record(ident: str, model: str, M: IntSymMatrix, verify: bool) -> dict[str, Any]:
    """All-pairs verdicts for one matrix, with wall time and peak coefficient size."""
    start = time.perf_counter()
    ctx = PSTContext(M)
    verdicts = decide_all(M, ctx) if M.n >= 2 else []
    rec = _base_record(ident, model, M)
    rec["verdicts"] = [verdict_to_dict(v) for v in verdicts]
    rec["timing_s"] = time.perf_counter() - start
    rec["max_coeff_bits"] = _max_bits(ctx)
    if verify:
        rec["verification"] = _verify_block(M, verdicts)
    return rec


def survey_line(line: str, model: str, verify: bool) -> dict[str, Any]:
    n, edges = parse_graph6(line)
    return all_pairs_record(line.strip(), model, graph_matrix(n, edges, model), verify)


def _survey_job(job: tuple[str, str, bool]) -> dict[str, Any]:
    return survey_line(*job)


def cmd_survey(args: argparse.Namespace) -> int:
    lines = [ln.strip() for ln in _read(args.input).splitlines() if ln.strip()]
    jobs = [(ln, args.model, args.verify) for ln in lines]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(_survey_job, jobs, chunksize=8))
    else:
        records = [_survey_job(j) for j in jobs]
    status = EXIT_OK
    for rec in records:
        if args.verify and not rec["verification"]["valid"]:
            status = EXIT_INTERNAL
        _dump(rec)
    return status


def cmd_mixing(args: argparse.Namespace) -> int:
    M = load_matrix(_read(args.input), args.format, args.model)
    rec = _base_record(args.input, args.model, M)
    if args.average:
        rec["average"] = oracle.average_mixing(M).tolist()
    elif args.time is not None:
        if args.time < 0:
            raise UsageError("--time must be nonnegative")
        report = oracle.mixing_matrix(M, args.time)
        rec["t"] = report.t
        rec["mixing"] = report.matrix.tolist()
        rec["uniform"] = oracle.uniform_mixing_at(M, args.time, oracle.FIDELITY_TOL)
    else:
        raise UsageError("mixing needs --time t or --average")
    _dump(rec)
    return EXIT_OK


def verify_record(rec: dict[str, Any]) -> dict[str, Any]:
    M = IntSymMatrix.from_rows(rec["matrix"])
    raw = rec["verdicts"] if "verdicts" in rec else [rec]
    verdicts = [verdict_from_dict(d) for d in raw]
    return {"input": rec.get("input"), **_verify_block(M, verdicts)}


def cmd_verify(args: argparse.Namespace) -> int:
    text = _read(args.input)
    status = EXIT_OK
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
            out = verify_record(rec)
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"line {lineno}: not a report record ({exc})") from None
        if not out["valid"]:
            status = EXIT_INTERNAL
        _dump(out)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pstdecide",
                     description="Exact perfect state transfer decisions for integer matrices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_input(p: argparse.ArgumentParser, graph_only: bool = False) -> None:
        p.add_argument("--input", required=True, help="file path, or - for standard input")
        if not graph_only:
            p.add_argument("--format", choices=FORMATS, default="graph6")
        p.add_argument("--model", choices=MODELS if not graph_only else MODELS[:2],
                       default="adjacency")

    def add_scan(p: argparse.ArgumentParser) -> None:
        p.add_argument("--tmax", type=float, help="also scan fidelity numerically up to this time")
        p.add_argument("--step", type=float, default=1e-3)

    p = sub.add_parser("decide", help="verdict for one pair (or all pairs)")
    add_input(p)
    p.add_argument("--pair", help="a,b (0-indexed)")
    p.add_argument("--all-pairs", action="store_true")
    p.add_argument("--verify", action="store_true", help="cross-check with the numeric oracle")
    add_scan(p)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("scan", help="verdicts for every pair of one input")
    add_input(p)
    p.add_argument("--verify", action="store_true")
    add_scan(p)
    p.set_defaults(func=cmd_scan, pair=None)

    p = sub.add_parser("survey", help="all-pairs verdicts for every graph6 line of a corpus")
    add_input(p, graph_only=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("mixing", help="mixing matrix at a time, or the average mixing matrix")
    add_input(p)
    p.add_argument("--time", type=float)
    p.add_argument("--average", action="store_true")
    p.set_defaults(func=cmd_mixing)

    p = sub.add_parser("verify", help="re-validate a report file")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be at least 1")
        if getattr(args, "step", 1.0) is not None and getattr(args, "step", 1.0) <= 0:
            raise UsageError("--step must be positive")
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"pstdecide: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"pstdecide: internal assertion failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run_cli())

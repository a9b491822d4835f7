"""Command-line interface: ``eqcolour {solve,verify,oracle,scan,generate,bench}``.

Exit codes: 0 solved / valid / feasible / clean scan, 1 infeasible / invalid /
gave up / counterexample found, 2 input error, 3 theory violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, Sequence, TextIO

from .colouring import (
    Balance,
    ColouringInputError,
    classify,
    colouring_document,
    colouring_from_document,
    verify_colouring,
)
from .graph import Graph, GraphInputError, parse_dimacs, serialize_dimacs
from .oracle import CONJECTURES, oracle_find, random_bounded_degree_graph, scan_conjecture
from .solver import OutcomeKind, SolveConfig, default_k, solve

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_THEORY = 0, 1, 2, 3

_SOLVE_EXIT = {
    OutcomeKind.SOLVED: EXIT_OK,
    OutcomeKind.INFEASIBLE: EXIT_NEGATIVE,
    OutcomeKind.GAVE_UP: EXIT_NEGATIVE,
    OutcomeKind.THEORY_VIOLATION: EXIT_THEORY,
}


class InputError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _read_graph(path: str) -> Graph:
    return parse_dimacs(_read_text(path))


def _dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _open_trace(path: str | None) -> TextIO:
    return sys.stderr if path is None else open(path, "w")


def _cmd_solve(args: argparse.Namespace) -> int:
    graph = _read_graph(args.graph)
    k = args.k if args.k is not None else default_k(graph.max_degree, args.d)
    config = SolveConfig(
        d=args.d,
        k=k,
        rng_seed=args.seed,
        oracle_fallback_n=args.oracle_fallback_n,
        diagnostics=args.diagnose,
        restart_budget=args.restarts,
    )
    outcome = solve(graph, config)
    if outcome.colouring is not None:
        doc = colouring_document(graph, outcome.colouring, args.d)
    else:
        doc = {"k": k, "d": args.d, "assignment": None, "class_sizes": None, "valid": False}
    doc["status"] = outcome.kind.value
    doc["stats"] = dict(sorted(outcome.stats.items()))
    if outcome.report is not None:
        doc["report"] = outcome.report
    _write(_dumps(doc), args.out)
    if args.diagnose:
        stream = _open_trace(args.trace)
        try:
            for event in outcome.trace:
                stream.write(json.dumps(event, sort_keys=True) + "\n")
            for state in outcome.diagnostics:
                stream.write(json.dumps({"event": "diagnostics", **state}, sort_keys=True) + "\n")
        finally:
            if stream is not sys.stderr:
                stream.close()
    return _SOLVE_EXIT[outcome.kind]


def _cmd_verify(args: argparse.Namespace) -> int:
    graph = _read_graph(args.graph)
    try:
        doc = json.loads(_read_text(args.colouring))
    except json.JSONDecodeError as exc:
        raise InputError(f"colouring is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("colouring JSON must be an object")
    c = colouring_from_document(doc)
    report = verify_colouring(graph, c, args.d, args.k)
    balance = classify(c.sizes)
    equitable = balance is Balance.EQUITABLE
    result = {
        "d": args.d,
        "k": c.k,
        "valid": report.valid,
        "failing_classes": list(report.failing_classes),
        "class_sizes": list(c.sizes),
        "equitable": equitable,
        "balance": balance.value,
    }
    _write(_dumps(result), args.out)
    return EXIT_OK if report.valid and equitable else EXIT_NEGATIVE


def _cmd_oracle(args: argparse.Namespace) -> int:
    graph = _read_graph(args.graph)
    if args.k is None:
        raise InputError("oracle needs --k")
    verdict = oracle_find(graph, args.d, args.k)
    doc = {
        "d": args.d,
        "k": args.k,
        "feasible": verdict.feasible,
        "assignment": list(verdict.witness.assignment) if verdict.witness else None,
        "nodes_explored": verdict.nodes_explored,
    }
    _write(_dumps(doc), args.out)
    return EXIT_OK if verdict.feasible else EXIT_NEGATIVE


def _cmd_scan(args: argparse.Namespace) -> int:
    d_values = (args.d,) if args.d is not None else (0, 1, 2)
    try:
        report = scan_conjecture(
            args.conjecture,
            args.nmax,
            mode=args.mode,
            d_values=d_values,
            seed=args.seed,
            jobs=args.jobs,
            top_k_only=args.top_k_only,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _write(_dumps(report.to_json()), args.out)
    return EXIT_OK if report.clean else EXIT_NEGATIVE


def _cmd_generate(args: argparse.Namespace) -> int:
    graph = random_bounded_degree_graph(args.n, args.delta, args.density, args.seed)
    _write(serialize_dimacs(graph), args.out)
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    if args.graphs:
        graphs = [(path, _read_graph(path)) for path in args.graphs]
    else:
        graphs = [
            (f"random:{args.seed + i}", random_bounded_degree_graph(args.n, args.delta, args.density, args.seed + i))
            for i in range(args.count)
        ]
    rows = []
    worst = EXIT_OK
    start = time.perf_counter()
    for name, graph in graphs:
        k = args.k if args.k is not None else default_k(graph.max_degree, args.d)
        config = SolveConfig(d=args.d, k=k, rng_seed=args.seed, oracle_fallback_n=args.oracle_fallback_n)
        t0 = time.perf_counter()
        outcome = solve(graph, config)
        rows.append(
            {
                "graph": name,
                "n": graph.n,
                "m": graph.m,
                "delta": graph.max_degree,
                "k": k,
                "status": outcome.kind.value,
                "repair_rounds": outcome.stats.get("repair_rounds", 0),
                "restarts": outcome.stats.get("restarts", 0),
                "seconds": round(time.perf_counter() - t0, 6),
            }
        )
        worst = max(worst, _SOLVE_EXIT[outcome.kind])
    doc = {
        "d": args.d,
        "instances": rows,
        "solved": sum(r["status"] == OutcomeKind.SOLVED.value for r in rows),
        "total_repair_rounds": sum(r["repair_rounds"] for r in rows),
        "total_seconds": round(time.perf_counter() - start, 6),
    }
    _write(_dumps(doc), args.out)
    return worst


def _mode(text: str) -> str:
    kind, _, count = text.partition(":")
    if text == "exhaustive" or (kind == "sample" and count.isdigit()):
        return text
    raise argparse.ArgumentTypeError("expected 'exhaustive' or 'sample:COUNT'")


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eqcolour", description="Equitable d-degenerate colourings of graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, d_default: int | None = 1) -> None:
        p.add_argument("--d", type=_non_negative, default=d_default, help="degeneracy bound per class")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", metavar="PATH", help="write the JSON result here instead of stdout")

    p = sub.add_parser("solve", help="find an equitable d-degenerate k-colouring")
    p.add_argument("graph", help="DIMACS .col file or - for stdin")
    common(p)
    p.add_argument("--k", type=_positive, help="number of classes (default: smallest k >= Delta/d + 1)")
    p.add_argument("--diagnose", action="store_true", help="emit the move trace and structural checks")
    p.add_argument("--trace", metavar="PATH", help="JSON-lines trace destination (default stderr)")
    p.add_argument("--oracle-fallback-n", type=_non_negative, default=20)
    p.add_argument("--restarts", type=_non_negative, default=5)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="check a colouring JSON against a graph")
    p.add_argument("graph")
    p.add_argument("colouring", help="colouring JSON with 'k' and 'assignment'")
    common(p)
    p.add_argument("--k", type=_positive)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="exact feasibility by exhaustive search")
    p.add_argument("graph")
    common(p)
    p.add_argument("--k", type=_positive)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("scan", help="search small graphs for conjecture counterexamples")
    common(p, d_default=None)
    p.add_argument("--conjecture", choices=CONJECTURES, required=True)
    p.add_argument("--nmax", type=_positive, required=True)
    p.add_argument("--mode", type=_mode, default="exhaustive")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--top-k-only", action="store_true", help="only test k = Delta + 1")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("generate", help="seeded random graph with bounded degree, as DIMACS")
    p.add_argument("--n", type=_non_negative, required=True)
    p.add_argument("--delta", type=_non_negative, required=True)
    p.add_argument("--density", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("bench", help="time the solver on files or seeded random graphs")
    p.add_argument("graphs", nargs="*")
    common(p)
    p.add_argument("--k", type=_positive)
    p.add_argument("--n", type=_non_negative, default=100)
    p.add_argument("--delta", type=_non_negative, default=4)
    p.add_argument("--density", type=float, default=1.0)
    p.add_argument("--count", type=_positive, default=10)
    p.add_argument("--oracle-fallback-n", type=_non_negative, default=20)
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, GraphInputError, ColouringInputError) as exc:
        print(f"eqcolour: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

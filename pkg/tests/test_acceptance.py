"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v -s`` to see the lines inline; they
are also repeated in the terminal summary.
"""

from __future__ import annotations

import random
import subprocess
import sys
import time
from contextlib import contextmanager

from eqcolour.colouring import Balance, classify, verify_colouring
from eqcolour.degeneracy import compute_vstar, core, is_degenerate
from eqcolour.graph import complete_bipartite, complete_graph, cycle_graph, petersen_graph, serialize_dimacs
from eqcolour.movegraph import check_stuck_structure
from eqcolour.oracle import labelled_graphs, oracle_find, random_bounded_degree_graph, scan_conjecture
from eqcolour.solver import OutcomeKind, SolveConfig, default_k, solve
from eqcolour import solver

from brute import minimal_prefix_sets

RESULTS: list[str] = []


@contextmanager
def criterion(number: int, title: str):
    start = time.perf_counter()
    notes: list[str] = []
    try:
        yield notes
    except BaseException:
        line = f"FAIL criterion {number}: {title} ({time.perf_counter() - start:.1f}s) {'; '.join(notes)}"
        RESULTS.append(line)
        print(line)
        raise
    line = f"PASS criterion {number}: {title} ({time.perf_counter() - start:.1f}s) {'; '.join(notes)}"
    RESULTS.append(line)
    print(line)


def _equitable_valid(graph, c, d) -> bool:
    return verify_colouring(graph, c, d).valid and classify(c.sizes) is Balance.EQUITABLE


class _StuckRecorder:
    """Collects the structural check reports of every stuck state the solver meets."""

    def __init__(self, monkeypatch):
        self.reports = []
        original = solver.check_stuck_structure

        def wrapped(*args, **kwargs):
            report = original(*args, **kwargs)
            self.reports.append(report)
            return report

        monkeypatch.setattr(solver, "check_stuck_structure", wrapped)


def degenerate_suite():
    rng = random.Random(20240601)
    for _ in range(1000):
        n = rng.randint(1, 40)
        graph = random_bounded_degree_graph(n, rng.randint(0, 8), rng.random(), rng.randrange(2**32))
        d = rng.choice((1, 2, 3))
        yield graph, d, default_k(graph.max_degree, d)


def forest_suite():
    rng = random.Random(20240602)
    for _ in range(100):
        yield random_bounded_degree_graph(300, 3, rng.uniform(0.5, 1.0), rng.randrange(2**32)), 1, 3
    for _ in range(100):
        yield random_bounded_degree_graph(48, 2, rng.uniform(0.5, 1.0), rng.randrange(2**32)), 1, 2


def _run_suite(suite, monkeypatch, notes):
    recorder = _StuckRecorder(monkeypatch)
    kinds: dict[OutcomeKind, int] = {}
    bad = []
    for graph, d, k in suite:
        out = solve(graph, SolveConfig(d=d, k=k, diagnostics=True, oracle_fallback_n=0))
        kinds[out.kind] = kinds.get(out.kind, 0) + 1
        if out.kind is not OutcomeKind.SOLVED or not _equitable_valid(graph, out.colouring, d):
            bad.append((serialize_dimacs(graph), d, k, out.kind))
    notes.append(f"outcomes={ {kind.value: count for kind, count in kinds.items()} }")
    notes.append(f"stuck states={len(recorder.reports)}")
    return bad, recorder.reports


def test_degenerate_suite_all_solved(monkeypatch):
    with criterion(1, "1000 random graphs, d in {1,2,3}, k = ceil(Delta/d)+1, all solved equitably") as notes:
        bad, _ = _run_suite(degenerate_suite(), monkeypatch, notes)
        assert not bad, bad[:3]


def test_forest_suite_all_solved(monkeypatch):
    with criterion(2, "200 forest instances (n=300, Delta<=3, k=3; n=48, Delta<=2, k=2) all solved") as notes:
        for graph, d, k in forest_suite():
            assert solver.theorem_hypotheses(graph.n, graph.max_degree, d, k)["tree"]
        bad, _ = _run_suite(forest_suite(), monkeypatch, notes)
        assert not bad, bad[:3]


def test_oracle_agreement():
    with criterion(3, "500 graphs n<=8, (d,k) in [0,3]x[1,4]: solver and oracle agree, no give-ups") as notes:
        rng = random.Random(20240603)
        disagreements, gave_up, instances = [], 0, 0
        for _ in range(500):
            n = rng.randint(1, 8)
            graph = random_bounded_degree_graph(n, rng.randint(0, n - 1), rng.random(), rng.randrange(2**32))
            for d in range(4):
                for k in range(1, 5):
                    instances += 1
                    out = solve(graph, SolveConfig(d=d, k=k, oracle_fallback_n=8))
                    gave_up += out.kind is OutcomeKind.GAVE_UP
                    expected = oracle_find(graph, d, k).feasible
                    if (out.kind is OutcomeKind.SOLVED) != expected:
                        disagreements.append((serialize_dimacs(graph), d, k))
                    if out.kind is OutcomeKind.SOLVED:
                        assert _equitable_valid(graph, out.colouring, d)
        notes.append(f"instances={instances} disagreements={len(disagreements)} gave_up={gave_up}")
        assert not disagreements and not gave_up


def test_named_instances():
    with criterion(4, "K33/K5/C5 verdicts exact") as notes:
        cases = [
            (complete_bipartite(3, 3), 0, 3, False),
            (complete_bipartite(3, 3), 0, 2, True),
            (complete_graph(5), 1, 2, False),
            (complete_graph(5), 1, 3, True),
            (cycle_graph(5), 1, 1, False),
        ]
        for graph, d, k, feasible in cases:
            out = solve(graph, SolveConfig(d=d, k=k))
            assert out.kind is (OutcomeKind.SOLVED if feasible else OutcomeKind.INFEASIBLE)
            assert oracle_find(graph, d, k).feasible is feasible
        notes.append(f"{len(cases)} verdicts")


def test_conjecture_scans():
    with criterion(5, "tree-colouring scan n<=6 exhaustive and d=0 sample n<=10 at k=Delta+1: no counterexamples") as notes:
        evac = scan_conjecture("evac", 6, mode="exhaustive")
        edc = scan_conjecture("edc", 10, mode="sample:200", d_values=(0,), seed=20240605, top_k_only=True)
        notes.append(f"evac graphs={evac.graphs_checked} instances={evac.instances_checked}")
        notes.append(f"edc graphs={edc.graphs_checked}")
        assert evac.graphs_checked == sum(2 ** (n * (n - 1) // 2) for n in range(1, 7))
        assert edc.graphs_checked == 200
        assert evac.clean and edc.clean


def test_stuck_state_diagnostics(monkeypatch):
    with criterion(6, "structural checks on stuck states of suites 1-2: no hard violations") as notes:
        suites = list(degenerate_suite()) + list(forest_suite())
        bad, reports = _run_suite(suites, monkeypatch, notes)
        violations = [v.name for r in reports for v in r.violations]
        notes.append(f"hard violations={len(violations)}")
        assert not bad and not violations


def test_degeneracy_module():
    with criterion(7, "V* equals brute-force minimal prefix (n<=6, d in [0,3]); insertion facts hold") as notes:
        compared = 0
        for n in range(1, 7):
            for graph in labelled_graphs(n):
                for d in range(4):
                    p, prefixes = minimal_prefix_sets(graph, d)
                    if p < 0:
                        assert not is_degenerate(graph, d)
                        continue
                    compared += 1
                    assert prefixes == {compute_vstar(graph, d)}
        notes.append(f"compared={compared}")

        rng = random.Random(20240607)
        counts = {"a": 0, "b": 0}
        for fact in ("a", "b"):
            while counts[fact] < 1000:
                n = rng.randint(1, 14)
                graph = random_bounded_degree_graph(n + 1, rng.randint(0, 6), rng.random(), rng.randrange(2**32))
                d = rng.randint(1, 3)
                base = frozenset(v for v in range(n) if rng.random() < 0.8)
                while not is_degenerate(graph, d, base):
                    base = base - {max(base)}
                if fact == "a" and graph.degree(n, core(graph, d, base)) <= d:
                    assert is_degenerate(graph, d, base | {n})
                    counts["a"] += 1
                elif fact == "b" and graph.degree(n, base) <= d - 1:
                    assert compute_vstar(graph, d, base | {n}) == compute_vstar(graph, d, base)
                    counts["b"] += 1
        notes.append(f"fact trials={counts}")


def test_cli_determinism(tmp_path):
    with criterion(8, "identical CLI runs give byte-identical JSON") as notes:
        graph = tmp_path / "g.col"
        subprocess.run(
            [sys.executable, "-m", "eqcolour.cli", "generate", "--n", "120", "--delta", "6", "--seed", "9", "--out", str(graph)],
            check=True,
        )
        commands = [
            ["solve", "--d", "1", "--seed", "3", "--diagnose", str(graph)],
            ["solve", "--d", "2", "--k", "4", "--seed", "3", str(graph)],
            ["scan", "--conjecture", "edc", "--nmax", "8", "--mode", "sample:40", "--seed", "3", "--d", "1"],
            ["generate", "--n", "50", "--delta", "4", "--seed", "3"],
        ]
        for argv in commands:
            runs = [
                subprocess.run([sys.executable, "-m", "eqcolour.cli", *argv], capture_output=True, check=False)
                for _ in range(2)
            ]
            assert runs[0].returncode == runs[1].returncode == 0
            assert runs[0].stdout == runs[1].stdout and runs[0].stdout
            assert runs[0].stderr == runs[1].stderr
        notes.append(f"{len(commands)} commands compared")

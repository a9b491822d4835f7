"""Exhaustive search for equitable d-degenerate k-colourings, conjecture scans
and the seeded bounded-degree graph generator."""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Sequence

from .colouring import Colouring
from .degeneracy import is_degenerate
from .graph import Graph, build_graph, parse_dimacs, serialize_dimacs


@dataclass(frozen=True)
class OracleVerdict:
    feasible: bool
    witness: Colouring | None
    nodes_explored: int


def oracle_find(graph: Graph, d: int, k: int) -> OracleVerdict:
    """Decide exactly whether ``graph`` has an equitable d-degenerate k-colouring.

    Depth-first search over vertices in decreasing degree order. Prunes on
    class capacity, on the number of classes allowed to take the larger
    size, on the remaining capacity needed to lift every class to n // k,
    on d-degeneracy of the class just extended, and on class symmetry (a
    vertex may open at most one new, empty class). Exponential; intended
    for n up to about 12.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    n = graph.n
    lo, r = divmod(n, k)
    hi = lo + (1 if r else 0)
    order = sorted(range(n), key=lambda v: (-graph.degree(v), v))
    members: list[set[int]] = [set() for _ in range(k)]
    assignment = [-1] * n
    nodes = 0
    full = 0  # classes at the larger size, only tracked when r > 0
    deficit = lo * k  # sum over classes of max(0, lo - size)

    def extend(i: int, opened: int) -> bool:
        nonlocal nodes, full, deficit
        nodes += 1
        if i == n:
            return True
        v = order[i]
        for j in range(min(opened + 1, k)):
            cls = members[j]
            s = len(cls)
            if s >= hi:
                continue
            if r and s == lo and full >= r:
                continue
            if graph.degree(v, cls) > d and not is_degenerate(graph, d, cls | {v}):
                continue
            cls.add(v)
            assignment[v] = j
            if s < lo:
                deficit -= 1
            if r and s + 1 == hi:
                full += 1
            if deficit <= n - i - 1 and extend(i + 1, max(opened, j + 1)):
                return True
            cls.discard(v)
            assignment[v] = -1
            if s < lo:
                deficit += 1
            if r and s + 1 == hi:
                full -= 1
        return False

    if extend(0, 0):
        return OracleVerdict(True, Colouring(k, tuple(assignment)), nodes)
    return OracleVerdict(False, None, nodes)


def random_bounded_degree_graph(n: int, delta_max: int, density: float, seed: int) -> Graph:
    """Seeded random graph with maximum degree at most ``delta_max``.

    All vertex pairs are shuffled; each is kept with probability ``density``
    provided both endpoints are still below the degree cap.
    """
    if delta_max < 0:
        raise ValueError("delta_max must be non-negative")
    rng = random.Random(seed)
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    deg = [0] * n
    edges = []
    for u, v in pairs:
        if deg[u] < delta_max and deg[v] < delta_max and rng.random() < density:
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return build_graph(n, edges)


def labelled_graphs(n: int) -> Iterator[Graph]:
    """All 2^(n choose 2) labelled graphs on ``n`` vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield build_graph(n, [p for b, p in enumerate(pairs) if mask >> b & 1])


CONJECTURES = ("evac", "edc")


def conjecture_k_range(conjecture: str, delta: int, d: int) -> range:
    """Colour counts covered by the conjecture, from its bound up to Delta+1."""
    if conjecture == "evac":
        d = 1
    elif conjecture != "edc":
        raise ValueError(f"unknown conjecture {conjecture!r}")
    lowest = max(1, -(-(delta + 1) // (d + 1)))
    return range(lowest, delta + 2)


@dataclass
class ScanReport:
    conjecture: str
    n_max: int
    mode: str
    d_values: tuple[int, ...]
    graphs_checked: int = 0
    instances_checked: int = 0
    counterexamples: list[dict[str, Any]] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict[str, Any]:
        return {
            "conjecture": self.conjecture,
            "n_range": [1, self.n_max],
            "mode": self.mode,
            "d_values": list(self.d_values),
            "graphs_checked": self.graphs_checked,
            "instances_checked": self.instances_checked,
            "counterexamples": self.counterexamples,
        }


def _check_graph(args: tuple[str, str, tuple[int, ...], bool]) -> tuple[int, list[dict[str, Any]]]:
    dimacs, conjecture, d_values, top_only = args
    graph = parse_dimacs(dimacs)
    delta = graph.max_degree
    checked = 0
    bad = []
    for d in (1,) if conjecture == "evac" else d_values:
        ks = conjecture_k_range(conjecture, delta, d)
        for k in [ks[-1]] if top_only else ks:
            checked += 1
            if not oracle_find(graph, d, k).feasible:
                bad.append({"graph": dimacs, "d": d, "k": k, "delta": delta})
    return checked, bad


def _scan_inputs(n_max: int, mode: str, seed: int) -> Iterator[Graph]:
    if mode == "exhaustive":
        if n_max > 7:
            raise ValueError("exhaustive scans are limited to n_max <= 7")
        for n in range(1, n_max + 1):
            yield from labelled_graphs(n)
        return
    kind, _, count = mode.partition(":")
    if kind != "sample" or not count.isdigit():
        raise ValueError(f"mode must be 'exhaustive' or 'sample:COUNT', got {mode!r}")
    rng = random.Random(seed)
    for _ in range(int(count)):
        n = rng.randint(1, n_max)
        yield random_bounded_degree_graph(n, rng.randint(0, n - 1), rng.random(), rng.randrange(2**32))


def scan_conjecture(
    conjecture: str,
    n_max: int,
    mode: str = "exhaustive",
    d_values: Sequence[int] = (0, 1, 2),
    seed: int = 0,
    jobs: int = 1,
    top_k_only: bool = False,
) -> ScanReport:
    """Run the oracle over a family of graphs for every k the conjecture covers.

    ``mode`` is ``"exhaustive"`` (all labelled graphs on 1..n_max vertices)
    or ``"sample:COUNT"``. With ``top_k_only`` only k = Delta+1 is tried.
    Every reported counterexample has been re-confirmed by a second,
    independent oracle run.
    """
    if conjecture not in CONJECTURES:
        raise ValueError(f"unknown conjecture {conjecture!r}")
    d_values = (1,) if conjecture == "evac" else tuple(d_values)
    report = ScanReport(conjecture, n_max, mode, d_values)
    tasks = ((serialize_dimacs(g), conjecture, d_values, top_k_only) for g in _scan_inputs(n_max, mode, seed))
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results: Iterable = pool.map(_check_graph, tasks, chunksize=256)
            report = _collect(report, results)
    else:
        report = _collect(report, map(_check_graph, tasks))
    confirmed = []
    for cx in report.counterexamples:
        if not oracle_find(parse_dimacs(cx["graph"]), cx["d"], cx["k"]).feasible:
            confirmed.append(cx)
    report.counterexamples = confirmed
    return report


def _collect(report: ScanReport, results: Iterable[tuple[int, list[dict[str, Any]]]]) -> ScanReport:
    for checked, bad in results:
        report.graphs_checked += 1
        report.instances_checked += checked
        report.counterexamples.extend(bad)
    return report

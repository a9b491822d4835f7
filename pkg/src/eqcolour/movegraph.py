"""The move digraph on colour classes and the accessibility structure built on it.

Nodes are class ids. There is an arc ``i -> j`` when some vertex of class i can
join class j without breaking d-degeneracy of class j; the least such vertex
id is the arc's representative. Classes that reach a smallest class are
*accessible*. The accessible part is split greedily into components, each
anchored at a smallest class (its terminal); the last component, its
terminal, the cut class ``u_minus`` and the cut-off classes ``tset`` drive
the repair moves in :mod:`eqcolour.solver`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from .colouring import Balance, Colouring, classify
from .degeneracy import core, is_degenerate
from .graph import Graph


class StaleRepresentative(RuntimeError):
    """A representative is no longer movable when its hop is executed."""


@dataclass(frozen=True)
class MoveDigraph:
    k: int
    arcs: Mapping[tuple[int, int], int]
    cores: tuple[frozenset[int], ...] = field(repr=False, compare=False)

    def successors(self, i: int) -> list[int]:
        return [j for j in range(self.k) if (i, j) in self.arcs]

    def predecessors(self, j: int) -> list[int]:
        return [i for i in range(self.k) if (i, j) in self.arcs]

    def representative(self, i: int, j: int) -> int:
        return self.arcs[(i, j)]


def class_cores(graph: Graph, c: Colouring, d: int) -> tuple[frozenset[int], ...]:
    return tuple(core(graph, d, members) for members in c.classes)


def is_movable(
    graph: Graph,
    c: Colouring,
    d: int,
    v: int,
    j: int,
    cores: Sequence[frozenset[int]] | None = None,
) -> bool:
    """True iff ``G[C_j + v]`` is d-degenerate."""
    if c.assignment[v] == j:
        raise ValueError(f"vertex {v} already belongs to class {j}")
    target = c.classes[j]
    target_core = cores[j] if cores is not None else core(graph, d, target)
    # Few neighbours in the core: insert v right after the core in the ordering.
    if graph.degree(v, target_core) <= d:
        return True
    return is_degenerate(graph, d, target | {v})


def build_move_digraph(graph: Graph, c: Colouring, d: int) -> MoveDigraph:
    cores = class_cores(graph, c, d)
    arcs: dict[tuple[int, int], int] = {}
    members = [sorted(m) for m in c.classes]
    for i in range(c.k):
        for j in range(c.k):
            if i == j:
                continue
            for v in members[i]:
                if is_movable(graph, c, d, v, j, cores):
                    arcs[(i, j)] = v
                    break
    return MoveDigraph(c.k, arcs, cores)


def reaching(D: MoveDigraph, targets: Iterable[int], allowed: Iterable[int] | None = None) -> set[int]:
    """Nodes (inside ``allowed``) with a directed path inside ``allowed`` to a target."""
    allowed = set(range(D.k)) if allowed is None else set(allowed)
    seen = {t for t in targets if t in allowed}
    queue = deque(sorted(seen))
    while queue:
        j = queue.popleft()
        for i in D.predecessors(j):
            if i in allowed and i not in seen:
                seen.add(i)
                queue.append(i)
    return seen


def shortest_path(
    D: MoveDigraph,
    sources: Iterable[int],
    targets: Iterable[int],
    avoid: Iterable[int] = (),
) -> list[int] | None:
    """Shortest directed path from any source to any target, avoiding ``avoid``.

    Ties go to the lowest source id, then lowest successor ids. A source that
    is itself a target yields a one-node path.
    """
    avoid = set(avoid)
    targets = set(targets) - avoid
    starts = sorted(set(sources) - avoid)
    parent: dict[int, int | None] = {}
    queue: deque[int] = deque()
    for s in starts:
        parent[s] = None
        queue.append(s)
    while queue:
        i = queue.popleft()
        if i in targets:
            path = [i]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for j in D.successors(i):
            if j not in parent and j not in avoid:
                parent[j] = i
                queue.append(j)
    return None


@dataclass(frozen=True)
class PartitionState:
    accessible: frozenset[int]
    inaccessible: frozenset[int]
    components: tuple[tuple[frozenset[int], int], ...]
    u_minus: int | None
    tset: frozenset[int]
    min_size: int
    max_size: int
    stuck: bool

    @property
    def a(self) -> int:
        return len(self.accessible)

    @property
    def b(self) -> int:
        return len(self.inaccessible)

    @property
    def t(self) -> int:
        return len(self.tset)

    @property
    def d_minus(self) -> frozenset[int]:
        return self.components[-1][0]

    @property
    def c_minus(self) -> int:
        return self.components[-1][1]

    def to_json(self) -> dict[str, Any]:
        return {
            "accessible": sorted(self.accessible),
            "inaccessible": sorted(self.inaccessible),
            "components": [{"classes": sorted(cs), "terminal": term} for cs, term in self.components],
            "c_minus": self.c_minus,
            "u_minus": self.u_minus,
            "tset": sorted(self.tset),
            "a": self.a,
            "b": self.b,
            "t": self.t,
            "stuck": self.stuck,
        }


def cut_off_classes(D: MoveDigraph, component: frozenset[int], terminal: int, removed: int) -> frozenset[int]:
    """Classes of ``component - removed`` that cannot reach ``terminal`` inside it."""
    rest = component - {removed}
    if removed == terminal:
        return frozenset(rest)
    return frozenset(rest - reaching(D, [terminal], rest))


def partition_state(D: MoveDigraph, c: Colouring) -> PartitionState:
    sizes = c.sizes
    lo, hi = min(sizes), max(sizes)
    smallest = [i for i in range(c.k) if sizes[i] == lo]
    accessible = frozenset(reaching(D, smallest))
    stuck = not any(sizes[i] == hi for i in accessible) and hi - lo >= 2

    components: list[tuple[frozenset[int], int]] = []
    remaining = set(accessible)
    for j in smallest:
        if j not in remaining:
            continue
        comp = frozenset(reaching(D, [j], remaining))
        components.append((comp, j))
        remaining -= comp
    assert not remaining

    d_minus, c_minus = components[-1]
    u_minus: int | None = None
    tset: frozenset[int] = frozenset()
    best = None
    for u in sorted(d_minus):
        cut = cut_off_classes(D, d_minus, c_minus, u)
        if cut and (best is None or len(cut) < best):
            best, u_minus, tset = len(cut), u, cut
    return PartitionState(
        accessible=accessible,
        inaccessible=frozenset(range(c.k)) - accessible,
        components=tuple(components),
        u_minus=u_minus,
        tset=tset,
        min_size=lo,
        max_size=hi,
        stuck=stuck,
    )


def move_along_path(
    graph: Graph,
    c: Colouring,
    d: int,
    path: Sequence[int],
    D: MoveDigraph,
) -> Colouring:
    """Shift one vertex from ``path[0]`` to ``path[-1]`` via representatives.

    Hops run from the far end backwards so every representative joins a
    class that has only lost vertices since ``D`` was built.
    """
    if len(set(path)) != len(path):
        raise ValueError(f"path {list(path)} repeats a class")
    assignment = list(c.assignment)
    for i in range(len(path) - 2, -1, -1):
        src, dst = path[i], path[i + 1]
        if (src, dst) not in D.arcs:
            raise ValueError(f"no arc {src} -> {dst} in the move digraph")
        v = D.arcs[(src, dst)]
        if assignment[v] != src:
            raise StaleRepresentative(f"representative {v} left class {src}")
        target = {u for u in range(len(assignment)) if assignment[u] == dst}
        if not is_degenerate(graph, d, target | {v}):
            raise StaleRepresentative(f"representative {v} no longer movable to {dst}")
        assignment[v] = dst
    return Colouring(c.k, tuple(assignment))


def measure(graph: Graph, c: Colouring, d: int, state: PartitionState) -> tuple[int, int, int]:
    """Lexicographic progress measure ``(gap to C_-, b, sum of |V*| over tset)``."""
    gap = state.max_size - c.sizes[state.c_minus]
    core_total = sum(len(core(graph, d, c.classes[i])) for i in state.tset)
    return (gap, state.b, core_total)


# --- structural diagnostics -------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    severity: str  # "hard" | "advisory"
    detail: str = ""

    def to_json(self) -> dict[str, str]:
        return {"name": self.name, "status": self.status, "severity": self.severity, "detail": self.detail}


@dataclass(frozen=True)
class DiagnosticsReport:
    checks: tuple[Check, ...]

    @property
    def violations(self) -> list[Check]:
        return [ch for ch in self.checks if ch.status == "fail" and ch.severity == "hard"]

    @property
    def ok(self) -> bool:
        return not self.violations

    def get(self, name: str) -> Check:
        return next(ch for ch in self.checks if ch.name == name)

    def to_json(self) -> dict[str, Any]:
        return {"ok": self.ok, "violations": [v.name for v in self.violations], "checks": [ch.to_json() for ch in self.checks]}


def _first_failure(items: Iterable[str]) -> str:
    for item in items:
        return item
    return ""


def check_stuck_structure(
    graph: Graph,
    c: Colouring,
    d: int,
    state: PartitionState,
    tau: int = 2,
    D: MoveDigraph | None = None,
    delta: int | None = None,
) -> DiagnosticsReport:
    """Recompute the structural facts a stuck near-equitable state must satisfy.

    Hard checks (a failure means a bug in this package): the core degree
    bound, the lower bounds on neighbours of inaccessible vertices, the
    component separation bound, ``|D_-| >= 2``, class sizes inside the
    accessible part, the lower bound on ``|B|`` and ``t < tau * b``. The
    last three only count as hard when their premises were themselves
    observed on the state. Checks about the cut-off classes are advisory,
    since they need global minimality that local search does not provide.
    """
    D = build_move_digraph(graph, c, d) if D is None else D
    delta = graph.max_degree if delta is None else delta
    k = c.k
    cores = D.cores
    classes = c.classes
    checks: list[Check] = []

    def add(name: str, failures: Iterable[str], severity: str = "hard", applicable: bool = True, why: str = "") -> bool:
        if not applicable:
            checks.append(Check(name, "skipped", severity, why))
            return False
        first = _first_failure(failures)
        checks.append(Check(name, "fail" if first else "pass", severity, first))
        return not first

    stuck = state.stuck and classify(c.sizes) is Balance.NEAR_EQUITABLE
    k_ok = k * (d + 1) >= delta + 1
    A, Bc = state.accessible, state.inaccessible
    Bv = frozenset().union(*(classes[i] for i in Bc)) if Bc else frozenset()
    smallest = {i for i in range(k) if c.sizes[i] == state.min_size}

    add("smallest_accessible", (f"smallest class {i} not accessible" for i in sorted(smallest - A)))
    add(
        "core_min_degree",
        (
            f"core vertex {v} of class {i} has < {d} core neighbours"
            for i in range(k)
            for v in sorted(cores[i])
            if graph.degree(v, cores[i]) < d
        ),
    )
    add(
        "inaccessible_core_degree",
        (
            f"x={x} has {graph.degree(x, cores[i])} <= {d} neighbours in core of accessible class {i}"
            for x in sorted(Bv)
            for i in sorted(A)
            if graph.degree(x, cores[i]) < d + 1
        ),
    )
    outside = A - state.d_minus
    add(
        "component_separation",
        (
            f"v={v} in last component reaches core of class {u} with <= {d} neighbours"
            for i in sorted(state.d_minus)
            for v in sorted(classes[i])
            for u in sorted(outside)
            if graph.degree(v, cores[u]) < d + 1
        ),
    )
    add(
        "last_component_size",
        [] if len(state.d_minus) >= 2 else [f"last component has {len(state.d_minus)} class"],
        applicable=stuck and k_ok,
        why="needs a stuck near-equitable state with k(d+1) >= Delta+1",
    )
    cm = c.sizes[state.c_minus]
    a_ok = add(
        "accessible_sizes",
        [
            *(f"class {i} has size {c.sizes[i]} > |C_-|+1 = {cm + 1}" for i in sorted(A) if c.sizes[i] - cm > 1),
            *(f"class {i} has empty core" for i in sorted(A) if not cores[i]),
        ],
        applicable=stuck and k_ok,
        why="needs a stuck near-equitable state with k(d+1) >= Delta+1",
    )
    b_ok = add(
        "inaccessible_volume",
        (f"|B|={len(Bv)} < b*|V|+1 for class {i}" for i in sorted(A) if len(Bv) < state.b * c.sizes[i] + 1),
        applicable=stuck and a_ok,
        why="needs accessible_sizes to hold",
    )

    T = state.tset
    Tv = frozenset().union(*(classes[i] for i in T)) if T else frozenset()
    far = A - T - ({state.u_minus} if state.u_minus is not None else set())
    add(
        "cutoff_not_movable",
        (
            f"v={v} in cut-off class {i} movable to class {j}"
            for i in sorted(T)
            for v in sorted(classes[i])
            for j in sorted(far)
            if graph.degree(v, cores[j]) <= d or is_degenerate(graph, d, classes[j] | {v})
        ),
        severity="advisory",
        applicable=stuck,
    )
    add(
        "cutoff_paths",
        (
            f"no path {w} -> C_- avoiding {v}"
            for v in sorted(T)
            for w in sorted(T)
            if v != w and shortest_path(D, [w], [state.c_minus], avoid=[v]) is None
        ),
        severity="advisory",
        applicable=stuck,
    )
    sinks = [w for w in sorted(T) if all(graph.degree(x, classes[v]) >= d for x in cores[w] for v in T)]
    add("rotation_sink", [] if sinks or not T else ["no class W in tset with the core degree property"], severity="advisory", applicable=stuck)

    def movable_elsewhere(v: int, home: int) -> bool:
        return any(
            graph.degree(v, cores[j]) <= d or is_degenerate(graph, d, classes[j] | {v})
            for j in A
            if j != home
        )

    add(
        "tight_core_neighbours",
        (
            f"core vertex {v} of class {i} with B-neighbour {x} still movable"
            for i in sorted(T)
            for v in sorted(cores[i])
            for x in sorted(graph.neighbour_set(v) & Bv)
            if graph.degree(x, cores[i]) == d + 1 and movable_elsewhere(v, i)
        ),
        severity="advisory",
        applicable=stuck,
    )

    def g_failures() -> Iterable[str]:
        for i in sorted(T):
            for v in sorted(classes[i]):
                tight = [x for x in sorted(graph.neighbour_set(v) & Bv) if graph.degree(x, classes[i]) == d + 1]
                for p, x in enumerate(tight):
                    for y in tight[p + 1:]:
                        if not graph.has_edge(x, y):
                            yield f"v={v}: tight B-neighbours {x},{y} non-adjacent"

    g_ok = add("tight_pairs_adjacent", g_failures(), severity="advisory", applicable=stuck)
    h_premise = tau <= d + 1 and k * tau * (d + 2) >= (1 + tau) * (delta + 1) and k_ok
    add(
        "cutoff_count",
        [] if state.t < tau * state.b else [f"t={state.t} >= tau*b={tau * state.b}"],
        severity="hard" if (b_ok and g_ok) else "advisory",
        applicable=stuck and h_premise,
        why="needs tau <= d+1 and k >= (1+tau)/tau * (Delta+1)/(d+2)",
    )
    return DiagnosticsReport(tuple(checks))

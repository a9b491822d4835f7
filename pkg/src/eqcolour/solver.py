"""Equitable d-degenerate k-colouring by edge insertion and local repair.

Edges are inserted one at a time into an initially edgeless graph while an
equitable colouring is maintained. When an insertion makes a class fail the
degeneracy test, one endpoint is recoloured; the result is near-equitable
(extreme classes 2 or 3 apart) and is repaired by moving vertices along
paths of the move digraph. When no such path exists, improvement moves are
tried in order (size trim, cycle rotation, B-vertex exchange, tree swap),
each accepted only if it lowers the progress measure ``(gap, b, core sum)``
or finishes the job outright.

Under ``k >= Delta/d + 1`` (any d >= 1), or ``d = 1``, ``2k >= Delta + 2``
and ``n // k >= 3 Delta^3``, a state with no applicable move cannot exist;
reaching one raises a theory violation, which signals a bug here.
"""

from __future__ import annotations

import enum
import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Any, Iterator

import networkx as nx

from .colouring import (
    Balance,
    Colouring,
    apply_moves,
    balanced_colouring,
    classify,
    diff,
    verify_colouring,
)
from .degeneracy import core, is_degenerate
from .graph import Graph, build_graph, edge_count_between, induced_subgraph
from .movegraph import (
    MoveDigraph,
    PartitionState,
    build_move_digraph,
    check_stuck_structure,
    measure,
    move_along_path,
    partition_state,
    shortest_path,
)
from .oracle import oracle_find

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolveConfig:
    d: int
    k: int
    max_repair_rounds: int | None = None  # default 50 * k * n
    restart_budget: int = 5
    rng_seed: int = 0
    oracle_fallback_n: int = 20
    diagnostics: bool = False
    max_depth: int = 8

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.d < 0:
            raise ValueError("d must be non-negative")
        if self.restart_budget < 0 or self.oracle_fallback_n < 0:
            raise ValueError("budgets must be non-negative")
        if self.max_repair_rounds is not None and self.max_repair_rounds < 0:
            raise ValueError("budgets must be non-negative")


class OutcomeKind(enum.Enum):
    SOLVED = "solved"
    INFEASIBLE = "infeasible"
    GAVE_UP = "gave_up"
    THEORY_VIOLATION = "theory_violation"


@dataclass
class SolveOutcome:
    kind: OutcomeKind
    colouring: Colouring | None = None
    report: dict[str, Any] | None = None
    trace: list[dict[str, Any]] = field(default_factory=list)
    diagnostics: list[dict[str, Any]] = field(default_factory=list)
    stats: dict[str, int] = field(default_factory=dict)

    @property
    def solved(self) -> bool:
        return self.kind is OutcomeKind.SOLVED


class RepairFailed(Exception):
    def __init__(self, message: str, best: Colouring | None = None):
        super().__init__(message)
        self.best = best


class TheoryViolation(Exception):
    def __init__(self, message: str, report: dict[str, Any]):
        super().__init__(message)
        self.report = report


def theorem_hypotheses(n: int, delta: int, d: int, k: int) -> dict[str, bool]:
    """Which existence guarantees cover ``(n, Delta, d, k)``."""
    return {
        # k >= Delta/d + 1
        "degenerate": d >= 1 and k * d >= delta + d,
        # d = 1, k >= (Delta+2)/2 and n // k >= 3 Delta^3
        "tree": d == 1 and 2 * k >= delta + 2 and n // k >= 3 * delta**3,
        # k >= (Delta+1)/(d+1): the recolouring step after an insertion always succeeds
        "insertion": k * (d + 1) >= delta + 1,
    }


def _guaranteed(hyp: dict[str, bool]) -> bool:
    return hyp["degenerate"] or hyp["tree"]


# --- the session ---------------------------------------------------------------


class _Session:
    """Working state of one solve call: trace, statistics and the recursion depth."""

    def __init__(self, config: SolveConfig, depth: int = 0):
        self.config = config
        self.depth = depth
        self.trace: list[dict[str, Any]] = []
        self.diagnostics: list[dict[str, Any]] = []
        self.stats = {"repair_rounds": 0, "restarts": 0, "stuck_states": 0, "recursive_solves": 0}
        self.delta = 0
        self.n = 0

    def count(self, key: str) -> None:
        self.stats[key] = self.stats.get(key, 0) + 1

    def record(self, kind: str, before: Colouring, after: Colouring, m_before: Any = None, m_after: Any = None) -> None:
        self.count(f"moves_{kind}")
        if self.config.diagnostics:
            self.trace.append(
                {
                    "event": "move",
                    "kind": kind,
                    "moves": [list(t) for t in diff(before, after)],
                    "measure_before": list(m_before) if m_before is not None else None,
                    "measure_after": list(m_after) if m_after is not None else None,
                }
            )

    def hypotheses(self) -> dict[str, bool]:
        return theorem_hypotheses(self.n, self.delta, self.config.d, self.config.k)

    def subsolve(self, graph: Graph, k: int) -> Colouring | None:
        """Equitable d-degenerate k-colouring of a smaller graph, or None."""
        if self.depth >= self.config.max_depth:
            return None
        self.count("recursive_solves")
        sub = SolveConfig(
            d=self.config.d,
            k=k,
            max_repair_rounds=self.config.max_repair_rounds,
            restart_budget=min(self.config.restart_budget, 2),
            rng_seed=self.config.rng_seed,
            oracle_fallback_n=min(self.config.oracle_fallback_n, 12),
            diagnostics=False,
            max_depth=self.config.max_depth,
        )
        outcome = _solve(graph, sub, self.depth + 1)
        return outcome.colouring if outcome.solved else None


# --- insertion step ------------------------------------------------------------


def recolour_endpoint(graph: Graph, c: Colouring, edge: tuple[int, int], d: int) -> Colouring | None:
    """Move one endpoint of ``edge`` out of its now non-degenerate class.

    The endpoint needs at least d+1 neighbours in its class, and the target
    class is one where it has at most d neighbours; the choice maximises the
    slack ``d - neighbours``, then prefers the lower class id, then the
    second endpoint ``v`` of ``edge = (u, v)``. Returns None when no such
    target exists.
    """
    u, v = edge
    h = c[u]
    best = None
    for rank, x in enumerate((v, u)):
        if graph.degree(x, c.classes[h]) < d + 1:
            continue
        for j in range(c.k):
            if j == h:
                continue
            s = graph.degree(x, c.classes[j])
            if s <= d:
                key = (-(d - s), j, rank, x)
                if best is None or key < best:
                    best = key
    if best is None:
        return None
    _, j, _, x = best
    return apply_moves(c, [(x, j)])


def insert_edge_and_repair(graph: Graph, c: Colouring, edge: tuple[int, int], config: SolveConfig, session: _Session | None = None) -> Colouring:
    """Restore an equitable colouring after ``edge`` (already in ``graph``) is added.

    ``c`` must be equitable and valid for ``graph`` minus ``edge``.
    """
    session = session or _Session(config)
    d = config.d
    u, v = edge
    if c[u] != c[v] or is_degenerate(graph, d, c.classes[c[u]]):
        return c
    new = recolour_endpoint(graph, c, edge, d)
    if new is None:
        # Outside the guarantee: any endpoint that can move at all.
        h = c[u]
        for x, j in itertools.product(sorted(edge), range(c.k)):
            if j != h and is_degenerate(graph, d, c.classes[j] | {x}):
                new = apply_moves(c, [(x, j)])
                break
    if new is None:
        if session.hypotheses()["insertion"]:
            raise TheoryViolation(f"no recolouring target for edge {edge}", {"edge": list(edge), "check": "recolour_target"})
        raise RepairFailed(f"no endpoint of {edge} can leave its class", c)
    session.record("recolour", c, new)
    balance = classify(new.sizes)
    if balance is Balance.EQUITABLE:
        return new
    if balance is not Balance.NEAR_EQUITABLE:
        raise RepairFailed("recolouring left a colouring that is not near-equitable", new)
    return repair_near_equitable(graph, new, config, session)


# --- improvement moves ---------------------------------------------------------


def size_trim_candidates(graph: Graph, c: Colouring, d: int, state: PartitionState, D: MoveDigraph) -> Iterator[Colouring]:
    """Accessible classes two or more above ``C_-`` pass a vertex to a smallest class."""
    smallest = [i for i in range(c.k) if c.sizes[i] == state.min_size]
    cm = c.sizes[state.c_minus]
    for i in sorted(state.accessible):
        if c.sizes[i] - cm >= 2:
            path = shortest_path(D, [i], smallest)
            if path is not None and len(path) > 1:
                yield move_along_path(graph, c, d, path, D)


def size_trim(graph: Graph, c: Colouring, d: int, state: PartitionState, D: MoveDigraph) -> Colouring | None:
    return next(size_trim_candidates(graph, c, d, state, D), None)


def rotation_digraph(graph: Graph, c: Colouring, d: int, state: PartitionState) -> dict[tuple[int, int], int]:
    """Arcs ``V -> U`` on ``tset``: some core vertex of V has at most d-1
    neighbours in U. Values are the least such vertex."""
    arcs = {}
    for i in sorted(state.tset):
        vcore = sorted(core(graph, d, c.classes[i]))
        for j in sorted(state.tset):
            if i == j:
                continue
            for v in vcore:
                if graph.degree(v, c.classes[j]) <= d - 1:
                    arcs[(i, j)] = v
                    break
    return arcs


def rotation_sink(graph: Graph, c: Colouring, d: int, state: PartitionState) -> int | None:
    """Least-id class of ``tset`` with no outgoing rotation arc, if the
    rotation digraph is acyclic."""
    if not state.tset:
        return None
    arcs = rotation_digraph(graph, c, d, state)
    g = nx.DiGraph()
    g.add_nodes_from(state.tset)
    g.add_edges_from(arcs)
    if not nx.is_directed_acyclic_graph(g):
        return None
    return min(i for i in state.tset if g.out_degree(i) == 0)


def cycle_rotation_candidates(graph: Graph, c: Colouring, d: int, state: PartitionState, limit: int = 200) -> Iterator[Colouring]:
    """Rotate one core vertex around each directed cycle of the rotation digraph."""
    arcs = rotation_digraph(graph, c, d, state)
    if not arcs:
        return
    g = nx.DiGraph(list(arcs))
    cycles = sorted(itertools.islice(nx.simple_cycles(g), limit), key=lambda cyc: (len(cyc), sorted(cyc)))
    for cyc in cycles:
        moves = [(arcs[(cyc[i], cyc[(i + 1) % len(cyc)])], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]
        yield apply_moves(c, moves)


def cycle_rotation(graph: Graph, c: Colouring, d: int, state: PartitionState) -> Colouring | None:
    return next(cycle_rotation_candidates(graph, c, d, state), None)


def _class_union(c: Colouring, ids) -> frozenset[int]:
    return frozenset().union(*(c.classes[i] for i in ids)) if ids else frozenset()


def _graft(c: Colouring, assignment: list[int], inaccessible: list[int], sub: Colouring, sub_ids: list[int]) -> Colouring:
    """Write a colouring of ``G[B - x]`` back onto the inaccessible class ids."""
    for new_v, old_v in enumerate(sub_ids):
        assignment[old_v] = inaccessible[sub.assignment[new_v]]
    return Colouring(c.k, tuple(assignment))


class _BSolutions:
    """Cache of equitable b-colourings of ``G[B - x]`` keyed by x."""

    def __init__(self, graph: Graph, c: Colouring, state: PartitionState, session: _Session):
        self.graph = graph
        self.bverts = _class_union(c, state.inaccessible)
        self.b = state.b
        self.session = session
        self.cache: dict[int, tuple[Colouring, list[int]] | None] = {}

    def __call__(self, x: int) -> tuple[Colouring, list[int]] | None:
        if x not in self.cache:
            sub_graph, ids = induced_subgraph(self.graph, self.bverts - {x})
            sub = self.session.subsolve(sub_graph, self.b)
            self.cache[x] = None if sub is None else (sub, ids)
        return self.cache[x]


def _valid_equitable(graph: Graph, c: Colouring, d: int) -> bool:
    return classify(c.sizes) is Balance.EQUITABLE and verify_colouring(graph, c, d).valid


def b_vertex_exchange_candidates(
    graph: Graph,
    c: Colouring,
    d: int,
    state: PartitionState,
    D: MoveDigraph,
    session: _Session,
) -> Iterator[Colouring]:
    """Trade a vertex of a cut-off class for a vertex of the inaccessible part.

    Pattern one: a core vertex v of ``V`` in ``tset`` has an inaccessible
    neighbour x with exactly d+1 neighbours in that core, and v can join
    another accessible class that reaches a smallest class without passing
    through ``V``. Shift one vertex along that path, put v in its first
    class and x in ``V``, and recolour ``G[B - x]`` with b classes; the
    result is equitable.

    Pattern two: v in ``V`` has two non-adjacent inaccessible neighbours x, y
    with exactly d+1 neighbours in ``V``. Swap v with x and drop v into a
    class of a b-colouring of ``G[B - x]`` where it has at most d
    neighbours; the accessible part grows.
    """
    if not state.tset or not state.inaccessible:
        return
    classes = c.classes
    cores = D.cores
    bverts = _class_union(c, state.inaccessible)
    inaccessible = sorted(state.inaccessible)
    smallest = [i for i in range(c.k) if c.sizes[i] == state.min_size]
    solutions = _BSolutions(graph, c, state, session)

    for i in sorted(state.tset):
        for v in sorted(cores[i]):
            for x in sorted(graph.neighbour_set(v) & bverts):
                if graph.degree(x, cores[i]) != d + 1:
                    continue
                for j in sorted(state.accessible - {i}):
                    if graph.degree(v, cores[j]) > d and not is_degenerate(graph, d, classes[j] | {v}):
                        continue
                    path = shortest_path(D, [j], smallest, avoid=[i])
                    if path is None:
                        continue
                    sol = solutions(x)
                    if sol is None:
                        break
                    shifted = move_along_path(graph, c, d, path, D) if len(path) > 1 else c
                    assignment = list(shifted.assignment)
                    assignment[v] = j
                    assignment[x] = i
                    candidate = _graft(c, assignment, inaccessible, *sol)
                    if _valid_equitable(graph, candidate, d):
                        yield candidate

    for i in sorted(state.tset):
        for v in sorted(classes[i]):
            tight = [x for x in sorted(graph.neighbour_set(v) & bverts) if graph.degree(x, classes[i]) == d + 1]
            for x, y in itertools.permutations(tight, 2):
                if graph.has_edge(x, y):
                    continue
                sol = solutions(x)
                if sol is None:
                    continue
                sub, ids = sol
                base = _graft(c, list(c.assignment), inaccessible, sub, ids)
                for j in inaccessible:
                    if graph.degree(v, base.classes[j]) <= d:
                        candidate = apply_moves(base, [(x, i), (v, j)])
                        if verify_colouring(graph, candidate, d).valid and classify(candidate.sizes) in (
                            Balance.EQUITABLE,
                            Balance.NEAR_EQUITABLE,
                        ):
                            yield candidate
                        break


def b_vertex_exchange(graph: Graph, c: Colouring, d: int, state: PartitionState, D: MoveDigraph, session: _Session) -> Colouring | None:
    return next(b_vertex_exchange_candidates(graph, c, d, state, D, session), None)


# --- tree repair (d = 1) -------------------------------------------------------


@dataclass(frozen=True)
class TreeRepairContext:
    W: int
    wstar: frozenset[int]
    W1: frozenset[int]
    W2: frozenset[int]
    W_gt2: frozenset[int]
    Rset: frozenset[int]
    Rprime: frozenset[int]
    B1: frozenset[int]
    B2: frozenset[int]
    B21: frozenset[int]
    B22: frozenset[int]

    @property
    def r(self) -> int:
        return len(self.Rset)


def build_tree_context(
    graph: Graph,
    c: Colouring,
    state: PartitionState,
    W: int,
    delta: int | None = None,
    d: int = 1,
) -> TreeRepairContext:
    """Partition the core of the sink class W and the inaccessible vertices
    by how they attach to it (forest colourings only)."""
    if d != 1:
        raise ValueError("tree repair needs d = 1")
    delta = graph.max_degree if delta is None else delta
    classes = c.classes
    cores = [core(graph, d, m) for m in classes]
    wstar = cores[W]
    if not wstar:
        raise AssertionError(f"class {W} of an accessible stuck state has an empty core")
    Rset = frozenset(
        i
        for i in state.tset - {W}
        if edge_count_between(graph, classes[i], wstar) < 2 * (len(classes[i]) - delta**2)
    )
    Rprime = Rset | ({state.u_minus} if state.u_minus is not None else frozenset())
    others = sorted(state.accessible - {W})
    W1 = frozenset(w for w in wstar if all(graph.degree(w, cores[i]) >= 2 for i in others))
    W2 = frozenset(
        w for w in wstar - W1 if sum(1 for i in Rprime if graph.degree(w, cores[i]) <= 1) == 1
    )
    W_gt2 = wstar - W1 - W2
    bverts = _class_union(c, state.inaccessible)
    B1 = frozenset(x for x in bverts if graph.degree(x, wstar) == 2)
    B2 = frozenset(x for x in bverts if graph.degree(x, wstar) == 3)
    B21 = frozenset(x for x in B2 if graph.degree(x, W1) >= 2)
    return TreeRepairContext(W, wstar, W1, W2, W_gt2, Rset, Rprime, B1, B2, B21, B2 - B21)


def select_far_vertex(graph: Graph, members, x: int, wstar: frozenset[int], exclude=()) -> int | None:
    """Least vertex u of ``members`` with at most one neighbour in ``wstar``
    and no path of length at most 2 to ``x``."""
    near = graph.neighbour_set(x) | {x}
    for u in sorted(set(members) - set(exclude)):
        if graph.degree(u, wstar) <= 1 and not (graph.neighbour_set(u) & near):
            return u
    return None


def tree_swap_candidates(
    graph: Graph,
    c: Colouring,
    state: PartitionState,
    ctx: TreeRepairContext,
    D: MoveDigraph,
    session: _Session,
) -> Iterator[Colouring]:
    """Pull an inaccessible x with three core neighbours in W into W.

    Two core neighbours w1, w2 of x leave W (w1 to a class V1 in ``tset`` or
    ``u_minus``, w2 to a class of ``Rprime``), one vertex moves along the
    path from V1 to ``C_-``, and x together with a vertex u far from x
    replaces them in W. ``G[B - x]`` is recoloured with b classes and
    grafted back; only valid equitable results are produced.
    """
    d = 1
    W = ctx.W
    classes = c.classes
    cores = D.cores
    inaccessible = sorted(state.inaccessible)
    solutions = _BSolutions(graph, c, state, session)
    hosts = sorted((state.tset | ({state.u_minus} if state.u_minus is not None else set())) - {W})

    def hops(path: list[int]) -> list[tuple[int, int]]:
        return [(D.arcs[(path[p], path[p + 1])], path[p + 1]) for p in range(len(path) - 1)]

    for x in sorted(ctx.B22):
        if not graph.neighbour_set(x) & ctx.W_gt2:
            continue
        for w1 in sorted(graph.neighbour_set(x) & (ctx.W2 | ctx.W_gt2)):
            for w2 in sorted(graph.neighbour_set(x) & ctx.W_gt2):
                if w1 == w2:
                    continue
                for V1 in hosts:
                    if graph.degree(w1, cores[V1]) > d:
                        continue
                    path = shortest_path(D, [V1], [state.c_minus], avoid=[W])
                    if path is None:
                        continue
                    targets = [U for U in sorted(ctx.Rprime - {W}) if graph.degree(w2, cores[U]) <= d]
                    plans = []
                    for U in targets:
                        if U not in path:
                            plans.append((hops(path), U, U))
                    on_path = sorted((path.index(U), U) for U in targets if U in path)
                    for (p1, U1), (p2, U2) in itertools.combinations(on_path, 2):
                        plans.append((hops(path[: p1 + 1]) + hops(path[p2:]), U1, U2))
                    for moves, source, receiver in plans:
                        leaving = {v for v, _ in moves}
                        u = select_far_vertex(graph, classes[source], x, ctx.wstar, exclude=leaving)
                        if u is None:
                            continue
                        sol = solutions(x)
                        if sol is None:
                            return
                        assignment = list(c.assignment)
                        for v, to in moves:
                            assignment[v] = to
                        assignment[w1] = V1
                        assignment[w2] = receiver
                        assignment[x] = W
                        assignment[u] = W
                        candidate = _graft(c, assignment, inaccessible, *sol)
                        if _valid_equitable(graph, candidate, d):
                            yield candidate


def tree_swap(graph: Graph, c: Colouring, state: PartitionState, ctx: TreeRepairContext, D: MoveDigraph, session: _Session) -> Colouring | None:
    return next(tree_swap_candidates(graph, c, state, ctx, D, session), None)


# --- repair loop ---------------------------------------------------------------


def _improvements(graph: Graph, c: Colouring, d: int, state: PartitionState, D: MoveDigraph, session: _Session) -> Iterator[tuple[str, Colouring]]:
    for cand in cycle_rotation_candidates(graph, c, d, state):
        yield "cycle_rotation", cand
    for cand in b_vertex_exchange_candidates(graph, c, d, state, D, session):
        yield "b_vertex_exchange", cand
    if d == 1:
        W = rotation_sink(graph, c, d, state)
        if W is not None and state.inaccessible:
            ctx = build_tree_context(graph, c, state, W, session.delta or None)
            for cand in tree_swap_candidates(graph, c, state, ctx, D, session):
                yield "tree_swap", cand


def repair_near_equitable(graph: Graph, c: Colouring, config: SolveConfig, session: _Session | None = None) -> Colouring:
    """Drive a valid near-equitable colouring to an equitable one."""
    session = session or _Session(config)
    if not session.n:
        session.n, session.delta = graph.n, graph.max_degree
    d = config.d
    cap = config.max_repair_rounds if config.max_repair_rounds is not None else 50 * config.k * max(graph.n, 1)
    rounds = 0
    while True:
        if classify(c.sizes) is Balance.EQUITABLE:
            return c
        rounds += 1
        session.stats["repair_rounds"] += 1
        if rounds > cap:
            raise RepairFailed("repair round budget exhausted", c)
        D = build_move_digraph(graph, c, d)
        state = partition_state(D, c)
        largest = [i for i in range(c.k) if c.sizes[i] == state.max_size]
        smallest = [i for i in range(c.k) if c.sizes[i] == state.min_size]
        path = shortest_path(D, largest, smallest)
        if path is not None:
            new = move_along_path(graph, c, d, path, D)
            session.record("path", c, new)
            c = new
            continue

        before = measure(graph, c, d, state)
        trimmed = size_trim(graph, c, d, state, D)
        if trimmed is not None:
            session.record("size_trim", c, trimmed, before, _measure_of(graph, trimmed, d))
            c = trimmed
            continue

        session.stats["stuck_states"] += 1
        report = None
        if config.diagnostics:
            report = check_stuck_structure(graph, c, d, state, D=D, delta=session.delta)
            session.diagnostics.append({"sizes": list(c.sizes), "state": state.to_json(), **report.to_json()})
            if report.violations:
                raise TheoryViolation(
                    f"structural check failed: {[v.name for v in report.violations]}",
                    {"sizes": list(c.sizes), "state": state.to_json(), **report.to_json()},
                )

        for kind, cand in _improvements(graph, c, d, state, D, session):
            after = _measure_of(graph, cand, d)
            if after is None or after < before:
                session.record(kind, c, cand, before, after)
                c = cand
                break
        else:
            if _guaranteed(session.hypotheses()):
                report = report or check_stuck_structure(graph, c, d, state, D=D, delta=session.delta)
                raise TheoryViolation(
                    "stuck near-equitable state with no improving move",
                    {"sizes": list(c.sizes), "measure": list(before), "state": state.to_json(), **report.to_json()},
                )
            raise RepairFailed("no improving move", c)


def _measure_of(graph: Graph, c: Colouring, d: int) -> tuple[int, int, int] | None:
    """Progress measure of a colouring, None once it is equitable."""
    if classify(c.sizes) is Balance.EQUITABLE:
        return None
    D = build_move_digraph(graph, c, d)
    return measure(graph, c, d, partition_state(D, c))


# --- driver --------------------------------------------------------------------


def _run_insertions(graph: Graph, order: list[tuple[int, int]], start: Colouring, session: _Session) -> Colouring:
    config = session.config
    d = config.d
    c = start
    for idx, (u, v) in enumerate(order):
        if config.diagnostics:
            session.trace.append({"event": "insert", "edge": [u, v]})
        if c[u] != c[v]:
            continue
        prefix = build_graph(graph.n, order[: idx + 1])
        c = insert_edge_and_repair(prefix, c, (u, v), config, session)
    return c


def solve(graph: Graph, config: SolveConfig) -> SolveOutcome:
    """Find an equitable d-degenerate k-colouring of ``graph``.

    Returns SOLVED with a verified witness, INFEASIBLE when the oracle
    (used for graphs with at most ``oracle_fallback_n`` vertices after the
    repair budget runs out) proves none exists, GAVE_UP with the best
    colouring reached, or THEORY_VIOLATION when an existence guarantee
    covers the instance yet the repair is stuck.
    """
    return _solve(graph, config, 0)


def _solve(graph: Graph, config: SolveConfig, depth: int) -> SolveOutcome:
    session = _Session(config, depth)
    session.n, session.delta = graph.n, graph.max_degree
    rng = random.Random(config.rng_seed)
    edges = graph.edges()
    best: Colouring | None = None

    def finish(kind: OutcomeKind, c: Colouring | None = None, report: dict[str, Any] | None = None) -> SolveOutcome:
        return SolveOutcome(kind, c, report, session.trace, session.diagnostics, session.stats)

    for attempt in range(config.restart_budget + 1):
        if attempt == 0:
            order, start = edges, balanced_colouring(graph.n, config.k)
        else:
            session.stats["restarts"] += 1
            order = rng.sample(edges, len(edges))
            start = balanced_colouring(graph.n, config.k, rng.sample(range(graph.n), graph.n))
        if config.diagnostics:
            session.trace.append({"event": "init", "attempt": attempt, "assignment": list(start.assignment)})
        try:
            c = _run_insertions(graph, order, start, session)
        except RepairFailed as exc:
            log.debug("attempt %d failed: %s", attempt, exc)
            best = exc.best or best
            continue
        except TheoryViolation as exc:
            return finish(OutcomeKind.THEORY_VIOLATION, None, {"message": str(exc), **exc.report})
        assert _valid_equitable(graph, c, config.d), "solver produced an invalid colouring"
        return finish(OutcomeKind.SOLVED, c)

    if graph.n <= config.oracle_fallback_n:
        verdict = oracle_find(graph, config.d, config.k)
        session.stats["oracle_nodes"] = verdict.nodes_explored
        if config.diagnostics:
            session.trace.append({"event": "oracle", "feasible": verdict.feasible})
        if verdict.feasible:
            return finish(OutcomeKind.SOLVED, verdict.witness)
        return finish(OutcomeKind.INFEASIBLE)
    return finish(OutcomeKind.GAVE_UP, best)


def default_k(delta: int, d: int) -> int:
    """Smallest k with k >= Delta/d + 1."""
    if d < 1:
        return delta + 1
    return -(-delta // d) + 1

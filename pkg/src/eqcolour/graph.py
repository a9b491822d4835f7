"""Immutable simple graphs, neighbourhood counts and DIMACS ``.col`` I/O.

Vertices are the integers ``0..n-1``. DIMACS files are 1-indexed; conversion
happens only at the I/O boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

VertexSet = frozenset  # frozenset[int]; membership over range(n)


class GraphInputError(ValueError):
    """Malformed graph input (bad edge, bad DIMACS line, overlapping sets)."""


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    m: int
    _nbr: tuple[frozenset[int], ...] = field(repr=False, compare=False, hash=False)

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def neighbour_set(self, v: int) -> frozenset[int]:
        return self._nbr[v]

    def degree(self, v: int, within: Iterable[int] | None = None) -> int:
        """Degree of ``v``, or number of neighbours of ``v`` inside ``within``."""
        if within is None:
            return len(self.adjacency[v])
        if not isinstance(within, (set, frozenset)):
            within = set(within)
        nbr = self._nbr[v]
        if len(within) < len(nbr):
            return sum(1 for u in within if u in nbr)
        return sum(1 for u in nbr if u in within)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr[u]

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def vertices(self) -> range:
        return range(self.n)


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a simple graph on ``n`` vertices; duplicate edges are merged."""
    if n < 0:
        raise GraphInputError(f"vertex count must be non-negative, got {n}")
    nbr: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphInputError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphInputError(f"self-loop at vertex {u}")
        nbr[u].add(v)
        nbr[v].add(u)
    adjacency = tuple(tuple(sorted(s)) for s in nbr)
    m = sum(len(a) for a in adjacency) // 2
    return Graph(n, adjacency, m, tuple(frozenset(s) for s in nbr))


def _as_set(s: Iterable[int]) -> frozenset[int] | set[int]:
    return s if isinstance(s, (set, frozenset)) else frozenset(s)


def edge_count_between(graph: Graph, s: Iterable[int], t: Iterable[int]) -> int:
    """Number of edges with one end in ``s`` and the other in ``t`` (disjoint)."""
    s, t = _as_set(s), _as_set(t)
    if s & t:
        raise GraphInputError("edge_count_between needs disjoint vertex sets")
    if len(t) < len(s):
        s, t = t, s
    return sum(graph.degree(v, t) for v in s)


def induced_subgraph(graph: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """Return ``G[s]`` relabelled to ``0..|s|-1`` and the map new id -> old id."""
    old = sorted(set(s))
    for v in old:
        if not 0 <= v < graph.n:
            raise GraphInputError(f"vertex {v} out of range for n={graph.n}")
    new_id = {v: i for i, v in enumerate(old)}
    edges = [
        (new_id[u], new_id[w])
        for u in old
        for w in graph.adjacency[u]
        if u < w and w in new_id
    ]
    return build_graph(len(old), edges), old


def parse_dimacs(text: str) -> Graph:
    """Parse DIMACS ``.col`` text (``p edge n m`` header, ``e u v`` lines)."""
    n: int | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphInputError(f"line {lineno}: duplicate problem line")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise GraphInputError(f"line {lineno}: malformed problem line {line!r}")
            try:
                n = int(parts[2])
                int(parts[3])
            except ValueError:
                raise GraphInputError(f"line {lineno}: malformed problem line {line!r}") from None
            if n < 0:
                raise GraphInputError(f"line {lineno}: negative vertex count")
        elif parts[0] == "e":
            if n is None:
                raise GraphInputError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise GraphInputError(f"line {lineno}: malformed edge line {line!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphInputError(f"line {lineno}: malformed edge line {line!r}") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphInputError(f"line {lineno}: vertex out of range in {line!r}")
            if u == v:
                raise GraphInputError(f"line {lineno}: self-loop in {line!r}")
            edges.append((u - 1, v - 1))
        else:
            raise GraphInputError(f"line {lineno}: unknown line type {line!r}")
    if n is None:
        raise GraphInputError("missing problem line")
    return build_graph(n, edges)


def serialize_dimacs(graph: Graph) -> str:
    """Canonical DIMACS text: header then edges sorted lexicographically."""
    lines = [f"p edge {graph.n} {graph.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in graph.edges())
    return "\n".join(lines) + "\n"


# Named families used in tests, docs and the CLI.

def complete_graph(n: int) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphInputError("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(p: int, q: int) -> Graph:
    return build_graph(p + q, [(u, p + v) for u in range(p) for v in range(q)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)

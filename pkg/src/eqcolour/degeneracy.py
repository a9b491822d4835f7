"""Degeneracy orderings, cores and the minimal-p prefix ``V*``.

A graph is d-degenerate when every subgraph has a vertex of degree at most d;
equivalently its (d+1)-core is empty. For a d-degenerate graph, ``V*`` is the
prefix of a degeneracy ordering ending at the last vertex with exactly d
earlier neighbours, over orderings that make this prefix shortest. That prefix
is always the d-core, which is what :func:`compute_vstar` returns.

Every function accepts an optional ``within`` vertex set and then works on
the induced subgraph ``G[within]`` without relabelling.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .graph import Graph


class NotDegenerate(Exception):
    """Peeling got stuck; ``witness`` induces a subgraph of min degree >= d+1."""

    def __init__(self, d: int, witness: frozenset[int]):
        super().__init__(f"graph is not {d}-degenerate ({len(witness)} vertices in the {d + 1}-core)")
        self.d = d
        self.witness = witness


@dataclass(frozen=True)
class DegeneracyCertificate:
    ordering: tuple[int, ...]
    d: int
    p: int
    vstar: frozenset[int]


def _vertex_set(graph: Graph, within: Iterable[int] | None) -> frozenset[int] | set[int]:
    if within is None:
        return frozenset(range(graph.n))
    if isinstance(within, (set, frozenset)):
        return within
    return frozenset(within)


def core(graph: Graph, d: int, within: Iterable[int] | None = None) -> frozenset[int]:
    """The d-core of ``G[within]``: delete vertices of degree <= d-1 until none remain."""
    verts = _vertex_set(graph, within)
    if d <= 0:
        return frozenset(verts)
    deg = {v: graph.degree(v, verts) for v in verts}
    alive = set(verts)
    queue = deque(v for v in verts if deg[v] < d)
    while queue:
        v = queue.popleft()
        if v not in alive:
            continue
        alive.discard(v)
        for u in graph.adjacency[v]:
            if u in alive:
                deg[u] -= 1
                if deg[u] == d - 1:
                    queue.append(u)
    return frozenset(alive)


def is_degenerate(graph: Graph, d: int, within: Iterable[int] | None = None) -> bool:
    """True iff ``G[within]`` is d-degenerate (its (d+1)-core is empty)."""
    if d < 0:
        return not _vertex_set(graph, within)
    return not core(graph, d + 1, within)


def peel_order(graph: Graph, d: int, within: Iterable[int] | None = None) -> list[int]:
    """Degeneracy ordering of ``G[within]`` in which every vertex has at most
    ``d`` earlier neighbours.

    Built by repeatedly deleting a minimum-degree vertex (lowest id on ties)
    and reversing the deletion sequence. Raises :class:`NotDegenerate` with the
    remaining vertices when every one of them has degree at least ``d + 1``.
    """
    verts = _vertex_set(graph, within)
    deg = {v: graph.degree(v, verts) for v in verts}
    heap = [(k, v) for v, k in deg.items()]
    heapq.heapify(heap)
    alive = set(verts)
    removed: list[int] = []
    while heap:
        k, v = heapq.heappop(heap)
        if v not in alive or k != deg[v]:
            continue
        if k > d:
            raise NotDegenerate(d, frozenset(alive))
        alive.discard(v)
        removed.append(v)
        for u in graph.adjacency[v]:
            if u in alive:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    removed.reverse()
    return removed


def earlier_neighbour_counts(graph: Graph, ordering: Iterable[int]) -> list[int]:
    seen: set[int] = set()
    counts = []
    for v in ordering:
        counts.append(graph.degree(v, seen))
        seen.add(v)
    return counts


def prefix_length(graph: Graph, ordering: Iterable[int], d: int) -> int:
    """The index p: last (1-based) position with exactly ``d`` earlier
    neighbours, 0 if there is none."""
    p = 0
    for i, c in enumerate(earlier_neighbour_counts(graph, ordering), 1):
        if c == d:
            p = i
    return p


def compute_vstar(graph: Graph, d: int, within: Iterable[int] | None = None) -> frozenset[int]:
    """``V*`` of the d-degenerate graph ``G[within]``, realised as its d-core."""
    verts = _vertex_set(graph, within)
    if not is_degenerate(graph, d, verts):
        raise ValueError(f"compute_vstar requires a {d}-degenerate graph")
    return core(graph, d, verts)


def assemble_min_p_ordering(graph: Graph, d: int, within: Iterable[int] | None = None) -> DegeneracyCertificate:
    """Degeneracy ordering whose prefix ``v_1..v_p`` is exactly ``V*``.

    The d-core comes first, ordered by :func:`peel_order`, followed by the
    remaining vertices in reverse order of their deletion at threshold d-1.
    """
    verts = _vertex_set(graph, within)
    vstar = compute_vstar(graph, d, verts)
    head = peel_order(graph, d, vstar)
    # Vertices outside the core peel at threshold d-1; lowest id first.
    rest = set(verts) - vstar
    alive = set(verts)
    deg = {v: graph.degree(v, alive) for v in rest}
    heap = [v for v in rest if deg[v] <= d - 1]
    heapq.heapify(heap)
    tail: list[int] = []
    while heap:
        v = heapq.heappop(heap)
        if v not in alive:
            continue
        alive.discard(v)
        tail.append(v)
        for u in graph.adjacency[v]:
            if u in alive and u in rest:
                deg[u] -= 1
                if deg[u] == d - 1:
                    heapq.heappush(heap, u)
    assert len(tail) == len(rest)
    tail.reverse()
    return DegeneracyCertificate(tuple(head + tail), d, len(vstar), vstar)

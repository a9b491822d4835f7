"""Independent brute-force references used by the tests."""

from __future__ import annotations

import itertools
from functools import lru_cache

from eqcolour.graph import Graph


def _masks(g: Graph) -> list[int]:
    return [sum(1 << u for u in g.neighbours(v)) for v in range(g.n)]


def is_degenerate_brute(g: Graph, d: int, verts) -> bool:
    """Every non-empty subset has a vertex of degree <= d inside it."""
    verts = sorted(verts)
    nbr = _masks(g)
    for r in range(1, len(verts) + 1):
        for sub in itertools.combinations(verts, r):
            mask = sum(1 << v for v in sub)
            if min(bin(nbr[v] & mask).count("1") for v in sub) > d:
                return False
    return True


def minimal_prefix_sets(g: Graph, d: int) -> tuple[int, set[frozenset[int]]]:
    """Minimum p over all degeneracy orderings and every prefix set achieving it.

    Exhaustive over orderings: a prefix is characterised by its vertex set,
    since a vertex's earlier-neighbour count only depends on the set placed
    before it. Returns ``(-1, set())`` if ``g`` is not d-degenerate.
    """
    n = g.n
    nbr = _masks(g)
    full = (1 << n) - 1

    def count(v: int, s: int) -> int:
        return bin(nbr[v] & s).count("1")

    @lru_cache(maxsize=None)
    def reachable(s: int) -> bool:
        # some ordering of s has every vertex with <= d earlier neighbours
        if s == 0:
            return True
        return any(s >> v & 1 and count(v, s & ~(1 << v)) <= d and reachable(s & ~(1 << v)) for v in range(n))

    @lru_cache(maxsize=None)
    def ends_exact(s: int) -> bool:
        # ... and the last one has exactly d
        return any(s >> v & 1 and count(v, s & ~(1 << v)) == d and reachable(s & ~(1 << v)) for v in range(n))

    @lru_cache(maxsize=None)
    def extendable(s: int) -> bool:
        # the rest can follow with <= d-1 earlier neighbours each
        if s == full:
            return True
        return any(not s >> v & 1 and count(v, s) <= d - 1 and extendable(s | 1 << v) for v in range(n))

    if not reachable(full):
        return -1, set()
    prefixes = [s for s in range(full + 1) if (s == 0 or ends_exact(s)) and extendable(s)]
    p = min(bin(s).count("1") for s in prefixes)
    return p, {frozenset(v for v in range(n) if s >> v & 1) for s in prefixes if bin(s).count("1") == p}


def prefix_by_orderings(g: Graph, d: int) -> tuple[int, set[frozenset[int]]]:
    """Same as :func:`minimal_prefix_sets` by listing all n! orderings."""
    best, sets = None, set()
    for order in itertools.permutations(range(g.n)):
        seen: set[int] = set()
        p = 0
        ok = True
        for i, v in enumerate(order, 1):
            c = g.degree(v, seen)
            if c > d:
                ok = False
                break
            if c == d:
                p = i
            seen.add(v)
        if not ok:
            continue
        if best is None or p < best:
            best, sets = p, set()
        if p == best:
            sets.add(frozenset(order[:p]))
    return (-1, set()) if best is None else (best, sets)


def equitable_feasible_brute(g: Graph, d: int, k: int) -> bool:
    """Try every assignment of vertices to k classes."""
    for assignment in itertools.product(range(k), repeat=g.n):
        sizes = [assignment.count(i) for i in range(k)]
        if max(sizes) - min(sizes) > 1:
            continue
        if all(is_degenerate_brute(g, d, [v for v in range(g.n) if assignment[v] == i]) for i in range(k)):
            return True
    return False

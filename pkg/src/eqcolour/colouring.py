"""Colourings as persistent values, validity checks and size classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Sequence

from .degeneracy import is_degenerate
from .graph import Graph


class ColouringInputError(ValueError):
    pass


@dataclass(frozen=True)
class Colouring:
    """Vertex -> class map with stable class ids ``0..k-1``.

    Class ids never change; :attr:`sorted_classes` is the view ordered by
    size (then id), so ``sorted_classes[0]`` plays the role of the smallest
    class and ``sorted_classes[-1]`` the largest.
    """

    k: int
    assignment: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ColouringInputError(f"need at least one class, got k={self.k}")
        for v, c in enumerate(self.assignment):
            if not 0 <= c < self.k:
                raise ColouringInputError(f"vertex {v} has class {c} outside [0, {self.k})")

    @classmethod
    def from_classes(cls, n: int, classes: Sequence[Iterable[int]]) -> Colouring:
        assignment = [-1] * n
        for i, members in enumerate(classes):
            for v in members:
                if assignment[v] != -1:
                    raise ColouringInputError(f"vertex {v} listed in two classes")
                assignment[v] = i
        if -1 in assignment:
            raise ColouringInputError(f"vertex {assignment.index(-1)} is uncoloured")
        return cls(len(classes), tuple(assignment))

    @property
    def n(self) -> int:
        return len(self.assignment)

    @cached_property
    def classes(self) -> tuple[frozenset[int], ...]:
        members: list[list[int]] = [[] for _ in range(self.k)]
        for v, c in enumerate(self.assignment):
            members[c].append(v)
        return tuple(frozenset(m) for m in members)

    @cached_property
    def sizes(self) -> tuple[int, ...]:
        counts = [0] * self.k
        for c in self.assignment:
            counts[c] += 1
        return tuple(counts)

    @cached_property
    def sorted_classes(self) -> tuple[int, ...]:
        return tuple(sorted(range(self.k), key=lambda i: (self.sizes[i], i)))

    @property
    def sorted_sizes(self) -> tuple[int, ...]:
        return tuple(self.sizes[i] for i in self.sorted_classes)

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]


def balanced_colouring(n: int, k: int, order: Sequence[int] | None = None) -> Colouring:
    """Round-robin partition of ``order`` (default ``0..n-1``) into k classes."""
    order = range(n) if order is None else order
    assignment = [0] * n
    for i, v in enumerate(order):
        assignment[v] = i % k
    return Colouring(k, tuple(assignment))


def apply_move(c: Colouring, v: int, to: int) -> Colouring:
    if not 0 <= to < c.k:
        raise ColouringInputError(f"class {to} outside [0, {c.k})")
    if c.assignment[v] == to:
        raise ColouringInputError(f"vertex {v} is already in class {to}")
    assignment = list(c.assignment)
    assignment[v] = to
    return Colouring(c.k, tuple(assignment))


def apply_moves(c: Colouring, moves: Iterable[tuple[int, int]]) -> Colouring:
    """Reassign several vertices at once; ``moves`` holds ``(vertex, class)``."""
    assignment = list(c.assignment)
    for v, to in moves:
        assignment[v] = to
    return Colouring(c.k, tuple(assignment))


def diff(before: Colouring, after: Colouring) -> list[tuple[int, int, int]]:
    """``(vertex, old class, new class)`` for every vertex that changed."""
    return [
        (v, a, b)
        for v, (a, b) in enumerate(zip(before.assignment, after.assignment))
        if a != b
    ]


@dataclass(frozen=True)
class VerifyReport:
    valid: bool
    failing_classes: tuple[int, ...]


def _check_shape(graph: Graph, c: Colouring) -> None:
    if c.n != graph.n:
        raise ColouringInputError(f"assignment covers {c.n} vertices, graph has {graph.n}")


def verify_colouring(graph: Graph, c: Colouring, d: int, k: int | None = None) -> VerifyReport:
    """Every class must induce a d-degenerate subgraph."""
    _check_shape(graph, c)
    if k is not None and k != c.k:
        raise ColouringInputError(f"expected {k} classes, colouring has {c.k}")
    failing = tuple(i for i, members in enumerate(c.classes) if not is_degenerate(graph, d, members))
    return VerifyReport(not failing, failing)


class Balance(enum.Enum):
    EQUITABLE = "equitable"
    NEAR_EQUITABLE = "near_equitable"
    OTHER_VALID = "other_valid"
    INVALID = "invalid"


def classify(sizes: Sequence[int], n: int | None = None, k: int | None = None) -> Balance:
    """Classify class sizes as equitable, near-equitable or neither.

    Near-equitable: with sizes sorted ``s_1 <= ... <= s_k``, ``f = n // k`` and
    ``c = ceil(n / k)``::

        f - 1 <= s_1 <= f <= s_2 <= ... <= s_{k-1} <= c <= s_k <= c + 1
        2 <= s_k - s_1 <= 3
    """
    sizes = sorted(sizes)
    n = sum(sizes) if n is None else n
    k = len(sizes) if k is None else k
    if sum(sizes) != n or len(sizes) != k:
        raise ColouringInputError("sizes do not match n and k")
    if sizes[-1] - sizes[0] <= 1:
        return Balance.EQUITABLE
    f, c = n // k, -(-n // k)
    envelope = (
        f - 1 <= sizes[0] <= f
        and all(f <= s <= c for s in sizes[1:-1])
        and c <= sizes[-1] <= c + 1
    )
    if envelope and 2 <= sizes[-1] - sizes[0] <= 3 and k >= 2:
        return Balance.NEAR_EQUITABLE
    return Balance.OTHER_VALID


def classify_colouring(graph: Graph, c: Colouring, d: int) -> Balance:
    if not verify_colouring(graph, c, d).valid:
        return Balance.INVALID
    return classify(c.sizes, c.n, c.k)


def colouring_document(graph: Graph, c: Colouring, d: int) -> dict[str, Any]:
    report = verify_colouring(graph, c, d)
    return {
        "k": c.k,
        "d": d,
        "assignment": list(c.assignment),
        "class_sizes": list(c.sizes),
        "valid": report.valid,
    }


def colouring_from_document(doc: dict[str, Any]) -> Colouring:
    try:
        k = int(doc["k"])
        assignment = tuple(int(x) for x in doc["assignment"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ColouringInputError(f"malformed colouring document: {exc}") from None
    return Colouring(k, assignment)

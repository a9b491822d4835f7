"""Equitable d-degenerate colourings of bounded-degree graphs."""

from .colouring import Balance, Colouring, classify, verify_colouring
from .degeneracy import compute_vstar, core, is_degenerate, peel_order
from .graph import Graph, GraphInputError, build_graph, parse_dimacs, serialize_dimacs
from .oracle import oracle_find, random_bounded_degree_graph, scan_conjecture
from .solver import OutcomeKind, SolveConfig, SolveOutcome, solve

__all__ = [
    "Balance",
    "Colouring",
    "Graph",
    "GraphInputError",
    "OutcomeKind",
    "SolveConfig",
    "SolveOutcome",
    "build_graph",
    "classify",
    "compute_vstar",
    "core",
    "is_degenerate",
    "oracle_find",
    "parse_dimacs",
    "peel_order",
    "random_bounded_degree_graph",
    "scan_conjecture",
    "serialize_dimacs",
    "solve",
    "verify_colouring",
]

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqcolour.colouring import Balance, classify, verify_colouring
from eqcolour.graph import build_graph, complete_bipartite, complete_graph, cycle_graph, parse_dimacs, petersen_graph
from eqcolour.oracle import (
    conjecture_k_range,
    labelled_graphs,
    oracle_find,
    random_bounded_degree_graph,
    scan_conjecture,
)

from brute import equitable_feasible_brute
from conftest import graphs


@pytest.mark.parametrize(
    "graph, d, k, feasible",
    [
        (complete_bipartite(3, 3), 0, 3, False),
        (complete_bipartite(3, 3), 0, 2, True),
        (complete_graph(5), 1, 2, False),
        (complete_graph(5), 1, 3, True),
        (cycle_graph(5), 1, 1, False),
        (petersen_graph(), 1, 3, True),
        (build_graph(0, []), 1, 2, True),
    ],
)
def test_named_verdicts(graph, d, k, feasible):
    verdict = oracle_find(graph, d, k)
    assert verdict.feasible is feasible
    assert (verdict.witness is not None) is feasible


def test_rejects_zero_classes():
    with pytest.raises(ValueError):
        oracle_find(build_graph(1, []), 0, 0)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=6), st.integers(0, 2), st.integers(1, 3))
def test_agrees_with_assignment_enumeration(g, d, k):
    verdict = oracle_find(g, d, k)
    assert verdict.feasible == equitable_feasible_brute(g, d, k)
    if verdict.feasible:
        assert verify_colouring(g, verdict.witness, d).valid
        assert classify(verdict.witness.sizes) is Balance.EQUITABLE


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=8), st.integers(0, 2), st.integers(1, 4))
def test_feasibility_is_monotone_in_d(g, d, k):
    if oracle_find(g, d, k).feasible:
        assert oracle_find(g, d + 1, k).feasible


def test_complete_graph_tightness():
    # Delta = 4, d = 1: two forest classes of K_5 are impossible, three suffice
    assert conjecture_k_range("edc", 4, 1)[0] == 3
    assert not oracle_find(complete_graph(5), 1, 2).feasible
    assert oracle_find(complete_graph(5), 1, 3).feasible


def test_generator_contract():
    assert random_bounded_degree_graph(10, 0, 1.0, 5).m == 0
    a = random_bounded_degree_graph(300, 3, 0.9, 42)
    assert a == random_bounded_degree_graph(300, 3, 0.9, 42)
    assert a.max_degree <= 3
    with pytest.raises(ValueError):
        random_bounded_degree_graph(3, -1, 0.5, 0)


def test_labelled_graph_count():
    assert sum(1 for _ in labelled_graphs(4)) == 64


def test_k_ranges():
    assert list(conjecture_k_range("evac", 4, 99)) == [3, 4, 5]
    assert list(conjecture_k_range("edc", 5, 2)) == [2, 3, 4, 5, 6]
    assert list(conjecture_k_range("edc", 0, 0)) == [1]
    with pytest.raises(ValueError):
        conjecture_k_range("nope", 1, 1)


def test_scan_trivial_and_small():
    assert scan_conjecture("evac", 1).clean
    report = scan_conjecture("evac", 4)
    assert report.clean and report.graphs_checked == 1 + 2 + 8 + 64
    doc = report.to_json()
    assert doc["n_range"] == [1, 4] and doc["counterexamples"] == []


def test_edc_lower_bound_scan_small():
    report = scan_conjecture("edc", 5, d_values=(0, 1, 2))
    assert report.clean


def test_scan_sampling_is_seeded_and_parallel_safe():
    a = scan_conjecture("edc", 8, mode="sample:30", d_values=(0,), seed=3, top_k_only=True)
    b = scan_conjecture("edc", 8, mode="sample:30", d_values=(0,), seed=3, top_k_only=True, jobs=2)
    assert a.to_json() == b.to_json() and a.clean


def test_scan_rejects_bad_arguments():
    with pytest.raises(ValueError):
        scan_conjecture("evac", 8)
    with pytest.raises(ValueError):
        scan_conjecture("evac", 3, mode="sample:x")
    with pytest.raises(ValueError):
        scan_conjecture("other", 3)


def test_counterexamples_embed_dimacs(monkeypatch):
    from eqcolour import oracle

    monkeypatch.setattr(oracle, "conjecture_k_range", lambda conj, delta, d: range(1, 2))
    report = oracle.scan_conjecture("edc", 2, d_values=(0,))
    # K_2 with one class is the only failure
    assert [cx["graph"] for cx in report.counterexamples] == ["p edge 2 1\ne 1 2\n"]
    assert parse_dimacs(report.counterexamples[0]["graph"]).m == 1

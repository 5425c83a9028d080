"""
Tests of book sizes, induced subgraph counts and the C4 counting lemma in bookram.metrics
"""

from fractions import Fraction
from itertools import combinations

import pytest
from pytest import raises

from bookram.graph import Graph, VertexSet
from bookram.metrics import (
    SubgraphCensus,
    book_size,
    book_witness,
    c4_max_bound,
    census,
    census_bruteforce,
    claim2_estimate,
    count_h,
    count_induced_c4,
    induced_c4s,
    lemma1_chain,
    lemma1_check,
    lemma1_rhs,
    lemma1_threshold,
)
from bookram.srg import paley
from bookram.utils import (
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    random_graph,
)


def all_graphs(order):
    pairs = list(combinations(range(order), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(order, (p for i, p in enumerate(pairs) if mask >> i & 1))


@pytest.mark.parametrize("n", [2, 3, 6, 9])
def test_book_size_complete(n):
    assert book_size(complete_graph(n)) == n - 2


def test_book_size(c5, paley9):
    assert book_size(c5) == 0
    assert book_size(paley9) == 1
    assert book_size(paley(13)) == 2
    assert book_size(empty_graph(4)) is None
    assert book_size(empty_graph(0)) is None


def test_book_witness():
    spine, pages = book_witness(complete_graph(5))
    assert spine == (0, 1)
    assert pages == VertexSet.from_vertices(5, [2, 3, 4])
    assert book_witness(cycle_graph(4)) == ((0, 1), VertexSet(4))
    assert book_witness(empty_graph(3)) is None


@pytest.mark.parametrize(
    ("g", "expected"),
    [
        (cycle_graph(4), {"c4": 1, "k4": 0, "b2": 0, "pair_sum": 2, "edge_sum": 0}),
        (complete_graph(4), {"c4": 0, "k4": 1, "b2": 0, "pair_sum": 6, "edge_sum": 6}),
        (complete_bipartite_graph(3, 3), {"c4": 9, "k4": 0, "b2": 0}),
        (Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]), {"c4": 0, "k4": 0, "b2": 1}),
    ],
)
def test_census_examples(g, expected):
    counts = census(g)
    for key, value in expected.items():
        assert getattr(counts, key) == value
    assert counts.residual == 0


def test_census_petersen(petersen):
    counts = census(petersen)
    assert counts.c4 == 0
    assert counts.k4 == 0
    assert counts.h == 0


def test_count_h():
    assert count_h(disjoint_union(cycle_graph(4), empty_graph(1))) == 1
    assert count_h(cycle_graph(4)) == 0
    assert count_h(disjoint_union(cycle_graph(4), empty_graph(3))) == 3


def test_induced_c4s_orientation():
    assert list(induced_c4s(cycle_graph(4))) == [(0, 1, 2, 3)]
    for u, v, w, z in induced_c4s(complete_bipartite_graph(3, 4)):
        assert u < v < z
        assert u < w


def test_identity_on_all_order_5_graphs():
    for g in all_graphs(5):
        counts = census(g)
        assert counts.residual == 0
        assert counts.identity_residuals() == {"pair_sum": 0, "edge_sum": 0, "c4": 0}


def test_census_matches_bruteforce():
    for seed in range(40):
        order = 4 + seed % 6
        g = random_graph(order, 0.2 + (seed % 7) / 10, seed=seed)
        assert census(g) == census_bruteforce(g)


@pytest.mark.slow
def test_identity_on_random_graphs():
    for seed in range(1000):
        order = 8 + seed % 25
        g = random_graph(order, 0.1 + (seed % 9) / 10, seed=1000 + seed)
        counts = census(g)
        assert counts.residual == 0
        assert counts.c4 == count_induced_c4(g)
        assert set(counts.identity_residuals().values()) == {0}


def test_c4_max_bound():
    assert c4_max_bound(6) == 9
    assert c4_max_bound(4) == 1
    assert c4_max_bound(3) == 0
    assert c4_max_bound(7) == 3 * 6
    with raises(ValueError):
        c4_max_bound(-1)


@pytest.mark.slow
def test_c4_extremal_order_6():
    best = max(census(g).c4 for g in all_graphs(6))
    assert best == c4_max_bound(6)
    assert census(complete_bipartite_graph(3, 3)).c4 == best


def test_lemma1_threshold():
    assert lemma1_threshold(Fraction(1, 11)) == 715
    assert lemma1_threshold("1/2") == 40
    with raises(ValueError, match="strictly between"):
        lemma1_threshold(1)
    with raises(ValueError, match="strictly between"):
        lemma1_threshold(0)
    with raises(TypeError):
        lemma1_threshold(0.5)


def test_lemma1_rhs():
    assert lemma1_rhs(100, 0, "1/2", 3) == 0
    assert lemma1_rhs(100, 2500, "1/2", 0) == 625000
    expected = (Fraction(110**2, 5 * 1331) - Fraction(1, 2)) * 605
    assert lemma1_rhs(110, 605, Fraction(1, 11), 1) == expected
    with raises(ValueError, match="nonnegative"):
        lemma1_rhs(-1, 0, "1/2", 0)


def test_lemma1_chain():
    chain = lemma1_chain(100, 2500, "1/2")
    assert chain["x"] == 2500 * 49
    assert chain["chain"] == Fraction(2500 * 49 * (Fraction(49, 2) - 1), 2)
    assert chain["final"] == Fraction(2, 8 * 5) * 100**2 * 2500
    assert chain["note_condition"] is True
    assert chain["chain"] > chain["final"]
    assert lemma1_chain(40, 10, "1/2")["note_condition"] is True
    assert lemma1_chain(39, 10, "1/2")["note_condition"] is False


def test_lemma1_hypotheses_unmet(c5):
    verdict = lemma1_check(c5, "1/2")
    assert not verdict.hypotheses_met
    assert verdict.failed_hypothesis == "min_degree"
    assert verdict.holds is None
    verdict = lemma1_check(complete_bipartite_graph(20, 20), "1/2")
    assert verdict.failed_hypothesis == "order_threshold"


def test_lemma1_complete_bipartite():
    verdict = lemma1_check(complete_bipartite_graph(21, 21), Fraction(1, 2))
    assert verdict.hypotheses_met
    assert verdict.m == 0
    assert verdict.c4 == 210**2
    assert verdict.holds is True
    assert verdict.bound == "194481/10"
    record = verdict.as_record()
    assert record["lambda"] == "1/2"
    assert record["chain"]["pair_sum_exceeds_chain"] is True


@pytest.mark.slow
def test_lemma1_random():
    k22 = complete_bipartite_graph(22, 22)
    for seed in range(100):
        dense = random_graph(44, 0.1 + (seed % 5) / 10, seed=seed)
        g = Graph(44, [a | b for a, b in zip(dense.rows, k22.rows, strict=True)])
        verdict = lemma1_check(g, "1/2")
        assert verdict.hypotheses_met
        assert verdict.m == book_size(g)
        assert verdict.holds is True


def test_lemma1_violation_raises(monkeypatch):
    monkeypatch.setattr("bookram.metrics.lemma1_threshold", lambda lam: 0)
    # K_{2,2} has one induced C4, below the bound once the order hypothesis is bypassed
    with raises(RuntimeError, match="Counting lemma violated"):
        lemma1_check(complete_bipartite_graph(2, 2), "1/2")


def test_census_residual_raises(monkeypatch):
    monkeypatch.setattr("bookram.metrics.count_induced_c4", lambda g: 7)
    with raises(RuntimeError, match="Counting identity residual 6"):
        census(cycle_graph(4))


def test_claim2_estimate():
    n = 20 * 10**6
    p = Fraction(11 * n, 20)
    m = Fraction(n, 10**6)
    expected = (Fraction(1, 5 * 11**3) * p**2 - m**2 / 2) * Fraction(1, 2) * p * Fraction(n, 20)
    assert claim2_estimate(n) == expected
    assert claim2_estimate(n, 0) > claim2_estimate(n)
    # leading term n^4 / 1600000
    assert abs(claim2_estimate(n) / Fraction(n**4, 1600000) - 1) < Fraction(1, 1000)
    # the rounded n^4 / 640000 overstates it
    assert claim2_estimate(n) < Fraction(n**4, 640000)


def test_census_record():
    counts = census(cycle_graph(4))
    assert isinstance(counts, SubgraphCensus)
    assert counts.as_record() == {"c4": 1, "k4": 0, "b2": 0, "h": 0, "pair_sum": 2, "edge_sum": 0, "residual": 0}

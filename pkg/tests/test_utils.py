"""
Tests of bookram.utils module

"""

from fractions import Fraction

from pytest import raises

from bookram.graph import to_graph6
from bookram.metrics import book_size
from bookram.srg import verify_srg
from bookram.utils import (
    DATA_ENV_VAR,
    as_fraction,
    blowup,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    data_dir,
    disjoint_union,
    kneser_graph,
    path_graph,
    petersen_graph,
    random_graph,
    rook_graph,
)


def test_as_fraction():
    assert as_fraction("1/2") == Fraction(1, 2)
    assert as_fraction(3) == Fraction(3)
    assert as_fraction(Fraction(2, 6)) == Fraction(1, 3)
    with raises(TypeError, match="exact rational"):
        as_fraction(0.5)
    with raises(ValueError):
        as_fraction("half")


def test_data_dir(monkeypatch, tmp_path):
    monkeypatch.delenv(DATA_ENV_VAR, raising=False)
    assert (data_dir() / "srg_15_6_1_3.g6").exists()
    monkeypatch.setenv(DATA_ENV_VAR, str(tmp_path))
    assert data_dir() == tmp_path


def test_named_graphs():
    assert complete_graph(5).edge_count == 10
    assert cycle_graph(6).degrees() == [2] * 6
    assert path_graph(4).edges() == [(0, 1), (1, 2), (2, 3)]
    assert complete_bipartite_graph(2, 3).edges() == [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]
    p = petersen_graph()
    assert p.order == 10
    assert p.degrees() == [3] * 10
    with raises(ValueError, match="at least 3"):
        cycle_graph(2)


def test_srg_families():
    assert verify_srg(rook_graph(4)).as_tuple() == (16, 6, 2, 2)
    assert verify_srg(kneser_graph(6)).as_tuple() == (15, 6, 1, 3)
    assert verify_srg(kneser_graph(7)).as_tuple() == (21, 10, 3, 6)
    # K(5, 2) is the Petersen graph
    assert verify_srg(kneser_graph(5)).as_tuple() == (10, 3, 0, 1)


def test_disjoint_union():
    g = disjoint_union(complete_graph(3), complete_graph(2))
    assert g.order == 5
    assert g.edges() == [(0, 1), (0, 2), (1, 2), (3, 4)]
    assert book_size(g) == 1


def test_blowup():
    assert blowup(complete_graph(2), [3, 4]) == complete_bipartite_graph(3, 4)
    g = blowup(cycle_graph(5), [2, 2, 2, 2, 2])
    assert g.order == 10
    assert g.edge_count == 5 * 4
    assert g.min_degree() == 4
    assert book_size(g) == 0
    assert blowup(cycle_graph(5), [1] * 5) == cycle_graph(5)
    assert blowup(complete_graph(3), [0, 2, 1]).edges() == [(0, 2), (1, 2)]
    with raises(ValueError, match="one size per vertex"):
        blowup(cycle_graph(5), [1, 1])
    with raises(ValueError, match="nonnegative"):
        blowup(complete_graph(2), [1, -1])


def test_random_graph_is_seeded():
    g = random_graph(20, 0.5, seed=42)
    assert to_graph6(g) == to_graph6(random_graph(20, 0.5, seed=42))
    assert random_graph(20, 0.0, seed=1).edge_count == 0
    assert random_graph(20, 1.0, seed=1) == complete_graph(20)

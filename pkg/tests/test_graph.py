"""
Tests of the bookram.graph module
"""

import numpy as np
import pytest
from pytest import raises

from bookram.graph import (
    Graph,
    VertexSet,
    common_neighbors,
    complement,
    edges_between,
    has_clique,
    has_triangle,
    induced_subgraph,
    is_bipartite,
    iter_bits,
)
from bookram.utils import (
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    random_graph,
)


def test_iter_bits():
    assert list(iter_bits(0)) == []
    assert list(iter_bits(0b101101)) == [0, 2, 3, 5]


def test_vertex_set():
    a = VertexSet.from_vertices(6, [0, 2, 4])
    b = VertexSet.from_vertices(6, [2, 3])
    assert len(a) == 3
    assert 2 in a
    assert 1 not in a
    assert 7 not in a
    assert (a | b).to_list() == [0, 2, 3, 4]
    assert (a & b).to_list() == [2]
    assert (a - b).to_list() == [0, 4]
    assert a.complement().to_list() == [1, 3, 5]
    assert not a.isdisjoint(b)
    assert VertexSet.full(4).to_list() == [0, 1, 2, 3]
    with raises(ValueError, match="out of range"):
        VertexSet.from_vertices(3, [3])
    with raises(ValueError, match="outside"):
        VertexSet(3, 0b1000)
    with raises(ValueError, match="Cannot combine"):
        a | VertexSet(5)


def test_graph_validation():
    with raises(ValueError, match="not symmetric"):
        Graph(2, [0b10, 0])
    with raises(ValueError, match="adjacent to itself"):
        Graph(1, [0b1])
    with raises(ValueError, match="rows"):
        Graph(3, [0, 0])
    with raises(ValueError, match="Loop"):
        Graph.from_edges(3, [(1, 1)])
    with raises(ValueError, match="out of range"):
        Graph.from_edges(3, [(0, 3)])


def test_graph_basics(c5):
    assert c5.order == 5
    assert c5.edge_count == 5
    assert c5.degrees() == [2] * 5
    assert c5.edges() == [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
    assert c5.neighbors(0).to_list() == [1, 4]
    assert c5.has_edge(4, 0)
    assert not c5.has_edge(0, 2)
    assert empty_graph(0).min_degree() == 0


def test_graph_equality_and_hash():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    h = Graph.from_edges(4, [(3, 2), (1, 0)])
    assert g == h
    assert hash(g) == hash(h)
    assert g != Graph.from_edges(4, [(0, 2), (1, 3)])
    assert len({g, h}) == 1


def test_adjacency_matrix():
    g = random_graph(13, 0.4, seed=7)
    a = g.adjacency
    assert a.shape == (13, 13)
    assert (a == a.T).all()
    assert not a.diagonal().any()
    assert not a.flags.writeable
    assert Graph.from_adjacency(a) == g
    assert int(a.sum()) == 2 * g.edge_count
    with raises(ValueError, match="square"):
        Graph.from_adjacency(np.zeros((2, 3)))


def test_complement():
    assert complement(complete_graph(5)) == empty_graph(5)
    assert complement(complement(cycle_graph(7))) == cycle_graph(7)
    # C_5 is self-complementary but not with the identity labelling
    assert complement(cycle_graph(5)).edge_count == 5


def test_common_neighbors(paley9):
    k4 = complete_graph(4)
    assert all(common_neighbors(k4, u, v) == 2 for u in range(4) for v in range(4) if u != v)
    c4 = cycle_graph(4)
    assert common_neighbors(c4, 0, 2) == 2
    assert common_neighbors(c4, 0, 1) == 0
    assert {common_neighbors(paley9, u, v) for u, v in paley9.edges()} == {1}
    with raises(ValueError, match="distinct"):
        common_neighbors(c4, 1, 1)
    with raises(ValueError, match="out of range"):
        common_neighbors(c4, 0, 4)


def test_induced_subgraph():
    k5 = complete_graph(5)
    assert induced_subgraph(k5, VertexSet.from_vertices(5, [0, 2, 4])) == complete_graph(3)
    c6 = cycle_graph(6)
    assert induced_subgraph(c6, VertexSet.from_vertices(6, [0, 2, 4])) == empty_graph(3)
    # relabelling follows the increasing order of the vertex set
    p = induced_subgraph(c6, VertexSet.from_vertices(6, [1, 2, 3]))
    assert p == path_graph(3)


def test_edges_between(k33):
    left = VertexSet.from_vertices(6, [0, 1, 2])
    right = left.complement()
    assert edges_between(k33, left, right) == 9
    assert edges_between(k33, left, VertexSet(6)) == 0
    assert edges_between(k33, VertexSet(6), right) == 0
    with raises(ValueError, match="disjoint"):
        edges_between(k33, left, VertexSet.from_vertices(6, [2, 3]))


def test_is_bipartite(c5, k33, petersen):
    sides = is_bipartite(cycle_graph(4))
    assert sides is not None
    assert [s.to_list() for s in sides] == [[0, 2], [1, 3]]
    a, b = is_bipartite(k33)
    assert {len(a), len(b)} == {3}
    assert is_bipartite(c5) is None
    assert is_bipartite(petersen) is None
    assert is_bipartite(empty_graph(3)) is not None


def test_has_triangle(petersen):
    assert has_triangle(complete_graph(3)) == (0, 1, 2)
    assert has_triangle(petersen) is None
    assert has_triangle(complete_bipartite_graph(4, 7)) is None
    g = Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5), (3, 5), (0, 2)])
    assert has_triangle(g) == (0, 1, 2)


@pytest.mark.parametrize(("r", "expected"), [(0, ()), (1, (0,)), (2, (0, 1)), (4, (0, 1, 2, 3)), (5, None)])
def test_has_clique(r, expected):
    assert has_clique(complete_graph(4), r) == expected


def test_has_clique_paley13():
    from bookram.srg import paley

    g = paley(13)
    assert has_clique(g, 3) is not None
    clique = has_clique(g, 3)
    assert all(g.has_edge(u, v) for u in clique for v in clique if u != v)


def has_odd_closed_walk(g):
    """Reference check: some odd power of A up to the order has a nonzero diagonal."""
    a = g.adjacency.astype(np.int64)
    walk = a.copy()
    for _ in range(1, g.order, 2):
        if np.trace(walk):
            return True
        walk = np.minimum(walk @ a @ a, 1)
    return bool(np.trace(walk))


def random_corpus(count, max_order):
    for seed in range(count):
        order = 1 + seed % max_order
        yield random_graph(order, 0.05 + (seed % 10) / 10, seed=seed)


def test_degree_sum_is_twice_edge_count():
    for g in random_corpus(200, 30):
        assert sum(g.degrees()) == 2 * len(g.edges())
        assert int(g.adjacency.sum()) == 2 * g.edge_count


def test_common_neighbours_partition_the_rest():
    for g in random_corpus(100, 16):
        if g.order < 2:
            continue
        gc = complement(g)
        for u in range(g.order):
            for v in range(u + 1, g.order):
                exclusive = (g.rows[u] ^ g.rows[v]) & ~(1 << u) & ~(1 << v)
                total = common_neighbors(g, u, v) + common_neighbors(gc, u, v) + exclusive.bit_count()
                assert total == g.order - 2


def test_is_bipartite_matches_odd_cycle_search():
    seen = set()
    for g in random_corpus(300, 12):
        sides = is_bipartite(g)
        assert (sides is None) == has_odd_closed_walk(g)
        seen.add(sides is None)
        if sides is not None:
            a, b = sides
            assert a.isdisjoint(b)
            assert len(a) + len(b) == g.order
            assert all(not (g.rows[u] & side.bits) for side in sides for u in side)
    assert seen == {True, False}

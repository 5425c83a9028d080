"""
bookram utilities

Named graph families, seeded random graphs, exact-arithmetic helpers and
lookup of the witness data directory.

:copyright: 2024 by the bookram developers
:license: LGPL, see LICENSE for more details.

"""

from __future__ import annotations

import logging
import os
from fractions import Fraction
from importlib.resources import files
from itertools import combinations
from pathlib import Path

import numpy as np

from bookram.graph import Graph

logger = logging.getLogger(__name__)

DATA_ENV_VAR = "BOOKRAM_DATA"


def data_dir() -> Path:
    """
    Return the directory holding witness graph6 files.

    The environment variable ``BOOKRAM_DATA`` overrides the packaged ``bookram/data`` directory.
    """
    override = os.environ.get(DATA_ENV_VAR)
    if override:
        return Path(override)
    return Path(str(files("bookram") / "data"))


def as_fraction(value: int | str | Fraction) -> Fraction:
    """
    Interpret ``value`` as an exact rational.

    Floats are refused because every threshold in this package is compared exactly.

    Raises:
        TypeError if value is a float.
    """
    if isinstance(value, float):
        raise TypeError(f"Use an exact rational such as Fraction(1, 2) or '1/2' instead of the float {value}")
    return Fraction(value)


def fraction_str(value: Fraction | int) -> str:
    """Format a rational as ``p/q`` (or ``p`` when integral) for JSON output."""
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << v) for v in range(n)])


def empty_graph(n: int) -> Graph:
    return Graph(n, [0] * n)


def cycle_graph(n: int) -> Graph:
    """Return C_n on vertices 0..n-1 in cyclic order (n >= 3)."""
    if n < 3:
        raise ValueError(f"A cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    """Return K_{a,b} with parts 0..a-1 and a..a+b-1."""
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def rook_graph(n: int) -> Graph:
    """
    Return the n x n rook's graph L(K_{n,n}).

    Vertex ``n*r + c`` is the square in row r and column c; two squares are adjacent
    when they share a row or a column. For n = 4 this is a (16,6,2,2) strongly
    regular graph.
    """
    cells = [(r, c) for r in range(n) for c in range(n)]
    edges = [
        (i, j)
        for (i, (r1, c1)), (j, (r2, c2)) in combinations(enumerate(cells), 2)
        if r1 == r2 or c1 == c2
    ]
    return Graph.from_edges(n * n, edges)


def kneser_graph(n: int, k: int = 2) -> Graph:
    """
    Return the Kneser graph K(n, k).

    Vertices are the k-subsets of {0..n-1} in lexicographic order, adjacent when
    disjoint. K(n, 2) is the complement of the triangular graph T(n); K(6, 2) is
    (15,6,1,3) and K(7, 2) is (21,10,3,6).
    """
    subsets = [frozenset(s) for s in combinations(range(n), k)]
    edges = [(i, j) for (i, a), (j, b) in combinations(enumerate(subsets), 2) if not a & b]
    return Graph.from_edges(len(subsets), edges)


def disjoint_union(*graphs: Graph) -> Graph:
    """Return the disjoint union, relabelling each graph after the previous ones."""
    rows: list[int] = []
    offset = 0
    for g in graphs:
        rows.extend(row << offset for row in g.rows)
        offset += g.order
    return Graph(offset, rows)


def blowup(g: Graph, sizes: list[int]) -> Graph:
    """
    Replace vertex i of g by an independent set of sizes[i] vertices.

    Copies of u and v are adjacent exactly when uv is an edge of g, so the balanced
    blowup of C_5 is triangle-free, not bipartite and has minimum degree 2n/5.
    """
    if len(sizes) != g.order:
        raise ValueError(f"Need one size per vertex: {g.order} vertices, {len(sizes)} sizes")
    if any(s < 0 for s in sizes):
        raise ValueError(f"Blowup sizes must be nonnegative, got {sizes}")
    labels = np.repeat(np.arange(g.order), sizes)
    return Graph.from_adjacency(g.adjacency[np.ix_(labels, labels)])


def random_graph(n: int, p: float, seed: int | np.random.Generator | None = None) -> Graph:
    """
    Return a G(n, p) random graph.

    Args:
        n: order.
        p: edge probability.
        seed: seed or numpy Generator, for reproducible corpora.
    """
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((n, n)) < p, k=1)
    return Graph.from_adjacency(upper | upper.T)

"""
bookram book metrics.

Book size, induced subgraph counts of C4, K4, the diamond B_2 and C4 ∪ K1, and
the counting lemma relating the number of induced 4-cycles of a graph with
bounded book size to its order, size and minimum degree.

Notation: c(u, v) = |N(u) ∩ N(v)|, M_G(H) = number of induced copies of H.

:copyright: 2024 by the bookram developers
:license: LGPL, see LICENSE for more details.

"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import TYPE_CHECKING

import numpy as np
from monty.json import MSONable

from bookram.graph import VertexSet, iter_bits
from bookram.utils import as_fraction, fraction_str

if TYPE_CHECKING:
    from collections.abc import Iterator

    from bookram.graph import Graph

logger = logging.getLogger(__name__)


def book_size(g: Graph) -> int | None:
    """
    Return bs(G), the largest number of common neighbours of the ends of an edge.

    Returns:
        The page count of the largest book in G, or None when G has no edges. None
        sorts below 0 pages: a bare edge is a book with 0 pages, an edgeless graph has
        no book at all.
    """
    rows = g.rows
    best = None
    for u in range(g.order):
        ru = rows[u]
        for v in iter_bits(ru >> (u + 1) << (u + 1)):
            c = (ru & rows[v]).bit_count()
            if best is None or c > best:
                best = c
    return best


def book_witness(g: Graph) -> tuple[tuple[int, int], VertexSet] | None:
    """
    Return the spine and page set of a largest book of G, or None if G has no edges.

    Ties are broken by the lexicographically smallest spine.
    """
    rows = g.rows
    best: tuple[tuple[int, int], int] | None = None
    for u in range(g.order):
        for v in iter_bits(rows[u] >> (u + 1) << (u + 1)):
            pages = rows[u] & rows[v]
            if best is None or pages.bit_count() > best[1].bit_count():
                best = ((u, v), pages)
    if best is None:
        return None
    return best[0], VertexSet(g.order, best[1])


@dataclass
class SubgraphCensus(MSONable):
    """
    Induced subgraph counts of a graph.

    Attributes:
        c4: M_G(C4), derived from the pair sums via the counting identity.
        k4: M_G(K4).
        b2: M_G(B_2), induced diamonds.
        h: M_G(C4 ∪ K1).
        pair_sum: sum over unordered vertex pairs of C(c(u,v), 2).
        edge_sum: sum over edges of C(c(u,v), 2).
        residual: a direct count of induced 4-cycles minus ``c4``. Always 0.
    """

    c4: int
    k4: int
    b2: int
    h: int
    pair_sum: int
    edge_sum: int
    residual: int = 0

    def identity_residuals(self) -> dict[str, int]:
        """Return the residuals of the three counting identities; all are 0 for a correct census."""
        return {
            "pair_sum": self.pair_sum - (2 * self.c4 + 6 * self.k4 + 2 * self.b2),
            "edge_sum": self.edge_sum - (6 * self.k4 + self.b2),
            "c4": self.c4 - (self.pair_sum // 2 - self.edge_sum + 3 * self.k4),
        }

    def as_record(self) -> dict:
        return {
            "c4": self.c4,
            "k4": self.k4,
            "b2": self.b2,
            "h": self.h,
            "pair_sum": self.pair_sum,
            "edge_sum": self.edge_sum,
            "residual": self.residual,
        }


def _pair_sums(g: Graph) -> tuple[int, int]:
    """Return (sum over pairs, sum over edges) of C(c(u,v), 2) from the common neighbour matrix."""
    if g.order < 2:
        return 0, 0
    a = g.adjacency.astype(np.int64)
    c = (a @ a)[np.triu_indices(g.order, k=1)]
    choose2 = c * (c - 1) // 2
    is_edge = a[np.triu_indices(g.order, k=1)].astype(bool)
    return int(choose2.sum()), int(choose2[is_edge].sum())


def _clique_diamond_pass(g: Graph) -> tuple[int, int]:
    """
    Return (M_G(K4), M_G(B_2)).

    For an edge uv with X = N(u) ∩ N(v), every edge inside X completes a K4 (each K4
    is seen from its 6 edges) and every non-edge inside X completes a diamond whose
    spine is uv (each diamond is seen once).
    """
    rows = g.rows
    k4_times_6 = 0
    b2 = 0
    for u in range(g.order):
        for v in iter_bits(rows[u] >> (u + 1) << (u + 1)):
            x = rows[u] & rows[v]
            inside = sum((rows[w] & x).bit_count() for w in iter_bits(x)) // 2
            k4_times_6 += inside
            b2 += comb(x.bit_count(), 2) - inside
    return k4_times_6 // 6, b2


def induced_c4s(g: Graph) -> Iterator[tuple[int, int, int, int]]:
    """
    Yield every induced 4-cycle once as ``(u, v, w, z)`` in cyclic order.

    ``u`` is the smallest vertex of the cycle, uw and vz are its (non-adjacent) diagonals
    and ``v < z``.
    """
    rows = g.rows
    n = g.order
    for u in range(n):
        above_u = ((1 << n) - 1) >> (u + 1) << (u + 1)
        for w in iter_bits(above_u & ~rows[u]):
            x = rows[u] & rows[w] & above_u
            for v in iter_bits(x):
                for z in iter_bits(x & ~rows[v] >> (v + 1) << (v + 1)):
                    yield u, v, w, z


def count_induced_c4(g: Graph) -> int:
    """Count induced 4-cycles directly, independently of the counting identity."""
    return sum(1 for _ in induced_c4s(g))


def count_h(g: Graph) -> int:
    """
    Return M_G(C4 ∪ K1).

    Every induced 4-cycle contributes the number of vertices outside it adjacent to
    none of its four vertices.
    """
    rows = g.rows
    full = (1 << g.order) - 1
    total = 0
    for u, v, w, z in induced_c4s(g):
        touched = rows[u] | rows[v] | rows[w] | rows[z] | (1 << u) | (1 << v) | (1 << w) | (1 << z)
        total += (full & ~touched).bit_count()
    return total


def census(g: Graph) -> SubgraphCensus:
    """
    Return the SubgraphCensus of G.

    The pair and edge sums come from the common neighbour matrix A @ A, K4 and diamonds
    from a dedicated pass over the edges, and c4 from the identity

        M_G(C4) = 1/2 sum_{u,v} C(c(u,v), 2) - sum_{uv in E} C(c(u,v), 2) + 3 M_G(K4).

    ``residual`` compares c4 with a direct enumeration of induced 4-cycles.

    Raises:
        RuntimeError if the identity and the direct enumeration disagree.
    """
    pair_sum, edge_sum = _pair_sums(g)
    k4, b2 = _clique_diamond_pass(g)
    c4 = pair_sum // 2 - edge_sum + 3 * k4
    direct = count_induced_c4(g)
    result = SubgraphCensus(
        c4=c4, k4=k4, b2=b2, h=count_h(g), pair_sum=pair_sum, edge_sum=edge_sum, residual=direct - c4
    )
    if result.residual:
        raise RuntimeError(f"Counting identity residual {result.residual} on graph of order {g.order}")
    return result


def census_bruteforce(g: Graph) -> SubgraphCensus:
    """
    Reference census by classifying every 4-subset (and 5-subset for C4 ∪ K1).

    This is the test oracle for :func:`census`; it is O(n^5) and meant for small graphs.
    """
    rows = g.rows

    def induced_degrees(vertices: tuple[int, ...]) -> list[int]:
        mask = sum(1 << v for v in vertices)
        return sorted((rows[v] & mask).bit_count() for v in vertices)

    c4 = k4 = b2 = h = 0
    for quad in combinations(range(g.order), 4):
        degs = induced_degrees(quad)
        if degs == [2, 2, 2, 2]:
            c4 += 1
        elif degs == [3, 3, 3, 3]:
            k4 += 1
        elif degs == [2, 2, 3, 3]:
            b2 += 1
    for quint in combinations(range(g.order), 5):
        if induced_degrees(quint) == [0, 2, 2, 2, 2]:
            h += 1

    pair_sum = edge_sum = 0
    for u, v in combinations(range(g.order), 2):
        c = comb((rows[u] & rows[v]).bit_count(), 2)
        pair_sum += c
        if rows[u] >> v & 1:
            edge_sum += c
    return SubgraphCensus(
        c4=c4,
        k4=k4,
        b2=b2,
        h=h,
        pair_sum=pair_sum,
        edge_sum=edge_sum,
        residual=c4 - (pair_sum // 2 - edge_sum + 3 * k4),
    )


def c4_max_bound(n: int) -> int:
    """Return C(floor(n/2), 2) * C(ceil(n/2), 2), the largest possible M_G(C4) on n vertices."""
    if n < 0:
        raise ValueError(f"Invalid order {n}")
    return comb(n // 2, 2) * comb(n - n // 2, 2)


def _check_lambda(lam: Fraction) -> None:
    if not 0 < lam < 1:
        raise ValueError(f"lambda must lie strictly between 0 and 1, got {lam}")


def lemma1_threshold(lam: int | str | Fraction) -> Fraction:
    """
    Return 5(2λ + 1)/λ². The counting lemma applies to orders strictly above this value.

    Args:
        lam: the minimum degree ratio λ, 0 < λ < 1, as an exact rational.

    Examples:
        >>> lemma1_threshold(Fraction(1, 11))
        Fraction(715, 1)
    """
    lam = as_fraction(lam)
    _check_lambda(lam)
    return 5 * (2 * lam + 1) / lam**2


def lemma1_rhs(p: int, q: int, lam: int | str | Fraction, m: int) -> Fraction:
    """
    Return (λ³p²/5 − m²/2)·q, the lower bound on M_G(C4) for a graph with p vertices,
    q edges, minimum degree at least λp and book size at most m.
    """
    lam = as_fraction(lam)
    _check_lambda(lam)
    if p < 0 or q < 0 or m < 0:
        raise ValueError(f"p, q and m must be nonnegative, got p={p}, q={q}, m={m}")
    return (lam**3 * p**2 / 5 - Fraction(m**2, 2)) * q


def lemma1_chain(p: int, q: int, lam: int | str | Fraction) -> dict[str, Fraction | bool]:
    """
    Evaluate the convexity chain that bounds sum_{u,v} C(c(u,v), 2) from below.

    Returns:
        A dict with

        - ``x``: q(λp − 1), the lower bound on sum_{u,v} c(u,v),
        - ``jensen``: (x/2)(x/C(p,2) − 1),
        - ``chain``: q(λp − 1)(λ(λp − 1) − 1)/2,
        - ``final``: 2λ³p²q/5,
        - ``note_condition``: whether λ²p − 10λ − 5 >= 0, the condition under which
          ``chain > final`` is immediate. The lemma itself assumes the strict
          p > 5(2λ + 1)/λ²; the two differ only at equality.
    """
    lam = as_fraction(lam)
    _check_lambda(lam)
    x = q * (lam * p - 1)
    pairs = comb(p, 2)
    return {
        "x": x,
        "jensen": x / 2 * (x / pairs - 1) if pairs else Fraction(0),
        "chain": q * (lam * p - 1) * (lam * (lam * p - 1) - 1) / 2,
        "final": 2 * lam**3 * p**2 * q / 5,
        "note_condition": lam**2 * p - 10 * lam - 5 >= 0,
    }


@dataclass
class Lemma1Verdict(MSONable):
    """
    Outcome of checking the counting lemma on a concrete graph.

    ``holds`` is None when a hypothesis is unmet; ``failed_hypothesis`` then names it
    ("min_degree" or "order_threshold").
    """

    p: int
    q: int
    lam: str
    min_degree: int
    hypotheses_met: bool
    failed_hypothesis: str | None = None
    m: int | None = None
    c4: int | None = None
    bound: str | None = None
    holds: bool | None = None
    pair_sum: int | None = None
    chain: dict = field(default_factory=dict)

    def as_record(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "lambda": self.lam,
            "min_degree": self.min_degree,
            "hypotheses_met": self.hypotheses_met,
            "failed_hypothesis": self.failed_hypothesis,
            "m": self.m,
            "c4": self.c4,
            "bound": self.bound,
            "holds": self.holds,
            "pair_sum": self.pair_sum,
            "chain": self.chain,
        }


def lemma1_check(g: Graph, lam: int | str | Fraction) -> Lemma1Verdict:
    """
    Check the counting lemma on G with m = bs(G).

    The hypotheses δ(G) >= λp and p > 5(2λ + 1)/λ² are verified first; an unmet
    hypothesis is reported in the verdict, not raised.

    Raises:
        RuntimeError if the hypotheses hold but M(C4) does not exceed the bound.
    """
    lam = as_fraction(lam)
    _check_lambda(lam)
    p, q, delta = g.order, g.edge_count, g.min_degree()
    verdict = Lemma1Verdict(p=p, q=q, lam=fraction_str(lam), min_degree=delta, hypotheses_met=False)
    if delta < lam * p:
        verdict.failed_hypothesis = "min_degree"
        return verdict
    if not p > lemma1_threshold(lam):
        verdict.failed_hypothesis = "order_threshold"
        return verdict

    m = book_size(g) or 0
    counts = census(g)
    bound = lemma1_rhs(p, q, lam, m)
    chain = lemma1_chain(p, q, lam)
    verdict.hypotheses_met = True
    verdict.m = m
    verdict.c4 = counts.c4
    verdict.bound = fraction_str(bound)
    verdict.holds = counts.c4 > bound
    verdict.pair_sum = counts.pair_sum
    verdict.chain = {k: v if isinstance(v, bool) else fraction_str(v) for k, v in chain.items()}
    verdict.chain["pair_sum_exceeds_chain"] = counts.pair_sum > chain["chain"]
    verdict.chain["chain_exceeds_final"] = chain["chain"] > chain["final"]
    if not verdict.holds:
        raise RuntimeError(f"Counting lemma violated: M(C4) = {counts.c4} <= {bound} on a graph of order {p}")
    return verdict


def claim2_estimate(n: int, m: int | Fraction | None = None) -> Fraction:
    """
    Return the exact lower bound on M_{G(v)}(C4) for a vertex v of red degree at most 9n/20.

    This is the counting lemma applied with λ = 1/11 to p = 11n/20 vertices of minimum
    degree n/20, i.e.

        (1/5 · 1/11³ · (11n/20)² − m²/2) · 1/2 · (11n/20) · (n/20),

    whose leading term is n⁴/1600000 = n⁴/(1.6·10⁶). The estimate n⁴/640000 often quoted
    for this count is a rounded figure and is larger than the exact value computed here.
    ``m`` defaults to n/10⁶.
    """
    m = Fraction(n, 10**6) if m is None else as_fraction(m)
    p = Fraction(11 * n, 20)
    return (Fraction(1, 5) / 11**3 * p**2 - m**2 / 2) * Fraction(1, 2) * p * Fraction(n, 20)

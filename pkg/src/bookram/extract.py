"""
bookram extraction of monochromatic books from colourings.

:func:`extract` walks a red/blue colouring of K_N through the steps of the
argument that every colouring with bs(R) <= m and N >= 10^6 m has a blue book
with about N/2 pages: large red degrees, a triangle-free and bipartite red graph
on the high-degree vertices, the partition into W1, W2 and X, and either the
X-empty case or the averaging case. On real inputs the hypotheses usually fail
somewhere, and the trace records exactly where and with which numbers.

Also here: the four-cycle scan used to bound red books, and a checker for the
Andrásfai–Erdős–Sós triple together with an exact chromatic number for small graphs.

:copyright: 2024 by the bookram developers
:license: LGPL, see LICENSE for more details.

"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from monty.json import MSONable

from bookram.graph import (
    Graph,
    VertexSet,
    edges_between,
    has_clique,
    has_triangle,
    induced_subgraph,
    is_bipartite,
    iter_bits,
)
from bookram.metrics import book_size, book_witness, c4_max_bound, claim2_estimate, induced_c4s
from bookram.search import Coloring
from bookram.utils import fraction_str

logger = logging.getLogger(__name__)

CHROMATIC_ORDER_CAP = 30

STEP_NAMES = (
    "bs_red_check",
    "degree_set_S",
    "S_size_check",
    "triangle_free_check",
    "bipartition",
    "partition_W1_W2_X",
    "X_empty_branch",
    "averaging_branch",
)

Color = Literal["red", "blue"]
Status = Literal["passed", "failed", "skipped"]


class OrderCapError(ValueError):
    """Raised when an exact colouring is requested for a graph above CHROMATIC_ORDER_CAP vertices."""


@dataclass
class BookWitness(MSONable):
    """
    A monochromatic book: a spine edge and the common neighbours of its ends in one colour.

    Raises:
        ValueError if the spine is a loop or a spine vertex is listed as a page.
    """

    color: Color
    spine: tuple[int, int]
    pages: VertexSet

    def __post_init__(self) -> None:
        self.spine = (int(self.spine[0]), int(self.spine[1]))
        u, v = self.spine
        if u == v:
            raise ValueError(f"Spine ({u}, {v}) is not an edge")
        if u in self.pages or v in self.pages:
            raise ValueError(f"Spine vertex of ({u}, {v}) listed among the pages")

    @property
    def page_count(self) -> int:
        return len(self.pages)

    def validate(self, c: Coloring) -> bool:
        """Return True if the spine and every page are in ``color`` within the colouring."""
        g = c.red if self.color == "red" else c.blue
        u, v = self.spine
        if not g.has_edge(u, v):
            return False
        return all(g.has_edge(u, w) and g.has_edge(v, w) for w in self.pages)

    def as_record(self) -> dict:
        return {
            "color": self.color,
            "spine": list(self.spine),
            "pages": self.pages.to_list(),
            "page_count": self.page_count,
        }


@dataclass
class StepRecord(MSONable):
    step: str
    status: Status
    data: dict = field(default_factory=dict)

    def as_record(self) -> dict:
        return {"step": self.step, "status": self.status, "data": dict(self.data)}


@dataclass
class ExtractionTrace(MSONable):
    """Ordered step records of one extraction. Steps must be added in proof order."""

    steps: list[StepRecord] = field(default_factory=list)

    def add(self, step: str, status: Status, **data) -> StepRecord:
        if step not in STEP_NAMES:
            raise ValueError(f"Unknown extraction step {step!r}")
        if self.steps and STEP_NAMES.index(step) <= STEP_NAMES.index(self.steps[-1].step):
            raise RuntimeError(f"Step {step} recorded out of order after {self.steps[-1].step}")
        if self.steps and self.steps[-1].status == "failed":
            raise RuntimeError(f"Trace already terminated by failed step {self.steps[-1].step}")
        record = StepRecord(step, status, data)
        self.steps.append(record)
        logger.debug(f"{step}: {status} {data}")
        return record

    def skip_rest(self) -> None:
        """Mark every step after the last recorded one as skipped."""
        last = STEP_NAMES.index(self.steps[-1].step) if self.steps else -1
        for name in STEP_NAMES[last + 1 :]:
            self.steps.append(StepRecord(name, "skipped"))

    def step(self, name: str) -> StepRecord | None:
        return next((s for s in self.steps if s.step == name), None)

    def as_records(self) -> list[dict]:
        return [s.as_record() for s in self.steps]


@dataclass
class ExtractionOutcome(MSONable):
    """
    Result of :func:`extract`.

    Attributes:
        result: "red_book", "blue_book" or "hypothesis_failed".
        witness: the book found, for the first two results.
        failed_step: name of the failing step, for "hypothesis_failed".
        trace: the full step trace.
    """

    result: Literal["red_book", "blue_book", "hypothesis_failed"]
    trace: ExtractionTrace
    witness: BookWitness | None = None
    failed_step: str | None = None

    def as_record(self) -> dict:
        return {
            "result": self.result,
            "witness": self.witness.as_record() if self.witness is not None else None,
            "failed_step": self.failed_step,
            "trace": self.trace.as_records(),
        }


def _failed(trace: ExtractionTrace, step: str, **data) -> ExtractionOutcome:
    trace.add(step, "failed", **data)
    logger.info(f"Extraction stopped: hypothesis {step} fails")
    return ExtractionOutcome(result="hypothesis_failed", trace=trace, failed_step=step)


def _found(c: Coloring, trace: ExtractionTrace, witness: BookWitness) -> ExtractionOutcome:
    if not witness.validate(c):
        raise RuntimeError(f"Extracted {witness.color} book on {witness.spine} does not re-validate")
    trace.skip_rest()
    logger.info(f"Extracted {witness.color} book with {witness.page_count} pages on spine {witness.spine}")
    return ExtractionOutcome(result=f"{witness.color}_book", trace=trace, witness=witness)  # type: ignore[arg-type]


def _best_blue_spine(blue: Graph, side: VertexSet, within: int) -> tuple[tuple[int, int], int] | None:
    """Return the pair u < v in ``side`` with the most blue common neighbours in the bitset ``within``."""
    rows = blue.rows
    best: tuple[tuple[int, int], int] | None = None
    members = side.to_list()
    for i, u in enumerate(members):
        for v in members[i + 1 :]:
            if not rows[u] >> v & 1:
                continue
            pages = rows[u] & rows[v] & within
            if best is None or pages.bit_count() > best[1].bit_count():
                best = ((u, v), pages)
    return best


def extract(c: Coloring, m: int) -> ExtractionOutcome:
    """
    Look for a red book with more than m pages or a large blue book, following the proof steps.

    Args:
        c: the colouring; N = c.order plays the role of n in the proof.
        m: the red page bound.

    Returns:
        ExtractionOutcome with a re-validated BookWitness, or the name of the first
        proof hypothesis that fails on this colouring.

    Raises:
        ValueError if N < 5 or m < 1.
        RuntimeError if a returned blue book falls short of the bound its branch guarantees.
    """
    order = c.order
    if order < 5:
        raise ValueError(f"Extraction needs at least 5 vertices, got {order}")
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")
    red, blue = c.red, c.blue
    trace = ExtractionTrace()
    everything = VertexSet.full(order)

    # 1. a red book with more than m pages ends the argument
    red_bs = book_size(red)
    trace.add("bs_red_check", "passed", bs_red=red_bs, m=m, red_book=red_bs is not None and red_bs > m)
    if red_bs is not None and red_bs > m:
        spine, pages = book_witness(red)  # type: ignore[misc]
        return _found(c, trace, BookWitness("red", spine, pages))

    # 2. high red degree vertices
    s_set = VertexSet.from_vertices(order, (v for v in range(order) if 20 * red.degree(v) > 9 * order))
    trace.add(
        "degree_set_S",
        "passed",
        threshold=fraction_str(Fraction(9 * order, 20)),
        S_size=len(s_set),
        low_degree_count=order - len(s_set),
    )

    # 3. all but N/20 vertices have high red degree
    size_data = {
        "S_size": len(s_set),
        "bound": fraction_str(Fraction(19 * order, 20)),
        "low_degree_count": order - len(s_set),
        "low_degree_limit": fraction_str(Fraction(order, 20)),
        "claim2_estimate": fraction_str(claim2_estimate(order, m)),
        "c4_max_bound": c4_max_bound(order),
    }
    if 20 * len(s_set) <= 19 * order:
        return _failed(trace, "S_size_check", **size_data)
    trace.add("S_size_check", "passed", **size_data)

    # 4. the red graph on S has no triangle
    s_list = s_set.to_list()
    red_s = induced_subgraph(red, s_set)
    triangle = has_triangle(red_s)
    if triangle is not None:
        t_set = VertexSet.from_vertices(order, (s_list[i] for i in triangle))
        lower = 3 * (Fraction(9 * order, 20) - 2)
        upper = order + 3 * (m - 1)
        return _failed(
            trace,
            "triangle_free_check",
            triangle=t_set.to_list(),
            e_R_T_U=edges_between(red, t_set, t_set.complement()),
            lower=fraction_str(lower),
            upper=upper,
            chain_contradicts=lower < upper,
            seven_twentieths_N_below_3m_plus_3=Fraction(7 * order, 20) < 3 * m + 3,
        )
    trace.add("triangle_free_check", "passed", S_size=len(s_set))

    # 5. and it is bipartite
    split = is_bipartite(red_s)
    if split is None:
        delta = red_s.min_degree()
        return _failed(
            trace,
            "bipartition",
            min_degree=delta,
            two_fifths_S=fraction_str(Fraction(2 * len(s_set), 5)),
            min_degree_above_two_fifths=5 * delta > 2 * len(s_set),
        )
    s1 = VertexSet.from_vertices(order, (s_list[i] for i in split[0]))
    s2 = s_set - s1
    trace.add("bipartition", "passed", S1_size=len(s1), S2_size=len(s2))

    # 6. attach the rest of V to the side whose S_i it sees entirely in blue
    rows_b = blue.rows
    outside = everything - s_set
    t1 = VertexSet.from_vertices(order, (v for v in outside if (s1.bits & ~rows_b[v]) == 0))
    t2 = VertexSet.from_vertices(order, (v for v in outside - t1 if (s2.bits & ~rows_b[v]) == 0))
    w1, w2 = s1 | t1, s2 | t2
    x_set = everything - w1 - w2
    if not w1.isdisjoint(w2):
        raise RuntimeError("W1 and W2 overlap")
    trace.add(
        "partition_W1_W2_X",
        "passed",
        S1_size=len(s1),
        S2_size=len(s2),
        T1_size=len(t1),
        T2_size=len(t2),
        W1_size=len(w1),
        W2_size=len(w2),
        X_size=len(x_set),
    )

    # 7. X empty: the larger W_i is almost a blue clique
    if not x_set:
        side, s_i, w_i = (1, s1, w1) if len(w1) >= len(w2) else (2, s2, w2)
        best = _best_blue_spine(blue, s_i, w_i.bits)
        if best is None:
            # fewer than two vertices in S_i: fall back to any blue edge inside W_i
            best = _best_blue_spine(blue, w_i, w_i.bits)
        # a spine inside S_i sees the rest of S_i and all of T_i in blue
        lower_bound = len(w_i) - 2 if len(s_i) >= 2 else None
        data = {"side": side, "W_size": len(w_i), "S_size": len(s_i), "lower_bound": lower_bound}
        if best is None:
            return _failed(trace, "X_empty_branch", **data)
        spine, pages = best
        if lower_bound is not None and pages.bit_count() < lower_bound:
            raise RuntimeError(f"Blue book on {spine} has {pages.bit_count()} pages, below the bound {lower_bound}")
        trace.add("X_empty_branch", "passed", pages=pages.bit_count(), **data)
        return _found(c, trace, BookWitness("blue", spine, VertexSet(order, pages)))
    trace.add("X_empty_branch", "skipped", X_size=len(x_set))

    # 8. averaging over pairs of S_1 and of S_2
    averages: dict[str, Fraction] = {}
    best = None
    for label, s_i, t_i in (("S1", s1, t1), ("S2", s2, t2)):
        if len(s_i) >= 2:
            avg = len(s_i) + len(t_i) + len(x_set) - 2 - Fraction(2 * edges_between(red, s_i, x_set), len(s_i))
            averages[label] = avg
        candidate = _best_blue_spine(blue, s_i, everything.bits)
        if candidate is not None and (best is None or candidate[1].bit_count() > best[1].bit_count()):
            best = candidate
    e_s_x = edges_between(red, s_set, x_set)
    red_side = Fraction(e_s_x, len(x_set)) - Fraction(len(s_set), 5)
    data = {
        "averaged_lower_bounds": {label: fraction_str(avg) for label, avg in averages.items()},
        "e_R_S_X": e_s_x,
        "red_side_value": fraction_str(red_side),
        "two_m": 2 * m,
        "red_side_holds": 2 * m >= red_side,
    }
    if best is None:
        return _failed(trace, "averaging_branch", **data)
    spine, pages = best
    # the best pair of S_i is at least as good as the average over its pairs
    floor = max(averages.values(), default=None)
    if floor is not None and pages.bit_count() < floor:
        raise RuntimeError(f"Blue book on {spine} has {pages.bit_count()} pages, below the averaged bound {floor}")
    trace.add("averaging_branch", "passed", pages=pages.bit_count(), **data)
    return _found(c, trace, BookWitness("blue", spine, VertexSet(order, pages)))


@dataclass
class Claim1Result(MSONable):
    """
    An induced red 4-cycle whose vertices share at least 4m + 1 blue neighbours.

    Attributes:
        cycle: (u, v, w, z) in cyclic order.
        common_blue: the common blue neighbourhood of the four vertices.
        edge: the cycle edge with the most red pages.
        edge_pages: its number of red pages.
        claim_holds: whether that edge has at least m + 1 red pages.
        blue_book_condition: whether bs(B) <= N/2 − 2, under which the edge must have m + 1 pages.
    """

    cycle: tuple[int, int, int, int]
    common_blue: VertexSet
    edge: tuple[int, int]
    edge_pages: int
    claim_holds: bool
    blue_book_condition: bool

    def as_record(self) -> dict:
        return {
            "cycle": list(self.cycle),
            "common_blue": self.common_blue.to_list(),
            "edge": list(self.edge),
            "edge_pages": self.edge_pages,
            "claim_holds": self.claim_holds,
            "blue_book_condition": self.blue_book_condition,
        }


def claim1_scan(c: Coloring, m: int) -> Claim1Result | None:
    """
    Find the first induced red C4 whose vertices have at least 4m + 1 common blue neighbours.

    Cycles are visited in the order of :func:`bookram.metrics.induced_c4s`. For the
    cycle found, the red edge with the most red pages is reported; when the blue
    book size is at most N/2 − 2 it carries at least m + 1 pages.

    Returns:
        Claim1Result, or None when no such cycle exists.
    """
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    red, blue = c.red, c.blue
    rows_r, rows_b = red.rows, blue.rows
    for cycle in induced_c4s(red):
        u, v, w, z = cycle
        common = rows_b[u] & rows_b[v] & rows_b[w] & rows_b[z]
        if common.bit_count() < 4 * m + 1:
            continue
        edges = [(u, v), (v, w), (w, z), (z, u)]
        pages = [(rows_r[a] & rows_r[b]).bit_count() for a, b in edges]
        best = max(range(4), key=lambda i: pages[i])
        blue_bs = book_size(blue)
        condition = blue_bs is None or blue_bs <= Fraction(c.order, 2) - 2
        return Claim1Result(
            cycle=cycle,
            common_blue=VertexSet(c.order, common),
            edge=edges[best],
            edge_pages=pages[best],
            claim_holds=pages[best] >= m + 1,
            blue_book_condition=condition,
        )
    return None


def _greedy_clique(g: Graph) -> list[int]:
    rows = g.rows
    clique: list[int] = []
    candidates = (1 << g.order) - 1
    while candidates:
        v = max(iter_bits(candidates), key=lambda x: (rows[x] & candidates).bit_count())
        clique.append(v)
        candidates &= rows[v]
    return clique


def _dsatur(g: Graph, limit: int | None = None) -> list[int] | None:
    """
    Colour g by DSATUR order, backtracking when ``limit`` is given.

    Without ``limit`` this is the greedy DSATUR colouring. With it, returns a proper
    colouring using at most ``limit`` colours or None if none exists.
    """
    n = g.order
    rows = g.rows
    colours = [-1] * n

    def pick() -> int:
        best, key = -1, None
        for v in range(n):
            if colours[v] >= 0:
                continue
            seen = {colours[w] for w in iter_bits(rows[v]) if colours[w] >= 0}
            k = (len(seen), rows[v].bit_count(), -v)
            if key is None or k > key:
                best, key = v, k
        return best

    def assign(done: int, used: int) -> bool:
        if done == n:
            return True
        v = pick()
        taken = {colours[w] for w in iter_bits(rows[v]) if colours[w] >= 0}
        top = used + 1 if limit is None else min(used + 1, limit)
        for colour in range(top):
            if colour in taken:
                continue
            colours[v] = colour
            if assign(done + 1, max(used, colour + 1)):
                return True
            colours[v] = -1
            if limit is None:
                break
        return False

    return colours if assign(0, 0) else None


def chromatic_number(g: Graph) -> int:
    """
    Return χ(g) by branch and bound.

    The greedy clique gives the lower bound and greedy DSATUR the upper bound; every
    count in between is tried with backtracking DSATUR.

    Raises:
        OrderCapError if g has more than CHROMATIC_ORDER_CAP vertices.
    """
    if g.order > CHROMATIC_ORDER_CAP:
        raise OrderCapError(f"Exact colouring is limited to {CHROMATIC_ORDER_CAP} vertices, got {g.order}")
    if g.order == 0:
        return 0
    lower = len(_greedy_clique(g))
    upper = max(_dsatur(g)) + 1  # type: ignore[arg-type]
    for k in range(lower, upper):
        if _dsatur(g, limit=k) is not None:
            return k
    return upper


@dataclass
class AesVerdict(MSONable):
    """
    The three properties of a graph G on n vertices in the Andrásfai–Erdős–Sós theorem.

    Attributes:
        no_clique: G has no K_r.
        min_degree_condition: δ(G) > (3r − 7)n/(3r − 4).
        chromatic_condition: χ(G) >= r (for r = 3: G is not bipartite).
    """

    r: int
    no_clique: bool
    min_degree_condition: bool
    chromatic_condition: bool
    chromatic_number: int | None = None

    def as_tuple(self) -> tuple[bool, bool, bool]:
        return self.no_clique, self.min_degree_condition, self.chromatic_condition

    def as_record(self) -> dict:
        return {
            "r": self.r,
            "no_clique": self.no_clique,
            "min_degree_condition": self.min_degree_condition,
            "chromatic_condition": self.chromatic_condition,
            "chromatic_number": self.chromatic_number,
        }


def aes_check(g: Graph, r: int) -> AesVerdict:
    """
    Evaluate the three Andrásfai–Erdős–Sós properties of g; at most two can hold.

    Args:
        g: the graph.
        r: clique order, r >= 3.

    Raises:
        ValueError: if r < 3.
        OrderCapError: if r > 3 and g has more than CHROMATIC_ORDER_CAP vertices.
        RuntimeError: if all three properties hold.
    """
    if r < 3:
        raise ValueError(f"r must be at least 3, got {r}")
    no_clique = has_clique(g, r) is None
    min_degree = (3 * r - 4) * g.min_degree() > (3 * r - 7) * g.order
    if r == 3:
        chi = None
        chromatic = is_bipartite(g) is None
    else:
        chi = chromatic_number(g)
        chromatic = chi >= r
    verdict = AesVerdict(r, no_clique, min_degree, chromatic, chi)
    if all(verdict.as_tuple()):
        raise RuntimeError(f"Graph of order {g.order} has all three properties for r={r}")
    return verdict

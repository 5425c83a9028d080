"""
bookram search for small book Ramsey numbers.

Exhaustive decision of "K_N arrows (B_m, B_n)" through the engines in
:mod:`bookram.engines`, simulated annealing for avoiding colourings, and the
combination of both into exact values of r(B_m, B_n) for small m, n.

:copyright: 2024 by the bookram developers
:license: LGPL, see LICENSE for more details.

"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Literal, get_args

import numpy as np
from monty.json import MSONable
from monty.serialization import dumpfn, loadfn

from bookram.bounds import best_bounds
from bookram.engines import ENGINES, FeasibilityCapError
from bookram.graph import Graph, complement, from_graph6, read_graph6_file, to_graph6, write_graph6_file
from bookram.metrics import book_size
from bookram.srg import corollary_rows, is_prime_power, load_witness, paley
from bookram.utils import complete_bipartite_graph

if TYPE_CHECKING:
    from collections.abc import Iterator

logger = logging.getLogger(__name__)

__all__ = [
    "DEFAULT_BUDGET",
    "DEFAULT_ORDER_CAP",
    "HARD_ORDER_CAP",
    "Coloring",
    "FeasibilityCapError",
    "SearchReport",
    "arrows",
    "find_witness",
    "ramsey_number",
    "validate_coloring",
]

DEFAULT_ORDER_CAP = 10
HARD_ORDER_CAP = 12
DEFAULT_BUDGET = 10**6

Answer = Literal["arrows", "does-not-arrow", "unknown"]


@dataclass
class Coloring(MSONable):
    """
    A red/blue colouring of E(K_N), stored as its red graph; blue is the complement.

    Args:
        red: the red graph. Its order is N.
    """

    red: Graph

    @property
    def order(self) -> int:
        return self.red.order

    @property
    def blue(self) -> Graph:
        return complement(self.red)

    def to_file(self, filename: str | Path, m: int | None = None, n: int | None = None) -> None:
        """
        Write the red graph to ``<filename>.g6`` and the sidecar ``<filename>.json``.

        The sidecar holds ``{"N", "m", "n", "red_graph6"}``.
        """
        base = Path(filename).with_suffix("")
        write_graph6_file(self.red, base.with_suffix(".g6"))
        sidecar = {"N": self.order, "m": m, "n": n, "red_graph6": to_graph6(self.red)}
        dumpfn(sidecar, base.with_suffix(".json"), indent=2)
        logger.info(f"Wrote colouring of K_{self.order} to {base}.g6 and {base}.json")

    @classmethod
    def from_file(cls, filename: str | Path) -> Coloring:
        """
        Load a colouring from a ``.json`` sidecar or a graph6 file holding the red graph.

        Raises:
            FileNotFoundError: if the file does not exist.
            ValueError: if the sidecar order disagrees with its graph.
        """
        path = Path(filename)
        if path.suffix != ".json":
            return cls(read_graph6_file(path))
        if not path.exists():
            raise FileNotFoundError(f"File '{filename}' not found!")
        record = loadfn(path)
        red = from_graph6(record["red_graph6"])
        if record.get("N", red.order) != red.order:
            raise ValueError(f"Sidecar {filename} states N={record['N']} but its graph has order {red.order}")
        return cls(red)


def validate_coloring(c: Coloring, m: int, n: int) -> bool:
    """Return True if the colouring has no red B_m and no blue B_n, recomputing both book sizes."""
    red_bs = book_size(c.red)
    blue_bs = book_size(c.blue)
    return (red_bs is None or red_bs < m) and (blue_bs is None or blue_bs < n)


@dataclass
class SearchReport(MSONable):
    """
    Answer to "does K_N arrow (B_m, B_n)?".

    Attributes:
        N: order of the complete graph.
        m: red page target.
        n: blue page target.
        answer: "arrows", "does-not-arrow", or "unknown" when the search hit its node limit.
        witness: an avoiding colouring when the answer is "does-not-arrow".
        nodes_explored: search nodes visited; approximate for split searches.
        elapsed: wall time in seconds.
        engine: name of the engine that produced the answer.
    """

    N: int
    m: int
    n: int
    answer: Answer
    witness: Coloring | None = None
    nodes_explored: int = 0
    elapsed: float = 0.0
    engine: str = "dfs"

    def __post_init__(self) -> None:
        if self.answer not in get_args(Answer):
            raise ValueError(f"Unknown answer {self.answer!r}, expected one of {get_args(Answer)}")
        valid = self.witness is not None and validate_coloring(self.witness, self.m, self.n)
        if self.answer == "does-not-arrow" and not valid:
            raise RuntimeError(f"A does-not-arrow answer for K_{self.N} needs a valid avoiding colouring")

    def as_record(self) -> dict:
        return {
            "N": self.N,
            "m": self.m,
            "n": self.n,
            "answer": self.answer,
            "witness": to_graph6(self.witness.red) if self.witness is not None else None,
            "nodes_explored": self.nodes_explored,
            "elapsed": round(self.elapsed, 6),
            "engine": self.engine,
        }


def _check_question(order: int, m: int, n: int) -> None:
    if order < 2:
        raise ValueError(f"N must be at least 2, got N={order}")
    if m < 1 or n < 1:
        raise ValueError(f"Page targets must be positive, got m={m}, n={n}")


def arrows(
    order: int,
    m: int,
    n: int,
    engine: str = "dfs",
    threads: int = 1,
    force: bool = False,
    max_nodes: int | None = None,
) -> SearchReport:
    """
    Decide exhaustively whether every red/blue colouring of E(K_N) contains a red B_m or a blue B_n.

    Args:
        order: N.
        m: red page target.
        n: blue page target.
        engine: "dfs" (pruned search) or "enumerate" (every colouring, N <= 6).
        threads: worker processes for the "dfs" engine.
        force: allow DEFAULT_ORDER_CAP < N <= HARD_ORDER_CAP.
        max_nodes: node limit for the "dfs" engine; past it the answer is "unknown".

    Returns:
        SearchReport with answer "arrows", "does-not-arrow" or "unknown"; "does-not-arrow"
        carries a re-validated avoiding colouring.

    Raises:
        FeasibilityCapError: if N exceeds the cap.
        ValueError: for invalid N, m, n or an unknown engine.
    """
    _check_question(order, m, n)
    if order > HARD_ORDER_CAP:
        raise FeasibilityCapError(f"Exhaustive search is not supported above N={HARD_ORDER_CAP}, got N={order}")
    if order > DEFAULT_ORDER_CAP and not force:
        raise FeasibilityCapError(f"N={order} exceeds the default cap {DEFAULT_ORDER_CAP}; pass force=True to run it")
    if engine not in ENGINES:
        raise ValueError(f"Unknown engine {engine!r}, choose from {sorted(ENGINES)}")
    if max_nodes is not None and engine != "dfs":
        raise ValueError(f"max_nodes applies to the dfs engine only, got engine {engine!r}")

    solver = ENGINES[engine](threads=threads, max_nodes=max_nodes) if engine == "dfs" else ENGINES[engine]()
    start = time.perf_counter()
    result = solver.decide(order, m, n)
    elapsed = time.perf_counter() - start
    witness = Coloring(result.red) if result.red is not None else None
    answer: Answer = "unknown" if result.arrows is None else "arrows" if result.arrows else "does-not-arrow"
    logger.info(f"K_{order} -> (B_{m}, B_{n}): {answer} after {result.nodes} nodes in {elapsed:.3f} s")
    return SearchReport(
        N=order,
        m=m,
        n=n,
        answer=answer,
        witness=witness,
        nodes_explored=result.nodes,
        elapsed=elapsed,
        engine=engine,
    )


def _spine_cost(red: list[int], blue: list[int], u: int, v: int, m: int, n: int) -> int:
    if red[u] >> v & 1:
        return max(0, (red[u] & red[v]).bit_count() - (m - 1))
    return max(0, (blue[u] & blue[v]).bit_count() - (n - 1))


def _local_cost(red: list[int], blue: list[int], u: int, v: int, m: int, n: int) -> int:
    """Cost of every spine whose page count can change when the colour of uv changes."""
    total = _spine_cost(red, blue, u, v, m, n)
    for w in range(len(red)):
        if w not in (u, v):
            total += _spine_cost(red, blue, u, w, m, n) + _spine_cost(red, blue, v, w, m, n)
    return total


def _total_cost(red: list[int], blue: list[int], m: int, n: int) -> int:
    order = len(red)
    return sum(_spine_cost(red, blue, u, v, m, n) for u in range(order) for v in range(u + 1, order))


def _flip(red: list[int], blue: list[int], u: int, v: int) -> None:
    mask_u, mask_v = 1 << u, 1 << v
    red[u] ^= mask_v
    red[v] ^= mask_u
    blue[u] ^= mask_v
    blue[v] ^= mask_u


def _constructions(order: int) -> Iterator[tuple[str, Graph]]:
    """Yield the known lower-bound constructions on ``order`` vertices, each in both colourings."""
    graphs = [(f"K_{{{a},{order - a}}}", complete_bipartite_graph(a, order - a)) for a in range(order // 2, 0, -1)]
    if is_prime_power(order) and order % 4 == 1:
        graphs.append((f"paley({order})", paley(order)))
    for row in corollary_rows():
        if row.params.v == order and (g := load_witness(row)) is not None:
            graphs.append((f"SRG{row.params.as_tuple()}", g))
    for name, g in graphs:
        yield name, g
        yield f"complement of {name}", complement(g)


def find_witness(
    order: int,
    m: int,
    n: int,
    budget: int = DEFAULT_BUDGET,
    seed: int | None = None,
    initial_temperature: float = 2.0,
    final_temperature: float = 0.05,
    use_constructions: bool = True,
) -> Coloring | None:
    """
    Look for a colouring of E(K_N) with no red B_m and no blue B_n by simulated annealing.

    The cost of a colouring is the sum over red edges of max(0, pages − (m − 1)) plus
    the sum over blue edges of max(0, pages − (n − 1)); a colouring of cost 0 is a
    witness. Each step proposes flipping the colour of one uniformly random edge.
    The temperature cools geometrically from ``initial_temperature`` to
    ``final_temperature`` over the whole budget. After budget/10 flips without
    improving on the best cost the search restarts from a fresh random colouring,
    keeping the current temperature.

    Unless ``use_constructions`` is False, the known lower-bound constructions on N
    vertices are tried first: complete bipartite graphs, the Paley graph and the stored
    strongly regular witnesses, each as the red and as the blue graph.

    Args:
        order: N.
        m: red page target.
        n: blue page target.
        budget: number of proposed flips.
        seed: seed for numpy's default_rng; equal (N, m, n, seed, budget) give equal results.
        use_constructions: try the known constructions before annealing.

    Returns:
        A validated Coloring, or None if the budget runs out.
    """
    if order < 1 or m < 1 or n < 1:
        raise ValueError(f"N, m and n must be positive, got N={order}, m={m}, n={n}")
    if order == 1:
        return Coloring(Graph(1, [0]))
    if use_constructions:
        for name, g in _constructions(order):
            if validate_coloring(candidate := Coloring(g), m, n):
                logger.info(f"Red graph {name} avoids (B_{m}, B_{n}) on K_{order}")
                return candidate
    rng = np.random.default_rng(seed)
    edges = [(u, v) for u in range(order) for v in range(u + 1, order)]
    full = (1 << order) - 1

    def random_start() -> tuple[list[int], list[int]]:
        upper = np.triu(rng.random((order, order)) < 0.5, k=1)
        start = Graph.from_adjacency(upper | upper.T)
        red = list(start.rows)
        return red, [full & ~row & ~(1 << v) for v, row in enumerate(red)]

    red, blue = random_start()
    cost = _total_cost(red, blue, m, n)
    best = cost
    since_best = 0
    patience = max(1, budget // 10)
    alpha = (final_temperature / initial_temperature) ** (1 / max(1, budget))
    temperature = initial_temperature
    restarts = 0
    batch = 4096
    step = 0
    while step < budget and cost > 0:
        picks = rng.integers(len(edges), size=batch)
        coins = rng.random(batch)
        for pick, coin in zip(picks, coins, strict=True):
            if step >= budget or cost == 0:
                break
            step += 1
            u, v = edges[pick]
            before = _local_cost(red, blue, u, v, m, n)
            _flip(red, blue, u, v)
            delta = _local_cost(red, blue, u, v, m, n) - before
            if delta <= 0 or coin < math.exp(-delta / temperature):
                cost += delta
            else:
                _flip(red, blue, u, v)
            temperature *= alpha
            if cost < best:
                best = cost
                since_best = 0
            else:
                since_best += 1
            if since_best >= patience and cost > 0:
                restarts += 1
                logger.debug(f"Annealing restart {restarts} at step {step}, best cost {best}")
                red, blue = random_start()
                cost = _total_cost(red, blue, m, n)
                best = cost
                since_best = 0

    if cost > 0:
        logger.info(f"No avoiding colouring of K_{order} for (B_{m}, B_{n}) within {budget} flips")
        return None
    witness = Coloring(Graph(order, red))
    if not validate_coloring(witness, m, n):
        raise RuntimeError("Annealing reached cost 0 on a colouring that contains a forbidden book")
    logger.info(f"Found avoiding colouring of K_{order} for (B_{m}, B_{n}) after {step} flips and {restarts} restarts")
    return witness


def ramsey_number(
    m: int,
    n: int,
    max_order: int = DEFAULT_ORDER_CAP,
    threads: int = 1,
    force: bool = False,
    start: int | None = None,
) -> tuple[int | None, list[SearchReport]]:
    """
    Compute r(B_m, B_n) exactly by exhaustive search.

    Orders are decided upward from ``start`` (default: the best proved lower bound
    minus one, never below 2) until K_N arrows. The report for N − 1 carries the
    avoiding colouring that shows r(B_m, B_n) > N − 1.

    Returns:
        (r, reports) where r is None if no order up to ``max_order`` arrows.

    Raises:
        FeasibilityCapError: propagated from :func:`arrows`.
        RuntimeError: if the first order searched already arrows, so no witness one below exists.
    """
    if m < 1 or n < 1:
        raise ValueError(f"Page targets must be positive, got m={m}, n={n}")
    first = start if start is not None else max(2, best_bounds(m, n).lower - 1)
    reports: list[SearchReport] = []
    for order in range(first, max_order + 1):
        report = arrows(order, m, n, threads=threads, force=force)
        reports.append(report)
        if report.answer == "arrows":
            if len(reports) == 1:
                raise RuntimeError(f"K_{order} already arrows (B_{m}, B_{n}); start the search lower")
            logger.info(f"r(B_{m}, B_{n}) = {order}")
            return order, reports
    logger.warning(f"r(B_{m}, B_{n}) exceeds the search cap {max_order}")
    return None, reports

"""
bookram engines for deciding whether K_N arrows (B_m, B_n).

An engine answers one question: does every red/blue colouring of E(K_N) contain a
red B_m or a blue B_n? When the answer is no, it also returns the red graph of a
colouring that avoids both books.

:copyright: 2024 by the bookram developers
:license: LGPL, see LICENSE for more details.

"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from bookram.graph import Graph, complement, iter_bits
from bookram.metrics import book_size

logger = logging.getLogger(__name__)

# above this order the enumeration engine would visit more than 2^15 colourings
ENUMERATION_ORDER_CAP = 6


class FeasibilityCapError(ValueError):
    """Raised when an exhaustive search is requested for an order beyond the configured cap."""


class _NodeLimitReached(Exception):
    pass


@dataclass
class EngineResult:
    """
    Raw answer of an engine.

    Attributes:
        arrows: True if every colouring contains a red B_m or a blue B_n, None if the
            search stopped at its node limit before deciding.
        red: the red graph of an avoiding colouring when ``arrows`` is False.
        nodes: number of search nodes (or colourings) visited.
    """

    arrows: bool | None
    red: Graph | None
    nodes: int


class ArrowingEngine(ABC):
    """
    Abstract base class for bookram arrowing engines.

    Concrete engines must be exact: ``arrows`` is True only if no avoiding
    colouring exists, and every returned colouring really avoids both books.
    """

    name: str = "abstract"

    @abstractmethod
    def decide(self, order: int, m: int, n: int) -> EngineResult:
        """
        Decide whether K_order arrows (B_m, B_n).

        Args:
            order: N, the number of vertices.
            m: red page target.
            n: blue page target.

        Returns:
            EngineResult. When ``arrows`` is False, ``red`` is the lexicographically first
            avoiding colouring in the engine's search order.

        Raises:
            FeasibilityCapError if the order is too large for this engine.
        """


def _creates_book(rows: list[int], u: int, v: int, limit: int) -> bool:
    """
    Return True if the edge uv, just added to ``rows``, completes a book with ``limit`` pages.

    Only the spines uv, uw and vw with w a common neighbour of u and v gain pages.
    """
    ru, rv = rows[u], rows[v]
    common = ru & rv
    if common.bit_count() >= limit:
        return True
    for w in iter_bits(common):
        rw = rows[w]
        if (ru & rw).bit_count() >= limit or (rv & rw).bit_count() >= limit:
            return True
    return False


class _EdgeSearch:
    """
    Depth-first search over the edges of K_N in lexicographic order, red before blue.

    A branch is cut as soon as the decided red edges contain B_m or the decided blue
    edges contain B_n. The edges at vertex 0 are restricted to the pattern "all red
    edges before all blue edges", since permuting vertices 1..N-1 brings every
    colouring to that form.
    """

    def __init__(self, order: int, m: int, n: int, node_limit: int | None = None) -> None:
        self.order = order
        self.m = m
        self.n = n
        self.node_limit = node_limit
        self.edges = [(u, v) for u in range(order) for v in range(u + 1, order)]
        self.red = [0] * order
        self.blue = [0] * order
        self.nodes = 0

    def load(self, red: tuple[int, ...], blue: tuple[int, ...]) -> None:
        self.red = list(red)
        self.blue = list(blue)

    def _red_allowed(self, u: int, v: int) -> bool:
        return not (u == 0 and v > 1 and self.blue[0] >> (v - 1) & 1)

    def _branches(self, index: int):
        """Yield after each admissible colour of edge ``index`` is placed; undo on resume."""
        u, v = self.edges[index]
        bu, bv = 1 << u, 1 << v
        if self._red_allowed(u, v):
            self.red[u] |= bv
            self.red[v] |= bu
            if not _creates_book(self.red, u, v, self.m):
                yield
            self.red[u] ^= bv
            self.red[v] ^= bu
        self.blue[u] |= bv
        self.blue[v] |= bu
        if not _creates_book(self.blue, u, v, self.n):
            yield
        self.blue[u] ^= bv
        self.blue[v] ^= bu

    def run(self, index: int = 0) -> bool:
        """
        Extend the current partial colouring from edge ``index``; True once every edge is coloured.

        Raises:
            _NodeLimitReached once more than ``node_limit`` nodes have been visited.
        """
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise _NodeLimitReached
        if index == len(self.edges):
            return True
        for _ in self._branches(index):
            if self.run(index + 1):
                return True
        return False

    def prefixes(self, depth: int, index: int = 0) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        """Return every admissible colouring of the first ``depth`` edges, in search order."""
        self.nodes += 1
        if index == min(depth, len(self.edges)):
            return [(tuple(self.red), tuple(self.blue))]
        found = []
        for _ in self._branches(index):
            found.extend(self.prefixes(depth, index + 1))
        return found


def _search_subtree(
    args: tuple[int, int, int, tuple[int, ...], tuple[int, ...], int, int | None],
) -> tuple[list[int] | None, int, bool]:
    """
    Worker entry point: search below one prefix.

    Returns:
        (red rows of a good colouring or None, nodes, whether the subtree was fully searched).
    """
    order, m, n, red, blue, start, node_limit = args
    search = _EdgeSearch(order, m, n, node_limit)
    search.load(red, blue)
    try:
        found = search.run(start)
    except _NodeLimitReached:
        return None, search.nodes, False
    return (list(search.red) if found else None), search.nodes, True


class DFSEngine(ArrowingEngine):
    """Exhaustive depth-first search with incremental book pruning."""

    name = "dfs"

    def __init__(self, threads: int = 1, split_depth: int | None = None, max_nodes: int | None = None) -> None:
        """
        Args:
            threads: number of worker processes. With more than one, the search tree is
                split after ``split_depth`` edges and the subtrees are searched in parallel.
            split_depth: number of edges decided before splitting. Defaults to the
                N − 1 edges at vertex 0 plus 3 more.
            max_nodes: stop undecided after this many search nodes; with several threads
                the limit applies to each subtree. None searches to the end.
        """
        if threads < 1:
            raise ValueError(f"threads must be >= 1, got {threads}")
        if max_nodes is not None and max_nodes < 1:
            raise ValueError(f"max_nodes must be >= 1, got {max_nodes}")
        self.threads = threads
        self.split_depth = split_depth
        self.max_nodes = max_nodes

    def decide(self, order: int, m: int, n: int) -> EngineResult:
        if self.threads == 1:
            search = _EdgeSearch(order, m, n, self.max_nodes)
            try:
                found = search.run()
            except _NodeLimitReached:
                logger.warning(f"DFS on K_{order} for (B_{m}, B_{n}) stopped undecided after {self.max_nodes} nodes")
                return EngineResult(arrows=None, red=None, nodes=search.nodes)
            logger.debug(f"DFS on K_{order} for (B_{m}, B_{n}) visited {search.nodes} nodes")
            return EngineResult(arrows=not found, red=Graph(order, search.red) if found else None, nodes=search.nodes)

        depth = self.split_depth if self.split_depth is not None else order - 1 + 3
        splitter = _EdgeSearch(order, m, n)
        prefixes = splitter.prefixes(depth)
        start = min(depth, len(splitter.edges))
        logger.info(f"Splitting K_{order} search into {len(prefixes)} subtrees over {self.threads} processes")
        tasks = [(order, m, n, red, blue, start, self.max_nodes) for red, blue in prefixes]
        nodes = splitter.nodes
        witness: list[int] | None = None
        complete = True
        # results come back in prefix order, so the first witness is the one a sequential search finds
        with ProcessPoolExecutor(max_workers=self.threads) as pool:
            for rows, count, finished in pool.map(_search_subtree, tasks):
                nodes += count
                complete = complete and finished
                if witness is None and rows is not None:
                    witness = rows
        if witness is None and not complete:
            logger.warning(f"Split DFS on K_{order} for (B_{m}, B_{n}) stopped undecided at {self.max_nodes} nodes")
            return EngineResult(arrows=None, red=None, nodes=nodes)
        return EngineResult(arrows=witness is None, red=Graph(order, witness) if witness else None, nodes=nodes)


class EnumerationEngine(ArrowingEngine):
    """
    Literal enumeration of all 2^{C(N,2)} colourings, for N <= 6.

    Colouring number ``mask`` has edge i (in lexicographic order) red iff bit i of
    ``mask`` is set. Books are measured with :func:`bookram.metrics.book_size`, so this
    engine shares no code with the DFS pruning.
    """

    name = "enumerate"

    def decide(self, order: int, m: int, n: int) -> EngineResult:
        if order > ENUMERATION_ORDER_CAP:
            raise FeasibilityCapError(f"Enumeration is limited to N <= {ENUMERATION_ORDER_CAP}, got N={order}")
        edges = [(u, v) for u in range(order) for v in range(u + 1, order)]
        for mask in range(1 << len(edges)):
            red = Graph.from_edges(order, (e for i, e in enumerate(edges) if mask >> i & 1))
            red_bs = book_size(red)
            blue_bs = book_size(complement(red))
            if (red_bs is None or red_bs < m) and (blue_bs is None or blue_bs < n):
                return EngineResult(arrows=False, red=red, nodes=mask + 1)
        return EngineResult(arrows=True, red=None, nodes=1 << len(edges))


ENGINES: dict[str, type[ArrowingEngine]] = {"dfs": DFSEngine, "enumerate": EnumerationEngine}

"""
bookram graph primitives.

This file contains the immutable simple graph used by every other bookram module.
Each vertex stores its neighbourhood as a bitset (a python ``int``), so that the
neighbourhood intersections that dominate counting and search are single
word-parallel ``&`` operations followed by ``int.bit_count()``.

Vertices are always labelled ``0..order-1``. The only interchange format is
graph6, see https://users.cecs.anu.edu.au/~bdm/data/formats.txt

:copyright: 2024 by the bookram developers
:license: LGPL, see LICENSE for more details.

"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np
from monty.json import MSONable

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Sequence

logger = logging.getLogger(__name__)

GRAPH6_HEADER = ">>graph6<<"
# largest order representable by the 4-byte ("~" + 18 bits) size field
_G6_MEDIUM_ORDER = 258047


class Graph6Error(ValueError):
    """Raised when a graph6 string cannot be decoded. ``offset`` is the position of the bad byte."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def iter_bits(bits: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``bits`` in increasing order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@dataclass(frozen=True)
class VertexSet(MSONable):
    """
    A set of vertices of a graph of fixed order, stored as a bitset.

    Args:
        order: the order of the graph the set belongs to.
        bits: bit ``v`` is set iff vertex ``v`` is a member.
    """

    order: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError(f"Invalid order {self.order} for a VertexSet")
        if self.bits < 0 or self.bits >> self.order:
            raise ValueError(f"VertexSet has members outside 0..{self.order - 1}")

    @classmethod
    def from_vertices(cls, order: int, vertices: Iterable[int]) -> VertexSet:
        """Create a VertexSet from an iterable of vertex indices."""
        bits = 0
        for v in vertices:
            if not 0 <= v < order:
                raise ValueError(f"Vertex {v} is out of range for order {order}")
            bits |= 1 << v
        return cls(order, bits)

    @classmethod
    def full(cls, order: int) -> VertexSet:
        """Return the set of all vertices ``0..order-1``."""
        return cls(order, (1 << order) - 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and 0 <= v < self.order and bool(self.bits >> v & 1)

    def _check(self, other: VertexSet) -> None:
        if self.order != other.order:
            raise ValueError(f"Cannot combine VertexSets of order {self.order} and {other.order}")

    def __or__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.order, self.bits | other.bits)

    def __and__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.order, self.bits & other.bits)

    def __sub__(self, other: VertexSet) -> VertexSet:
        self._check(other)
        return VertexSet(self.order, self.bits & ~other.bits)

    def complement(self) -> VertexSet:
        """Return the vertices of the graph that are not in this set."""
        return VertexSet(self.order, ((1 << self.order) - 1) & ~self.bits)

    def isdisjoint(self, other: VertexSet) -> bool:
        self._check(other)
        return not self.bits & other.bits

    def to_list(self) -> list[int]:
        """Return the members in increasing order."""
        return list(iter_bits(self.bits))

    def __repr__(self) -> str:
        return f"VertexSet({self.to_list()}, order={self.order})"


class Graph(MSONable):
    """
    Immutable simple undirected graph with bitset adjacency rows.

    Instances are hashable and compare equal iff they have the same order and the
    same labelled edge set.
    """

    def __init__(self, order: int, rows: Sequence[int]) -> None:
        """
        Args:
            order: number of vertices.
            rows: ``rows[v]`` is the neighbourhood N(v) as a bitset.

        Raises:
            ValueError if the rows are not symmetric, contain a loop, or reference a vertex >= order.
        """
        if order < 0:
            raise ValueError(f"Invalid graph order {order}")
        if len(rows) != order:
            raise ValueError(f"Expected {order} adjacency rows, got {len(rows)}")
        mask = (1 << order) - 1
        for v, row in enumerate(rows):
            if row < 0 or row & ~mask:
                raise ValueError(f"Row {v} references a vertex outside 0..{order - 1}")
            if row >> v & 1:
                raise ValueError(f"Vertex {v} is adjacent to itself")
            for w in iter_bits(row):
                if not rows[w] >> v & 1:
                    raise ValueError(f"Adjacency is not symmetric at edge {v}-{w}")
        self._order = order
        self._rows = tuple(int(r) for r in rows)

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> Graph:
        """Create a Graph on ``order`` vertices from an iterable of vertex pairs."""
        rows = [0] * order
        for u, v in edges:
            if u == v:
                raise ValueError(f"Loop at vertex {u} is not allowed in a simple graph")
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"Edge {u}-{v} is out of range for order {order}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, rows)

    @classmethod
    def from_adjacency(cls, matrix: np.ndarray) -> Graph:
        """Create a Graph from a square, symmetric 0/1 adjacency matrix."""
        a = np.asarray(matrix, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"Adjacency matrix must be square, got shape {a.shape}")
        rows = [int.from_bytes(np.packbits(r, bitorder="little").tobytes(), "little") for r in a]
        return cls(a.shape[0], rows)

    @property
    def order(self) -> int:
        """Number of vertices."""
        return self._order

    @property
    def rows(self) -> tuple[int, ...]:
        """Neighbourhood bitsets, one per vertex."""
        return self._rows

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Read-only boolean adjacency matrix."""
        n = self._order
        nbytes = max(1, (n + 7) // 8)
        a = np.zeros((n, n), dtype=bool)
        for v, row in enumerate(self._rows):
            a[v] = np.unpackbits(np.frombuffer(row.to_bytes(nbytes, "little"), dtype=np.uint8), bitorder="little")[:n]
        a.flags.writeable = False
        return a

    def vertex_set(self) -> VertexSet:
        """Return V(G)."""
        return VertexSet.full(self._order)

    def neighbors(self, v: int) -> VertexSet:
        """Return N(v)."""
        return VertexSet(self._order, self._rows[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self._rows]

    def min_degree(self) -> int:
        """Return the minimum degree, or 0 for the empty graph."""
        return min(self.degrees(), default=0)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    @cached_property
    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Return the edges as pairs ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u, row in enumerate(self._rows) for v in iter_bits(row >> (u + 1) << (u + 1))]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._order == other._order and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._order, self._rows))

    def __repr__(self) -> str:
        return f"Graph(order={self._order}, edges={self.edge_count}, graph6={to_graph6(self)!r})"

    def as_dict(self) -> dict:
        """Serialize as the graph6 string."""
        return {"@module": type(self).__module__, "@class": type(self).__name__, "graph6": to_graph6(self)}

    @classmethod
    def from_dict(cls, d: dict) -> Graph:
        return from_graph6(d["graph6"])


def _decode_size(body: str, base: int) -> tuple[int, int]:
    """Decode the graph6 order field. Returns (order, number of header bytes)."""
    if not body:
        raise Graph6Error("missing length header", base)
    if body[0] != "~":
        return ord(body[0]) - 63, 1
    if len(body) >= 2 and body[1] != "~":
        if len(body) < 4:
            raise Graph6Error("truncated 4-byte length header", base + len(body))
        n = 0
        for ch in body[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        return n, 4
    if len(body) < 8:
        raise Graph6Error("truncated 8-byte length header", base + len(body))
    n = 0
    for ch in body[2:8]:
        n = (n << 6) | (ord(ch) - 63)
    return n, 8


def from_graph6(text: str) -> Graph:
    """
    Decode a graph6 string.

    Args:
        text: one graph6 line. Surrounding whitespace and an optional ">>graph6<<"
            header are tolerated.

    Returns:
        The decoded Graph.

    Raises:
        Graph6Error if the length header is malformed, a byte is outside the printable
        range 63..126, the number of data bytes is wrong, or the padding bits are nonzero.
    """
    s = text.strip()
    base = 0
    if s.startswith(GRAPH6_HEADER):
        base = len(GRAPH6_HEADER)
        s = s[base:]
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"non-printable byte {ord(ch)!r}", base + i)

    n, pos = _decode_size(s, base)
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    if len(s) - pos != nbytes:
        raise Graph6Error(f"expected {nbytes} data bytes for order {n}, found {len(s) - pos}", base + pos)

    value = 0
    for ch in s[pos:]:
        value = (value << 6) | (ord(ch) - 63)
    pad = 6 * nbytes - nbits
    if value & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", base + len(s) - 1)
    value >>= pad

    rows = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if value >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k -= 1
    return Graph(n, rows)


def to_graph6(g: Graph) -> str:
    """
    Encode a Graph as a graph6 string (no header, no newline).

    The upper triangle is written column by column, most significant bit first,
    in 6-bit groups offset by 63 and zero padded.
    """
    n = g.order
    if n <= 62:
        size = chr(63 + n)
    elif n <= _G6_MEDIUM_ORDER:
        size = "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    else:
        size = "~~" + "".join(chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0))

    rows = g.rows
    value = 0
    nbits = 0
    for j in range(1, n):
        rj = rows[j]
        for i in range(j):
            value = (value << 1) | (rj >> i & 1)
        nbits += j
    pad = -nbits % 6
    value <<= pad
    nbytes = (nbits + pad) // 6
    data = "".join(chr(63 + (value >> (6 * (nbytes - 1 - t)) & 63)) for t in range(nbytes))
    return size + data


def read_graph6_file(filename: str | Path, index: int = 0) -> Graph:
    """
    Read one graph from a graph6 file (one graph per line).

    Args:
        filename: path to the file.
        index: which non-blank line to decode. Defaults to the first.

    Raises:
        FileNotFoundError: if the file does not exist.
        Graph6Error: if the selected line is not valid graph6.
    """
    path = Path(filename)
    if not path.exists():
        raise FileNotFoundError(f"File '{filename}' not found!")
    lines = [line for line in path.read_text(encoding="ascii", errors="replace").splitlines() if line.strip()]
    if not 0 <= index < len(lines):
        raise ValueError(f"File '{filename}' has {len(lines)} graphs, cannot read graph {index}")
    logger.debug(f"Reading graph {index} of {len(lines)} from {filename}")
    return from_graph6(lines[index])


def write_graph6_file(graphs: Graph | Iterable[Graph], filename: str | Path) -> None:
    """Write one or more graphs to ``filename``, one graph6 line each."""
    if isinstance(graphs, Graph):
        graphs = [graphs]
    Path(filename).write_text("".join(to_graph6(g) + "\n" for g in graphs), encoding="ascii")


def complement(g: Graph) -> Graph:
    """Return the complement: uv is an edge iff it is not an edge of ``g`` (u != v)."""
    mask = (1 << g.order) - 1
    return Graph(g.order, [~row & mask & ~(1 << v) for v, row in enumerate(g.rows)])


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.order:
        raise ValueError(f"Vertex {v} is out of range for a graph of order {g.order}")


def common_neighbors(g: Graph, u: int, v: int) -> int:
    """
    Return c(u, v) = |N(u) ∩ N(v)|.

    Raises:
        ValueError if u == v or either vertex is out of range.
    """
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise ValueError(f"common_neighbors needs two distinct vertices, got {u} twice")
    return (g.rows[u] & g.rows[v]).bit_count()


def _check_set(g: Graph, x: VertexSet) -> None:
    if x.bits >> g.order:
        raise ValueError(f"VertexSet has members outside 0..{g.order - 1}")


def induced_subgraph(g: Graph, x: VertexSet) -> Graph:
    """
    Return G[X].

    Vertices are relabelled ``0..|X|-1`` following the increasing order of X, so the
    list ``x.to_list()`` maps new labels back to the original ones.
    """
    _check_set(g, x)
    verts = x.to_list()
    pos = {v: i for i, v in enumerate(verts)}
    rows = []
    for v in verts:
        new = 0
        for w in iter_bits(g.rows[v] & x.bits):
            new |= 1 << pos[w]
        rows.append(new)
    return Graph(len(verts), rows)


def edges_between(g: Graph, u: VertexSet, w: VertexSet) -> int:
    """
    Return e(U, W), the number of edges with one end in U and the other in W.

    Raises:
        ValueError if U and W overlap.
    """
    _check_set(g, u)
    _check_set(g, w)
    if u.bits & w.bits:
        raise ValueError("edges_between requires disjoint vertex sets")
    return sum((g.rows[v] & w.bits).bit_count() for v in iter_bits(u.bits))


def is_bipartite(g: Graph) -> tuple[VertexSet, VertexSet] | None:
    """
    Return a bipartition (A, B) with no edge inside A or inside B, or None if g has an odd cycle.

    The search is a breadth-first 2-colouring started from the smallest uncoloured
    vertex of each component, which is always placed in A.
    """
    side: list[int | None] = [None] * g.order
    for start in range(g.order):
        if side[start] is not None:
            continue
        side[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in iter_bits(g.rows[v]):
                if side[w] is None:
                    side[w] = 1 - side[v]  # type: ignore[operator]
                    queue.append(w)
                elif side[w] == side[v]:
                    return None
    a = VertexSet.from_vertices(g.order, (v for v in range(g.order) if side[v] == 0))
    return a, a.complement()


def has_triangle(g: Graph) -> tuple[int, int, int] | None:
    """Return the lexicographically first triangle ``(u, v, w)`` with ``u < v < w``, or None."""
    rows = g.rows
    for u in range(g.order):
        for v in iter_bits(rows[u] >> (u + 1) << (u + 1)):
            common = rows[u] & rows[v] & ~((1 << (v + 1)) - 1)
            if common:
                return u, v, (common & -common).bit_length() - 1
    return None


def has_clique(g: Graph, r: int) -> tuple[int, ...] | None:
    """Return the lexicographically first clique on ``r`` vertices, or None if g is K_r-free."""
    if r <= 0:
        return ()
    rows = g.rows

    def extend(clique: tuple[int, ...], candidates: int) -> tuple[int, ...] | None:
        if len(clique) == r:
            return clique
        if candidates.bit_count() < r - len(clique):
            return None
        for v in iter_bits(candidates):
            found = extend((*clique, v), candidates & rows[v] & ~((1 << (v + 1)) - 1))
            if found is not None:
                return found
        return None

    return extend((), (1 << g.order) - 1)

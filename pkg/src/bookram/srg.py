"""
bookram strongly regular graphs.

Paley graphs over GF(q), verification of strongly regular parameters, and
lower-bound certificates for book Ramsey numbers. A (v,k,λ,μ) graph G has
bs(G) = λ and bs(complement(G)) = v − 2k + μ − 2, so colouring K_v red along G
shows r(B_{λ+1}, B_{v−2k+μ−1}) >= v + 1.

:copyright: 2024 by the bookram developers
:license: LGPL, see LICENSE for more details.

"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from pathlib import Path

import numpy as np
from monty.json import MSONable
from monty.serialization import loadfn
from sympy import factorint
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_add, gf_irreducible_p, gf_mul, gf_rem, gf_sub

from bookram import CorollaryDB
from bookram.graph import Graph, complement, from_graph6, read_graph6_file, to_graph6
from bookram.metrics import book_size
from bookram.utils import data_dir

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SrgParams(MSONable):
    """
    Parameters (v, k, λ, μ) of a strongly regular graph.

    Raises:
        ValueError if the parameters violate 0 <= k < v, 0 <= λ <= k − 1, 0 <= μ <= k or
        the feasibility condition k(k − λ − 1) = (v − k − 1)μ.
    """

    v: int
    k: int
    lam: int
    mu: int

    def __post_init__(self) -> None:
        v, k, lam, mu = self.v, self.k, self.lam, self.mu
        if not 0 <= k < v:
            raise ValueError(f"Invalid degree k={k} for v={v}")
        if lam < 0 or (k >= 1 and lam > k - 1) or not 0 <= mu <= k:
            raise ValueError(f"Invalid (λ, μ) = ({lam}, {mu}) for k={k}")
        if k * (k - lam - 1) != (v - k - 1) * mu:
            raise ValueError(f"Parameters ({v},{k},{lam},{mu}) fail k(k − λ − 1) = (v − k − 1)μ")

    @classmethod
    def from_string(cls, text: str) -> SrgParams:
        """Parse ``"v,k,λ,μ"``, the key format of the exact-values database."""
        try:
            v, k, lam, mu = (int(x) for x in text.split(","))
        except ValueError:
            raise ValueError(f"Expected 'v,k,lambda,mu', got {text!r}")
        return cls(v, k, lam, mu)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return self.v, self.k, self.lam, self.mu

    def as_record(self) -> dict:
        return {"v": self.v, "k": self.k, "lambda": self.lam, "mu": self.mu}

    def __str__(self) -> str:
        return f"({self.v},{self.k},{self.lam},{self.mu})"


def srg_complement_params(p: SrgParams) -> SrgParams:
    """Return the parameters (v, v−k−1, v−2k+μ−2, v−2k+λ) of the complement of a (v,k,λ,μ) graph."""
    return SrgParams(p.v, p.v - p.k - 1, p.v - 2 * p.k + p.mu - 2, p.v - 2 * p.k + p.lam)


def is_prime_power(q: int) -> bool:
    """Return True if q = p^e for a prime p and e >= 1."""
    return q >= 2 and len(factorint(q)) == 1


class GaloisField:
    """
    The finite field GF(p^e).

    Elements are the integers ``0..q-1``; the base-p digits of an integer are the
    coefficients of its polynomial representative, least significant digit first.
    For e > 1 arithmetic is in GF(p)[x] modulo the lexicographically smallest monic
    irreducible polynomial of degree e; for e = 1 it is plain modular arithmetic.
    """

    def __init__(self, q: int) -> None:
        """
        Args:
            q: the field order, a prime power.

        Raises:
            ValueError if q is not a prime power.
        """
        if not is_prime_power(q):
            raise ValueError(f"{q} is not a prime power")
        ((p, e),) = factorint(q).items()
        self.q = q
        self.p = int(p)
        self.e = int(e)
        self.modulus: tuple[int, ...] = (1, 0)
        if self.e > 1:
            for tail in product(range(self.p), repeat=self.e):
                poly = [1, *tail]
                if gf_irreducible_p(poly, self.p, ZZ):
                    self.modulus = tuple(poly)
                    break
            logger.debug(f"GF({q}) reduces modulo {self.modulus}")

    def to_poly(self, x: int) -> list[int]:
        """Return the coefficient list of x, highest degree first (galoistools convention)."""
        digits = []
        while x:
            x, d = divmod(x, self.p)
            digits.append(d)
        return digits[::-1]

    def from_poly(self, poly: list[int]) -> int:
        x = 0
        for c in poly:
            x = x * self.p + int(c)
        return x

    def add(self, x: int, y: int) -> int:
        if self.e == 1:
            return (x + y) % self.p
        return self.from_poly(gf_add(self.to_poly(x), self.to_poly(y), self.p, ZZ))

    def sub(self, x: int, y: int) -> int:
        if self.e == 1:
            return (x - y) % self.p
        return self.from_poly(gf_sub(self.to_poly(x), self.to_poly(y), self.p, ZZ))

    def mul(self, x: int, y: int) -> int:
        if self.e == 1:
            return x * y % self.p
        product_ = gf_mul(self.to_poly(x), self.to_poly(y), self.p, ZZ)
        return self.from_poly(gf_rem(product_, list(self.modulus), self.p, ZZ))

    def neg(self, x: int) -> int:
        return self.sub(0, x)

    def elements(self) -> range:
        return range(self.q)

    def squares(self) -> frozenset[int]:
        """Return the set of nonzero squares {x² : x != 0}."""
        return frozenset(self.mul(x, x) for x in range(1, self.q))


def paley(q: int) -> Graph:
    """
    Return the Paley graph on GF(q).

    Vertex x is the field element with integer label x (see GaloisField); x ~ y iff
    x − y is a nonzero square. For a prime q, paley(q) is the circulant graph on
    Z_q with connection set the quadratic residues, e.g. paley(5) is C_5 labelled
    in cyclic order.

    Args:
        q: a prime power with q ≡ 1 (mod 4).

    Raises:
        ValueError if q is not a prime power or q ≢ 1 (mod 4).
    """
    if q % 4 != 1:
        raise ValueError(f"Paley graphs need q ≡ 1 (mod 4), got q={q}")
    field = GaloisField(q)
    squares = field.squares()
    if field.neg(1) not in squares:
        raise RuntimeError(f"-1 is not a square in GF({q}); the Paley relation would not be symmetric")
    rows = [0] * q
    for x in range(q):
        for y in range(x + 1, q):
            if field.sub(x, y) in squares:
                rows[x] |= 1 << y
                rows[y] |= 1 << x
    logger.info(f"Constructed Paley graph of order {q}")
    return Graph(q, rows)


def verify_srg(g: Graph) -> SrgParams | None:
    """
    Return the strongly regular parameters of g, or None if g is not strongly regular.

    Complete and edgeless graphs are rejected since one of λ, μ is undefined for them.

    Raises:
        RuntimeError if the measured parameters violate the feasibility condition.
    """
    n = g.order
    if n < 2:
        return None
    degrees = g.degrees()
    k = degrees[0]
    if any(d != k for d in degrees) or k == 0 or k == n - 1:
        return None
    a = g.adjacency
    common = a.astype(np.int64) @ a.astype(np.int64)
    off_diagonal = ~np.eye(n, dtype=bool)
    on_edges = common[a]
    on_non_edges = common[~a & off_diagonal]
    if on_edges.min() != on_edges.max() or on_non_edges.min() != on_non_edges.max():
        return None
    lam, mu = int(on_edges[0]), int(on_non_edges[0])
    if k * (k - lam - 1) != (n - k - 1) * mu:
        raise RuntimeError(f"Measured parameters ({n},{k},{lam},{mu}) are infeasible")
    return SrgParams(n, k, lam, mu)


def srg_book_bound(p: SrgParams) -> tuple[int, int, int]:
    """
    Return (m, n, bound) = (λ + 1, v − 2k + μ − 1, v + 1): a (v,k,λ,μ) graph shows r(B_m, B_n) >= bound.

    Raises:
        ValueError if v − 2k + μ − 1 < 1, where the certificate would be vacuous.
    """
    m = p.lam + 1
    n = p.v - 2 * p.k + p.mu - 1
    if n < 1:
        raise ValueError(f"SRG {p} gives blue page target {n} < 1; the certificate is vacuous")
    return m, n, p.v + 1


@dataclass
class LowerBoundCertificate(MSONable):
    """
    A colouring of K_order whose red graph is ``witness``, showing r(B_m, B_n) >= bound.

    Attributes:
        m: red page target, bs(witness) + 1.
        n: blue page target, bs(complement(witness)) + 1.
        bound: order(witness) + 1.
        witness: the red graph.
        red_bs: bs(witness), None if the witness has no edges.
        blue_bs: bs(complement(witness)), None if the complement has no edges.
        srg_params: the witness parameters when it is strongly regular.
        degenerate: True when either side has no edges at all.
    """

    m: int
    n: int
    bound: int
    witness: Graph
    red_bs: int | None
    blue_bs: int | None
    srg_params: SrgParams | None = None
    degenerate: bool = False

    def __post_init__(self) -> None:
        if self.bound != self.witness.order + 1:
            raise ValueError(f"Certificate bound {self.bound} must equal witness order + 1 = {self.witness.order + 1}")
        actual = (book_size(self.witness), book_size(complement(self.witness)))
        if (self.red_bs, self.blue_bs) != actual:
            raise ValueError(
                f"Certificate claims book sizes (red, blue) = {(self.red_bs, self.blue_bs)} "
                f"but the witness has {actual}"
            )
        if self.red_bs is not None and self.red_bs > self.m - 1:
            raise ValueError(f"Witness has a red book with {self.red_bs} pages, so it cannot avoid B_{self.m}")
        if self.blue_bs is not None and self.blue_bs > self.n - 1:
            raise ValueError(f"Witness has a blue book with {self.blue_bs} pages, so it cannot avoid B_{self.n}")

    @property
    def order(self) -> int:
        return self.witness.order

    def applies_to(self, m: int, n: int) -> bool:
        """Return True if the certificate also bounds r(B_m, B_n), directly or with colours swapped."""
        return (m >= self.m and n >= self.n) or (m >= self.n and n >= self.m)

    def as_record(self) -> dict:
        record = {
            "m": self.m,
            "n": self.n,
            "bound": self.bound,
            "order": self.order,
            "red_bs": self.red_bs,
            "blue_bs": self.blue_bs,
            "graph6": to_graph6(self.witness),
        }
        if self.srg_params is not None:
            record["srg_params"] = self.srg_params.as_record()
        if self.degenerate:
            record["degenerate"] = True
        return record

    @classmethod
    def from_record(cls, record: dict) -> LowerBoundCertificate:
        """
        Rebuild a certificate from its JSON record, recomputing every claim from the graph.

        Raises:
            ValueError if the recorded (m, n, bound) differ from the recomputed ones.
        """
        cert = certify(from_graph6(record["graph6"]))
        claimed = (record.get("m"), record.get("n"), record.get("bound"))
        if claimed != (cert.m, cert.n, cert.bound):
            raise ValueError(
                f"Certificate claims (m, n, bound) = {claimed} but the witness gives {(cert.m, cert.n, cert.bound)}"
            )
        return cert

    def __str__(self) -> str:
        return f"r(B_{self.m}, B_{self.n}) >= {self.bound}"


def certify(g: Graph) -> LowerBoundCertificate:
    """
    Turn a red graph into a lower-bound certificate.

    With a = bs(g) and b = bs(complement(g)) the certificate states
    r(B_{a+1}, B_{b+1}) >= order + 1. A side without edges counts as 0 pages and
    marks the certificate degenerate.

    Raises:
        RuntimeError if g is strongly regular but its book sizes disagree with its parameters.
    """
    red_bs = book_size(g)
    blue_bs = book_size(complement(g))
    params = verify_srg(g)
    if params is not None and (red_bs, blue_bs) != (params.lam, params.v - 2 * params.k + params.mu - 2):
        raise RuntimeError(f"SRG {params} has book sizes ({red_bs}, {blue_bs}) inconsistent with its parameters")
    degenerate = red_bs is None or blue_bs is None
    if degenerate:
        logger.warning(f"Degenerate certificate: a colour class of the order-{g.order} witness has no edges")
    return LowerBoundCertificate(
        m=(red_bs or 0) + 1,
        n=(blue_bs or 0) + 1,
        bound=g.order + 1,
        witness=g,
        red_bs=red_bs,
        blue_bs=blue_bs,
        srg_params=params,
        degenerate=degenerate,
    )


def certificate_from_file(filename: str | Path, index: int = 0) -> LowerBoundCertificate:
    """
    Build a certificate from a graph6 file, or reload one from its JSON record.

    Files ending in ``.json`` are read as certificate records and re-validated;
    anything else is read as graph6.
    """
    path = Path(filename)
    if path.suffix == ".json":
        if not path.exists():
            raise FileNotFoundError(f"File '{filename}' not found!")
        return LowerBoundCertificate.from_record(loadfn(path))
    return certify(read_graph6_file(path, index=index))


@dataclass(frozen=True)
class CorollaryRow:
    """One row of the table of strongly regular graphs that determine r(B_m, B_n) exactly."""

    params: SrgParams
    m: int
    n: int
    r: int
    witness: str | None


def corollary_rows() -> list[CorollaryRow]:
    """Return the sixteen rows of the exact-values table, sorted by (m, n)."""
    rows = [
        CorollaryRow(
            params=SrgParams(doc["v"], doc["k"], doc["lambda"], doc["mu"]),
            m=doc["m"],
            n=doc["n"],
            r=doc["r"],
            witness=doc.get("witness"),
        )
        for doc in CorollaryDB.query({})
    ]
    return sorted(rows, key=lambda row: (row.m, row.n))


def load_witness(row: CorollaryRow) -> Graph | None:
    """
    Load the witness graph of a Corollary row from the data directory.

    Returns:
        The witness, or None when the row has no witness file or the file is missing.

    Raises:
        ValueError if the file holds a graph whose parameters differ from the row's.
    """
    if row.witness is None:
        return None
    path = data_dir() / row.witness
    if not path.exists():
        logger.warning(f"Witness file {path} for SRG {row.params} is missing")
        return None
    g = read_graph6_file(path)
    found = verify_srg(g)
    if found != row.params:
        raise ValueError(f"Witness file {path} holds a graph with parameters {found}, expected {row.params}")
    logger.info(f"Loaded witness {row.params} from {path}")
    return g

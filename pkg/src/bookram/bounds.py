"""
bookram bounds.

Closed-form upper and lower bounds for book Ramsey numbers r(B_m, B_n), and their
combination with lower-bound certificates into a best-known interval. All
arithmetic is over the integers; the square root in Parsons' bound is an exact
integer square root.

:copyright: 2024 by the bookram developers
:license: LGPL, see LICENSE for more details.

"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import isqrt
from typing import TYPE_CHECKING

from monty.json import MSONable

from bookram.srg import is_prime_power

if TYPE_CHECKING:
    from collections.abc import Iterable

    from bookram.srg import LowerBoundCertificate

logger = logging.getLogger(__name__)

# the constant c of the asymptotic result, instantiated from the hypothesis n >= 10^6 m
NR_CONSTANT = 10**6


def _check_pages(**pages: int) -> None:
    for name, value in pages.items():
        if value < 1:
            raise ValueError(f"Page count {name}={value} must be a positive integer")


def parsons_upper(m: int, n: int) -> int:
    """
    Return m + n + 2 + floor((2/3)·sqrt(3(m² + mn + n²))).

    The floor is the largest k with 9k² <= 12(m² + mn + n²), i.e. isqrt(4s // 3).

    Examples:
        >>> parsons_upper(2, 5)
        16
        >>> parsons_upper(7, 7)
        30
    """
    _check_pages(m=m, n=n)
    s = m * m + m * n + n * n
    return m + n + 2 + isqrt(4 * s // 3)


def small_gap_upper(m: int, n: int) -> int | None:
    """Return 2(m + n + 1) if 6(m + n + 1) > |n − m|³, else None."""
    _check_pages(m=m, n=n)
    if 6 * (m + n + 1) > abs(n - m) ** 3:
        return 2 * (m + n + 1)
    return None


def mod3_upper(m: int, n: int) -> int | None:
    """Return 4a + 5 when {m, n} = {a, a + 2} with a ≡ 0 (mod 3), else None."""
    _check_pages(m=m, n=n)
    a, b = min(m, n), max(m, n)
    if b == a + 2 and a % 3 == 0:
        return 4 * a + 5
    return None


def b2_upper(n: int) -> int:
    """
    Return the upper bound on r(B_2, B_n).

    Raises:
        ValueError if n < 2.
    """
    if n < 2:
        raise ValueError(f"The B_2 table starts at n = 2, got n={n}")
    if n <= 11:
        return 2 * n + 6
    if n <= 22:
        return 2 * n + 5
    if n <= 37:
        return 2 * n + 4
    return 2 * n + 3


def frs_exact_threshold(m: int) -> int:
    """
    Return (m − 1)(16m³ + 16m² − 24m − 10) + 1; for n at or above it r(B_m, B_n) = 2n + 3.

    Raises:
        ValueError if m < 2. r(B_1, B_n) is covered by :func:`theorem1_exact`.
    """
    if m < 2:
        raise ValueError(f"The threshold needs m >= 2, got m={m}")
    return (m - 1) * (16 * m**3 + 16 * m**2 - 24 * m - 10) + 1


def nr_exact_threshold(m: int) -> int:
    """Return the smallest n with 2n + 3 >= 10^6·m, i.e. ceil((10^6·m − 3)/2)."""
    _check_pages(m=m)
    return -(-(NR_CONSTANT * m - 3) // 2)


def theorem1_exact(m: int, n: int) -> int | None:
    """Return r(B_1, B_n) = 2n + 3 (either order) for n > 1, else None. r(B_1, B_1) is excluded."""
    a, b = min(m, n), max(m, n)
    if a == 1 and b > 1:
        return 2 * b + 3
    return None


def trivial_lower(m: int, n: int) -> int:
    """
    Return 2·max(m, n) + 3.

    With t = max(m, n), colour K_{2t+2} red along K_{t+1,t+1}: the red graph has no
    triangle and the blue graph is 2K_{t+1} with book size t − 1.
    """
    _check_pages(m=m, n=n)
    return 2 * max(m, n) + 3


def paley_diagonal_exact(n: int) -> int | None:
    """Return r(B_n, B_n) = 4n + 2 when 4n + 1 is a prime power, else None."""
    _check_pages(n=n)
    if is_prime_power(4 * n + 1):
        return 4 * n + 2
    return None


def f_upper(m: int) -> int:
    """
    Return the best known f(m): r(B_m, B_n) = 2n + 3 holds for every n >= f(m).

    f(1) = 2 and f(2) <= 38 come from the exact B_1 value and the B_2 table; larger m
    use the smaller of the two general thresholds.
    """
    _check_pages(m=m)
    if m == 1:
        return 2
    best = min(frs_exact_threshold(m), nr_exact_threshold(m))
    return min(best, 38) if m == 2 else best


@dataclass
class BoundInterval(MSONable):
    """
    The best known interval [lower, upper] containing r(B_m, B_n).

    ``provenance`` lists every rule evaluated as ``{"rule", "value", "applicable"}``,
    including the inapplicable ones and any skipped certificates.
    """

    m: int
    n: int
    lower: int
    upper: int
    provenance: list[dict] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def as_record(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "provenance": [dict(p) for p in self.provenance],
        }

    def __str__(self) -> str:
        if self.exact:
            return f"r(B_{self.m}, B_{self.n}) = {self.lower}"
        return f"{self.lower} <= r(B_{self.m}, B_{self.n}) <= {self.upper}"


def best_bounds(m: int, n: int, certificates: Iterable[LowerBoundCertificate] = ()) -> BoundInterval:
    """
    Combine every applicable rule and certificate into a BoundInterval.

    The pair is normalised to a = min(m, n), b = max(m, n) first, so the result is
    symmetric in m and n. A certificate applies when it avoids books no larger than
    the requested ones (possibly with colours swapped); other certificates are listed
    in the provenance as inapplicable.

    Args:
        m: red page target, >= 1.
        n: blue page target, >= 1.
        certificates: lower-bound certificates to consider.

    Raises:
        ValueError if m or n is not a positive integer.
        RuntimeError if the resulting interval is empty.
    """
    _check_pages(m=m, n=n)
    a, b = min(m, n), max(m, n)
    uppers: list[tuple[str, int | None]] = []
    lowers: list[tuple[str, int | None]] = []
    exacts: list[tuple[str, int | None]] = []

    exacts.append(("theorem1_exact", theorem1_exact(a, b)))
    uppers.append(("parsons_upper", parsons_upper(a, b)))
    uppers.append(("small_gap_upper", small_gap_upper(a, b)))
    uppers.append(("mod3_upper", mod3_upper(a, b)))
    uppers.append(("b2_upper", b2_upper(b) if a == 2 else None))
    exacts.append(("frs_exact", 2 * b + 3 if a >= 2 and b >= frs_exact_threshold(a) else None))
    exacts.append((f"nr_exact (c = {NR_CONSTANT})", 2 * b + 3 if b >= nr_exact_threshold(a) else None))
    lowers.append(("trivial_lower", trivial_lower(a, b)))

    provenance = [
        {"rule": rule, "value": value, "applicable": value is not None} for rule, value in exacts + uppers + lowers
    ]
    for cert in certificates:
        applies = cert.applies_to(a, b)
        if applies:
            lowers.append((f"certificate {cert}", cert.bound))
        else:
            logger.warning(f"Skipping certificate {cert}: it does not bound r(B_{m}, B_{n})")
        provenance.append({"rule": f"certificate {cert}", "value": cert.bound, "applicable": applies})

    upper = min(v for _, v in uppers + exacts if v is not None)
    lower = max(v for _, v in lowers + exacts if v is not None)
    if lower > upper:
        raise RuntimeError(f"Empty interval [{lower}, {upper}] for r(B_{m}, B_{n}); a rule or certificate is wrong")
    logger.debug(f"r(B_{m}, B_{n}) in [{lower}, {upper}]")
    return BoundInterval(m=m, n=n, lower=lower, upper=upper, provenance=provenance)

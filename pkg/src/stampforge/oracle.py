"""Independent brute-force ground truth at small lengths.

The enumeration here is deliberately naive: it walks the tree of
admissible prefixes using only the incremental upper bound (the next
element may not exceed the current range plus one) and recomputes every
sumset from scratch.  It shares nothing with the pruned enumerator
except the basis primitives, so the two can referee each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .basis import Basis, contiguous_range, sumset_bits

DEFAULT_LIMIT = 12


class OracleLimitError(ValueError):
    """Raised when a request exceeds the feasibility limit without an override."""


def _check_limit(value: int, limit: int, override: bool, what: str) -> None:
    if value > limit and not override:
        raise OracleLimitError(
            f"{what} {value} exceeds the oracle feasibility limit {limit}; "
            "pass override=True to force a (possibly very long) run"
        )


def _walk(elements: list[int], depth: int, target: int) -> Iterator[tuple[int, ...]]:
    """Yield all admissible target-prefixes extending `elements`, lexicographically."""
    if depth == target:
        yield tuple(elements)
        return
    r = contiguous_range(sumset_bits(elements))
    for a in range(elements[-1] + 1, r + 2):
        elements.append(a)
        yield from _walk(elements, depth + 1, target)
        elements.pop()


def oracle_enumerate_admissible(
    k: int, limit: int = DEFAULT_LIMIT, override: bool = False
) -> Iterator[Basis]:
    """Every admissible basis of length k exactly once, in lexicographic order."""
    _check_limit(k, limit, override, "length")
    for elems in _walk([0], 0, k):
        # final admissibility check; the prefix recursion already implies it
        if contiguous_range(sumset_bits(elems)) >= elems[-1]:
            yield Basis(elems)


def oracle_count_prefixes(
    j: int, limit: int = DEFAULT_LIMIT, override: bool = False
) -> int:
    """Number of admissible j-prefixes (no constraints)."""
    _check_limit(j, limit, override, "prefix index")
    return sum(1 for _ in _walk([0], 0, j))


def oracle_n2(k: int, limit: int = DEFAULT_LIMIT, override: bool = False) -> int:
    """Maximum range over all admissible bases of length k."""
    _check_limit(k, limit, override, "length")
    best = 0
    for elems in _walk([0], 0, k):
        r = contiguous_range(sumset_bits(elems))
        if r > best:
            best = r
    return best


def oracle_n2_star(
    k: int, limit: int = DEFAULT_LIMIT, override: bool = False
) -> tuple[int, list[Basis]]:
    """Maximum range over restricted bases of length k, with all attaining bases."""
    _check_limit(k, limit, override, "length")
    best = 0
    bases: list[tuple[int, ...]] = []
    for elems in _walk([0], 0, k):
        r = contiguous_range(sumset_bits(elems))
        if r != 2 * elems[-1]:
            continue
        if r > best:
            best = r
            bases = [tuple(elems)]
        elif r == best:
            bases.append(tuple(elems))
    return best, [Basis(e) for e in bases]


@dataclass(frozen=True)
class OracleReport:
    """Exhaustive summary for one length: both extremal values and their bases."""

    k: int
    n2: int
    n2_star: int
    extremal_bases: list[Basis] = field(default_factory=list)
    extremal_restricted_bases: list[Basis] = field(default_factory=list)

    def as_json(self) -> dict:
        return {
            "k": self.k,
            "n2": self.n2,
            "n2_star": self.n2_star,
            "extremal_bases": [list(b.elements) for b in self.extremal_bases],
            "extremal_restricted_bases": [
                list(b.elements) for b in self.extremal_restricted_bases
            ],
        }


def oracle_report(k: int, limit: int = DEFAULT_LIMIT, override: bool = False) -> OracleReport:
    """One exhaustive pass computing n2, n2_star and both extremal basis sets."""
    _check_limit(k, limit, override, "length")
    n2 = 0
    n2_star = 0
    ext: list[tuple[int, ...]] = []
    ext_star: list[tuple[int, ...]] = []
    for elems in _walk([0], 0, k):
        r = contiguous_range(sumset_bits(elems))
        if r > n2:
            n2 = r
            ext = [tuple(elems)]
        elif r == n2:
            ext.append(tuple(elems))
        if r == 2 * elems[-1]:
            if r > n2_star:
                n2_star = r
                ext_star = [tuple(elems)]
            elif r == n2_star:
                ext_star.append(tuple(elems))
    return OracleReport(
        k=k,
        n2=n2,
        n2_star=n2_star,
        extremal_bases=[Basis(e) for e in ext],
        extremal_restricted_bases=[Basis(e) for e in ext_star],
    )

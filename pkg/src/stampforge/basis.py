"""Exact arithmetic on additive bases: sumsets, range, classification, mirroring.

An additive basis is a strictly increasing set of non-negative integers
starting at 0.  Its sumset is the set of all pairwise sums (repetition
allowed); the range is the largest n such that every integer in [0, n]
appears in the sumset.  A basis A with maximum element m is *admissible*
when its range is at least m, and *restricted* when its range equals 2m
(the sumset then covers [0, 2m] exactly).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union


class InvalidBasisError(ValueError):
    """Raised when a sequence violates the basis invariants."""


class NotationError(ValueError):
    """Raised when a basis line or token list cannot be parsed."""


def element_mask(elements: Iterable[int]) -> int:
    """Pack elements into an int bitset (bit i set iff i is an element)."""
    mask = 0
    for a in elements:
        mask |= 1 << a
    return mask


def sumset_bits(elements: Sequence[int]) -> int:
    """Bitset of all pairwise sums a + a' over the given elements.

    Built by OR-ing one shifted copy of the element mask per element,
    which is the dominant inner-loop cost everywhere in this package.
    """
    mask = element_mask(elements)
    bits = 0
    for a in elements:
        bits |= mask << a
    return bits


def contiguous_range(bits: int) -> int:
    """Largest n such that bits 0..n are all set (-1 if bit 0 is unset)."""
    # lowest zero bit of x is the lowest set bit of (~x & (x + 1))
    return (~bits & (bits + 1)).bit_length() - 2


@dataclass(frozen=True)
class Basis:
    """A strictly increasing tuple of non-negative integers starting at 0.

    A basis of length k holds k+1 elements; ``k`` is the number of
    non-zero elements.
    """

    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        elems = tuple(self.elements)
        if not elems:
            raise InvalidBasisError("basis must not be empty")
        if elems[0] != 0:
            raise InvalidBasisError(f"first element must be 0, got {elems[0]}")
        for prev, cur in zip(elems, elems[1:]):
            if cur <= prev:
                raise InvalidBasisError(
                    f"elements must be strictly increasing, got {prev} before {cur}"
                )
        object.__setattr__(self, "elements", elems)

    @classmethod
    def from_elements(cls, elements: Iterable[int]) -> "Basis":
        return cls(tuple(int(a) for a in elements))

    @property
    def k(self) -> int:
        return len(self.elements) - 1

    @property
    def max(self) -> int:
        return self.elements[-1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i: int) -> int:
        return self.elements[i]

    def __str__(self) -> str:
        return " ".join(str(a) for a in self.elements)


@dataclass(frozen=True)
class CoverageSet:
    """Bit-per-integer membership over [0, cap], used for sumsets."""

    cap: int
    bits: int

    def __contains__(self, value: int) -> bool:
        return 0 <= value <= self.cap and (self.bits >> value) & 1 == 1

    def members(self) -> list[int]:
        return [v for v in range(self.cap + 1) if (self.bits >> v) & 1]

    def largest_covered_prefix(self) -> int:
        """Largest n with every integer of [0, n] present."""
        return contiguous_range(self.bits)


@dataclass(frozen=True)
class BasisClass:
    """Classification of a basis: its range and the admissible/restricted flags."""

    range: int
    admissible: bool
    restricted: bool


def sumset(basis: Basis) -> CoverageSet:
    """Sumset of a basis as a CoverageSet with cap = 2 * max element."""
    return CoverageSet(cap=2 * basis.max, bits=sumset_bits(basis.elements))


def range_n2(basis: Basis) -> int:
    """Largest n such that the sumset of `basis` covers all of [0, n]."""
    return contiguous_range(sumset_bits(basis.elements))


def classify(basis: Basis) -> BasisClass:
    """Range plus admissible (range >= max) and restricted (range = 2 * max) flags."""
    r = range_n2(basis)
    m = basis.max
    return BasisClass(range=r, admissible=r >= m, restricted=r == 2 * m)


def mirror(basis: Basis) -> Basis:
    """Mirror image {max - a : a in basis}, sorted ascending."""
    m = basis.max
    return Basis(tuple(m - a for a in reversed(basis.elements)))


def is_symmetric(basis: Basis) -> bool:
    """True when the basis equals its own mirror image."""
    return mirror(basis) == basis


Token = Union[int, str]


def expand_ap_notation(tokens: Sequence[Token]) -> Basis:
    """Expand a token list with "+c" step tokens into a full basis.

    A step token "+c" between explicit values p and q expands to the
    arithmetic progression p, p+c, ..., q; the gap q - p must be a
    multiple of c.  Plain integer lists pass through unchanged.
    """
    elements: list[int] = []
    pending_step: int | None = None
    for tok in tokens:
        if isinstance(tok, str) and tok.startswith("+"):
            if pending_step is not None:
                raise NotationError("two consecutive step tokens")
            if not elements:
                raise NotationError("step token before any element")
            try:
                step = int(tok[1:])
            except ValueError:
                raise NotationError(f"bad step token {tok!r}") from None
            if step <= 0:
                raise NotationError(f"step must be positive, got {tok!r}")
            pending_step = step
            continue
        try:
            value = int(tok)
        except (TypeError, ValueError):
            raise NotationError(f"bad token {tok!r}") from None
        if pending_step is not None:
            start = elements[-1]
            gap = value - start
            if gap <= 0:
                raise NotationError(
                    f"step target {value} does not exceed start {start}"
                )
            if gap % pending_step != 0:
                raise NotationError(
                    f"gap {gap} from {start} to {value} not divisible by step {pending_step}"
                )
            elements.extend(range(start + pending_step, value + 1, pending_step))
            pending_step = None
        else:
            elements.append(value)
    if pending_step is not None:
        raise NotationError("dangling step token at end of input")
    if any(b <= a for a, b in zip(elements, elements[1:])):
        raise NotationError("elements must be strictly increasing")
    try:
        return Basis(tuple(elements))
    except InvalidBasisError as exc:
        raise NotationError(str(exc)) from None


def parse_basis_line(line: str) -> Basis:
    """Parse one whitespace-separated basis line; "+c" step tokens allowed."""
    tokens = line.split()
    if not tokens:
        raise NotationError("empty basis line")
    return expand_ap_notation(tokens)


def classify_json(basis: Basis) -> dict:
    """The wire form of a classified basis."""
    c = classify(basis)
    return {
        "k": basis.k,
        "n": c.range,
        "admissible": c.admissible,
        "restricted": c.restricted,
        "basis": list(basis.elements),
    }

"""Known extremal unrestricted ranges and the bounds they imply.

The table of extremal unrestricted ranges by length (OEIS A001212, known
up to length 24) drives three families of bounds on a restricted basis
of length k and even range n (so the maximum element is n/2):

* upper bound on element j:   n2(j-1) + 1
* lower bound on element j:   n/2 - n2(k-j-1) - 1   (clamped at 0)
* lower bound on the range of the j-prefix:   n/2 - n2(k-j-2) - 2

Where the table runs out, a bound is explicitly unknown (None) and
consumers treat it as "no constraint".
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources


class TableError(ValueError):
    """Raised on malformed or inconsistent table input."""


class ParameterError(ValueError):
    """Raised for invalid bound parameters (e.g. odd target range)."""


@dataclass(frozen=True)
class N2Table:
    """Partial map j -> extremal unrestricted range, contiguous from j=0."""

    values: tuple[int, ...]

    @property
    def j_max(self) -> int:
        return len(self.values) - 1

    def get(self, j: int) -> int | None:
        """Value at j, or None when j is beyond the known horizon."""
        if 0 <= j <= self.j_max:
            return self.values[j]
        return None


def load_n2_table(source: str | io.TextIOBase) -> N2Table:
    """Ingest a b-file: one "j value" pair per line, '#' comments, j from 1.

    A value for j=0 (always 0) is prepended.  Gaps, non-increasing values
    and malformed lines are rejected, naming the offending line.
    """
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = source.read().splitlines()
    values = [0]
    expected = 1
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise TableError(f"line {lineno}: expected 'j value', got {raw!r}")
        try:
            j, value = int(parts[0]), int(parts[1])
        except ValueError:
            raise TableError(f"line {lineno}: non-integer field in {raw!r}") from None
        if j != expected:
            raise TableError(f"line {lineno}: index {j}, expected {expected}")
        if value <= values[-1]:
            raise TableError(
                f"line {lineno}: value {value} not greater than previous {values[-1]}"
            )
        values.append(value)
        expected += 1
    if len(values) > 1 and values[1] != 2:
        raise TableError(f"value at j=1 must be 2 (the only basis is 0 1), got {values[1]}")
    return N2Table(tuple(values))


@lru_cache(maxsize=1)
def default_table() -> N2Table:
    """The packaged table (known up to length 24)."""
    text = resources.files("stampforge.data").joinpath("a001212.txt").read_text()
    return N2Table(tuple(load_n2_table(text).values))


def load_table_path(path: str | None) -> N2Table:
    """Table from a b-file path, or the packaged default when path is None."""
    if path is None:
        return default_table()
    with open(path, "r", encoding="utf-8") as fh:
        return load_n2_table(fh.read())


def _require_even(n: int) -> None:
    if n % 2 != 0:
        raise ParameterError(f"target range must be even (it is twice the maximum), got {n}")


def elementwise_upper(j: int, table: N2Table) -> int | None:
    """Upper bound on element j of any admissible basis, or None if unknown."""
    if j < 1:
        raise ParameterError(f"element upper bound needs j >= 1, got {j}")
    v = table.get(j - 1)
    return None if v is None else v + 1


def elementwise_lower(j: int, k: int, n: int, table: N2Table) -> int | None:
    """Lower bound on element j of a restricted basis (k, n), or None if unknown.

    Clamped below at 0; a negative bound is vacuous for non-negative elements.
    """
    _require_even(n)
    if not 0 <= j <= k - 1:
        raise ParameterError(f"element lower bound needs 0 <= j <= k-1, got j={j}, k={k}")
    v = table.get(k - j - 1)
    if v is None:
        return None
    return max(0, n // 2 - v - 1)


def range_lower(j: int, k: int, n: int, table: N2Table) -> int | None:
    """Lower bound on the range of the j-prefix of a restricted basis (k, n)."""
    _require_even(n)
    if not 0 <= j <= k - 2:
        raise ParameterError(f"range lower bound needs 0 <= j <= k-2, got j={j}, k={k}")
    v = table.get(k - j - 2)
    if v is None:
        return None
    return n // 2 - v - 2


def earliest_range_bound_index(k: int, table: N2Table) -> int:
    """Smallest prefix index whose range lower bound is known for length k."""
    return max(0, k - table.j_max - 2)


@dataclass(frozen=True)
class BoundProfile:
    """Per-index bounds for restricted bases with parameters (k, n).

    Entries are None where the bound is not defined or the table runs out:
    lower covers indices 0..k-1, upper 1..k, range_lower 0..k-2.
    """

    k: int
    n: int
    lower: tuple[int | None, ...]
    upper: tuple[int | None, ...]
    range_lower: tuple[int | None, ...]

    def csv_rows(self) -> list[str]:
        """Rows "j,lower,upper,range_lower" with "" for unknown entries."""
        def cell(v: int | None) -> str:
            return "" if v is None else str(v)

        return [
            f"{j},{cell(self.lower[j])},{cell(self.upper[j])},{cell(self.range_lower[j])}"
            for j in range(self.k + 1)
        ]


def bound_profile(k: int, n: int, table: N2Table) -> BoundProfile:
    """Assemble the three bound arrays for indices 0..k."""
    _require_even(n)
    if k < 1:
        raise ParameterError(f"profile needs k >= 1, got {k}")
    lower = tuple(
        elementwise_lower(j, k, n, table) if j <= k - 1 else None for j in range(k + 1)
    )
    upper = tuple(
        elementwise_upper(j, table) if j >= 1 else None for j in range(k + 1)
    )
    rng = tuple(
        range_lower(j, k, n, table) if j <= k - 2 else None for j in range(k + 1)
    )
    return BoundProfile(k=k, n=n, lower=lower, upper=upper, range_lower=rng)

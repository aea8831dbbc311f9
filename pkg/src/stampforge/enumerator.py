"""Depth-first enumeration of admissible prefixes with pluggable pruning.

A j-prefix 0 = a_0 < a_1 < ... < a_j is admissible when each element
satisfies a_i <= range(A_{i-1}) + 1.  The enumerator emits exactly the
admissible j-prefixes that satisfy every known constraint (per-index
lower bounds, a cap on elements, a floor on the last element, range
targets on prefixes).  Pruning options shrink the visited tree but never
change the emitted set:

* doubling/threshold pruning: a range target T at index t forces
  a_t >= ceil(T/2) (the range never exceeds twice the maximum element)
  and range(A_{t-1}) >= a_t - 1, chaining backwards to element and
  range floors at every earlier index;
* hole counting: an element at index s contributes at most s+1 new
  sums, so [0, T] cannot be completed from index i unless the number
  of uncovered integers in [0, T] is at most sum_{s=i+1..t}(s+1).

Node accounting: nodes_visited counts every candidate element placement
examined, at any depth >= 1.  Candidates excluded by pruning floors are
skipped unexamined; candidates that merely violate a constraint (e.g. a
lower bound) are examined, counted, and rejected.  At the last index the
count may be computed arithmetically when no per-candidate range check
is needed.  Stats are therefore deterministic for a fixed constraint set
and pruning configuration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .basis import contiguous_range

POTENTIAL_SENTINEL = 1 << 62

Prefix = tuple[int, ...]
OnPrefix = Callable[[Prefix, int], None]


class ConstraintError(ValueError):
    """Raised for malformed enumeration constraints."""


@dataclass
class SearchStats:
    """Counters for one enumeration: visited tree size and emitted prefixes."""

    nodes_visited: int = 0
    prefixes_generated: int = 0

    def add(self, other: "SearchStats") -> None:
        self.nodes_visited += other.nodes_visited
        self.prefixes_generated += other.prefixes_generated

    def as_json(self) -> dict:
        return {
            "nodes_visited": self.nodes_visited,
            "prefixes_generated": self.prefixes_generated,
        }


@dataclass(frozen=True)
class WorkStem:
    """A fixed admissible prefix identifying an independent DFS subtree."""

    elements: Prefix

    def serialize(self) -> str:
        return " ".join(str(a) for a in self.elements)

    @classmethod
    def deserialize(cls, text: str) -> "WorkStem":
        return cls(tuple(int(t) for t in text.split()))


@dataclass(frozen=True)
class PrefixConstraints:
    """Constraint set for enumerating admissible j-prefixes.

    lower_bounds and range_targets are indexed 0..j with None for
    "unknown" (no constraint).  min_last floors the last element only;
    min_range_at_j floors the range of the completed prefix.  All
    constraints are monotone: tightening any one only shrinks the
    emitted set.
    """

    j: int
    max_element: Optional[int] = None
    lower_bounds: Optional[tuple[Optional[int], ...]] = None
    min_last: Optional[int] = None
    min_range_at_j: Optional[int] = None
    range_targets: Optional[tuple[Optional[int], ...]] = None
    potential_pruning: bool = True
    propagate_lower_bounds: bool = False

    def __post_init__(self) -> None:
        if self.j < 0:
            raise ConstraintError(f"prefix index must be non-negative, got {self.j}")
        for name in ("lower_bounds", "range_targets"):
            seq = getattr(self, name)
            if seq is not None:
                seq = tuple(seq)
                if len(seq) != self.j + 1:
                    raise ConstraintError(
                        f"{name} must have {self.j + 1} entries, got {len(seq)}"
                    )
                object.__setattr__(self, name, seq)


def potential_range(r: int, m: int) -> int:
    """Upper bound on the range after appending m admissible elements.

    Iterates r -> 2(r+1): an appended element is at most r+1 and the
    resulting range at most twice it.  Saturates at a large sentinel.
    """
    if r < 0 or m < 0:
        raise ConstraintError(f"potential_range needs r, m >= 0, got ({r}, {m})")
    v = r
    for _ in range(m):
        if v >= POTENTIAL_SENTINEL:
            return POTENTIAL_SENTINEL
        v = 2 * (v + 1)
    return min(v, POTENTIAL_SENTINEL)


def new_sums_allowance(i: int, t: int) -> int:
    """Maximum number of new sums contributed by elements at indices i+1..t."""
    if t <= i:
        return 0
    # element at index s contributes at most s+1 sums
    return (t + 1 + i + 2) * (t - i) // 2


class _Plan:
    """Precomputed per-depth floors and hole-test obligations."""

    __slots__ = (
        "j", "max_element", "lbs", "min_last", "leaf_target",
        "min_elem", "min_rng", "obligations", "unsatisfiable",
    )

    def __init__(self, c: PrefixConstraints):
        j = self.j = c.j
        self.max_element = c.max_element
        self.lbs = [0] * (j + 1)
        if c.lower_bounds is not None:
            for i, v in enumerate(c.lower_bounds):
                if v is not None and v > 0:
                    self.lbs[i] = v
        self.min_last = c.min_last if c.min_last is not None else 0

        # real range obligations by index (for hole tests)
        targets = [0] * (j + 1)
        if c.range_targets is not None:
            for i, v in enumerate(c.range_targets):
                if v is not None and v > targets[i]:
                    targets[i] = v
        if c.min_range_at_j is not None and c.min_range_at_j > targets[j]:
            targets[j] = c.min_range_at_j
        self.leaf_target = targets[j]

        # range targets at interior indices are predicates: always gate on
        # them.  The backward chaining below is pruning only: a range
        # target T at index t forces a_t >= ceil(T/2) (range is at most
        # twice the maximum element) and range(A_{t-1}) >= a_t - 1.
        min_elem = [0] * (j + 1)
        min_rng = list(targets)
        if c.potential_pruning:
            if self.min_last > min_elem[j]:
                min_elem[j] = self.min_last
            if c.propagate_lower_bounds:
                for t in range(j + 1):
                    if self.lbs[t] > min_elem[t]:
                        min_elem[t] = self.lbs[t]
            for t in range(j, 0, -1):
                need_a = max(min_elem[t], (min_rng[t] + 1) // 2)
                if need_a > min_elem[t]:
                    min_elem[t] = need_a
                if need_a > 0 and need_a - 1 > min_rng[t - 1]:
                    min_rng[t - 1] = need_a - 1
        self.min_elem = min_elem
        self.min_rng = min_rng

        # hole-test obligations per depth: nearest and last real target
        # (plus the floor on the range before the last element when
        # min_last is set).  Entries: (mask, allowance, threshold_range).
        obl_points = [t for t in range(j + 1) if targets[t] > 0]
        if c.potential_pruning and self.min_last > 0 and j >= 1:
            obl_points.append(j - 1)
        obl_points = sorted(set(obl_points))
        self.obligations: list[list[tuple[int, int, int]]] = [[] for _ in range(j + 1)]
        if c.potential_pruning and obl_points:
            for depth in range(j + 1):
                ahead = [t for t in obl_points if t > depth]
                chosen = []
                if ahead:
                    chosen.append(ahead[0])
                    if ahead[-1] != ahead[0]:
                        chosen.append(ahead[-1])
                entries = []
                for t in chosen:
                    big = targets[t]
                    if t == j - 1 and self.min_last > 0:
                        big = max(big, self.min_last - 1)
                    if big <= 0:
                        continue
                    mask = (1 << (big + 1)) - 1
                    entries.append((mask, new_sums_allowance(depth, t), big))
                self.obligations[depth] = entries

        self.unsatisfiable = (
            self.lbs[0] > 0
            or min_elem[0] > 0
            or (self.max_element is not None and self.max_element < j)
            or targets[0] > 0
        )


def _run_tree(
    plan: _Plan,
    start: Prefix,
    start_depth: int,
    stop_depth: int,
    collect: Optional[list],
    on_prefix: Optional[OnPrefix],
    emit_stems: bool,
) -> SearchStats:
    """Walk the constrained DFS from `start` down to stop_depth.

    With emit_stems the depth stop_depth nodes that would recurse are
    emitted (as work stems) instead of being treated as leaves.
    """
    j = plan.j
    max_el = plan.max_element
    lbs = plan.lbs
    min_elem = plan.min_elem
    min_rng = plan.min_rng
    obligations = plan.obligations
    leaf_target = plan.leaf_target
    min_last = plan.min_last
    stats = SearchStats()
    if plan.unsatisfiable:
        return stats

    elems = list(start)
    mask = 0
    for a in start:
        mask |= 1 << a
    cov = 0
    for a in start:
        cov |= mask << a
    r = contiguous_range(cov)

    nodes = 0
    generated = 0

    # leaf fast path: when nothing at the last index needs per-candidate
    # evaluation, count the whole candidate interval arithmetically
    leaf_needs_loop = leaf_target > 0 or collect is not None or on_prefix is not None

    def rec(depth: int, mask: int, cov: int, r: int) -> None:
        nonlocal nodes, generated
        nxt = depth + 1
        last = elems[depth]
        lo = last + 1
        if min_elem[nxt] > lo:
            lo = min_elem[nxt]
        hi = r + 1
        if max_el is not None:
            budget = max_el - (j - nxt)
            if budget < hi:
                hi = budget
        if hi < lo:
            return
        lb = lbs[nxt]
        if nxt == stop_depth and not emit_stems and not leaf_needs_loop:
            span = hi - lo + 1
            nodes += span
            eff_lo = lo
            if lb > eff_lo:
                eff_lo = lb
            if min_last > eff_lo:
                eff_lo = min_last
            if eff_lo <= hi:
                generated += hi - eff_lo + 1
            return
        obl = obligations[nxt]
        for a in range(lo, hi + 1):
            nodes += 1
            if a < lb:
                continue
            nmask = mask | (1 << a)
            ncov = cov | (nmask << a)
            t = ncov >> (r + 1)
            if t & 1:
                nr = r + (((~t) & (t + 1)).bit_length() - 1)
            else:
                nr = r
            if nxt == stop_depth:
                if emit_stems:
                    if nr < min_rng[nxt]:
                        continue
                    ok = True
                    for omask, allowance, big in obl:
                        if nr >= big:
                            continue
                        if (big + 1) - (ncov & omask).bit_count() > allowance:
                            ok = False
                            break
                    if ok:
                        collect.append(tuple(elems[:nxt]) + (a,))
                    continue
                if a < min_last:
                    continue
                if leaf_target > 0 and nr < leaf_target:
                    continue
                generated += 1
                if collect is not None or on_prefix is not None:
                    prefix = tuple(elems[:nxt]) + (a,)
                    if collect is not None:
                        collect.append(prefix)
                    if on_prefix is not None:
                        on_prefix(prefix, nr)
                continue
            if nr < min_rng[nxt]:
                continue
            ok = True
            for omask, allowance, big in obl:
                if nr >= big:
                    continue
                if (big + 1) - (ncov & omask).bit_count() > allowance:
                    ok = False
                    break
            if not ok:
                continue
            elems.append(a)
            rec(nxt, nmask, ncov, nr)
            elems.pop()

    if start_depth < stop_depth:
        rec(start_depth, mask, cov, r)
    stats.nodes_visited = nodes
    stats.prefixes_generated = generated
    return stats


def _check_root(plan: _Plan) -> bool:
    """Whether the bare root prefix (0) satisfies the j=0 constraints."""
    return not plan.unsatisfiable and plan.min_last <= 0 and plan.leaf_target <= 0


def enumerate_prefixes(
    constraints: PrefixConstraints,
    mode: str = "count",
    on_prefix: Optional[OnPrefix] = None,
    backend: str = "auto",
) -> tuple[SearchStats, Optional[list[Prefix]]]:
    """Enumerate admissible j-prefixes under the constraint set.

    mode "count" fills stats only; "collect" also returns the prefixes in
    lexicographic order.  An on_prefix callback streams (prefix, range)
    pairs without accumulating.  backend "auto" uses the compiled kernel
    when available and applicable, "python" forces the reference path.
    """
    if mode not in ("count", "collect"):
        raise ConstraintError(f"unknown mode {mode!r}")
    plan = _Plan(constraints)
    collect: Optional[list] = [] if mode == "collect" else None
    if constraints.j == 0:
        stats = SearchStats()
        ok = _check_root(plan) and (
            constraints.max_element is None or constraints.max_element >= 0
        )
        if ok:
            stats.prefixes_generated = 1
            if collect is not None:
                collect.append((0,))
            if on_prefix is not None:
                on_prefix((0,), 0)
        return stats, collect

    if backend != "python" and on_prefix is None:
        from . import _kernel

        result = _kernel.try_run(plan, mode, require=(backend == "kernel"))
        if result is not None:
            return result
    stats = _run_tree(plan, (0,), 0, constraints.j, collect, on_prefix, emit_stems=False)
    return stats, collect


def split_work(
    constraints: PrefixConstraints, depth: int
) -> tuple[SearchStats, list[WorkStem]]:
    """All admissible depth-`depth` stems of the constrained tree.

    Each stem identifies an independent subtree; enumerating every stem
    with enumerate_stem and merging in stem order reproduces a single
    enumerate_prefixes run exactly (same prefixes, same summed stats).
    """
    if not 0 < depth < constraints.j:
        raise ConstraintError(
            f"split depth must satisfy 0 < depth < j, got {depth} for j={constraints.j}"
        )
    plan = _Plan(constraints)
    stems: list[Prefix] = []
    stats = _run_tree(plan, (0,), 0, depth, stems, None, emit_stems=True)
    return stats, [WorkStem(s) for s in stems]


def enumerate_stem(
    constraints: PrefixConstraints,
    stem: WorkStem,
    mode: str = "count",
    on_prefix: Optional[OnPrefix] = None,
    backend: str = "auto",
) -> tuple[SearchStats, Optional[list[Prefix]]]:
    """Enumerate the subtree below one work stem (stats exclude the stem itself)."""
    if mode not in ("count", "collect"):
        raise ConstraintError(f"unknown mode {mode!r}")
    plan = _Plan(constraints)
    collect: Optional[list] = [] if mode == "collect" else None
    depth = len(stem.elements) - 1
    if backend != "python" and on_prefix is None:
        from . import _kernel

        result = _kernel.try_run(plan, mode, stem=stem.elements, require=(backend == "kernel"))
        if result is not None:
            return result
    stats = _run_tree(
        plan, stem.elements, depth, constraints.j, collect, on_prefix, emit_stems=False
    )
    return stats, collect


def random_admissible_prefix(j: int, rng) -> tuple[Prefix, int]:
    """One random admissible j-prefix, each next element uniform on its interval."""
    elems = [0]
    mask = 1
    cov = 1
    r = 0
    for _ in range(j):
        a = rng.randint(elems[-1] + 1, r + 1)
        elems.append(a)
        mask |= 1 << a
        cov |= mask << a
        r = contiguous_range(cov)
    return tuple(elems), r

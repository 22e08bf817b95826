"""Lattice lower sets: types, canonical enumeration, exact counting.

A lower set (downward closed set) in Z_+^d is a finite collection of
non-negative integer points that contains, with every point, all of its
coordinatewise predecessors.  Lower sets of cardinality n are in
bijection with d-dimensional integer partitions of n, which gives fast
independent counting routes for d = 2 (ordinary partitions) and d = 3
(plane partitions).

Enumeration uses a canonical depth-first growth: a lower set is built by
appending addable points in strictly lexicographically increasing order.
The lex-sorted listing of any lower set is itself such a growth sequence
(every prefix is downward closed because predecessors are lex-smaller),
and it is the only one, so each lower set is produced exactly once.
Subtrees are independent, which keeps memory at O(n) and would allow
parallel exploration; all functions here are pure and single threaded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator

Coords = tuple[int, ...]

DEFAULT_NODE_BUDGET = 10**8


class BudgetExceededError(RuntimeError):
    """Raised when a depth-first walk visits more nodes than allowed."""


def _as_point(p: Iterable[int], dim: int) -> Coords:
    q = tuple(p)
    if len(q) != dim:
        raise ValueError("inconsistent dimension")
    if any(c < 0 for c in q):
        raise ValueError("negative coordinate")
    return q


def _preds_present(p: Coords, members: set[Coords]) -> bool:
    for i, c in enumerate(p):
        if c and p[:i] + (c - 1,) + p[i + 1:] not in members:
            return False
    return True


def is_lower_set(dim: int, points: Iterable[Iterable[int]]) -> bool:
    """True iff ``points`` is downward closed in Z_+^dim.

    Raises ValueError("inconsistent dimension") if the points do not all
    have length ``dim``, and on negative coordinates.
    """
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    members = {_as_point(p, dim) for p in points}
    return all(_preds_present(p, members) for p in members)


@dataclass(frozen=True)
class LowerSet:
    """A finite lower set: dimension plus lex-sorted point tuple.

    ``points`` must already be strictly lex-increasing and downward
    closed; use :meth:`from_points` to normalize arbitrary input.
    """

    dim: int
    points: tuple[Coords, ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")
        members = set()
        for p in self.points:
            _as_point(p, self.dim)
            members.add(p)
        if list(self.points) != sorted(members) or len(members) != len(self.points):
            raise ValueError("points must be lex-sorted and distinct")
        for p in self.points:
            if not _preds_present(p, members):
                raise ValueError("not downward closed: %r lacks a predecessor" % (p,))

    @classmethod
    def from_points(cls, dim: int, points: Iterable[Iterable[int]]) -> "LowerSet":
        return cls(dim, tuple(sorted({_as_point(p, dim) for p in points})))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Coords]:
        return iter(self.points)

    def __contains__(self, p: object) -> bool:
        return p in set(self.points)


@dataclass(frozen=True)
class Partition:
    """A d-dimensional integer partition given by its column heights.

    ``heights`` maps positive (d-1)-dimensional bases to column heights;
    heights must be non-increasing along every coordinate direction.
    """

    dim: int
    heights: dict[Coords, int]


def addable_points(q: LowerSet) -> set[Coords]:
    """Points whose addition to ``q`` yields a lower set again.

    The empty lower set admits exactly the origin.
    """
    if not q.points:
        return {(0,) * q.dim}
    members = set(q.points)
    out: set[Coords] = set()
    for p in q.points:
        for i in range(q.dim):
            s = p[:i] + (p[i] + 1,) + p[i + 1:]
            if s in members or s in out:
                continue
            if _preds_present(s, members):
                out.add(s)
    return out


def corners(q: LowerSet) -> set[Coords]:
    """Maximal points of ``q``; removing any subset keeps it a lower set."""
    if not q.points:
        raise ValueError("empty set has no corners")
    members = set(q.points)
    return {
        p
        for p in members
        if all(p[:i] + (p[i] + 1,) + p[i + 1:] not in members for i in range(q.dim))
    }


def _successors(p: Coords, dim: int) -> list[Coords]:
    return [p[:i] + (p[i] + 1,) + p[i + 1:] for i in range(dim)]


def _merge_sorted(a: tuple[Coords, ...], b: list[Coords]) -> tuple[Coords, ...]:
    if not b:
        return a
    out = list(a)
    out.extend(b)
    out.sort()
    return tuple(out)


def enumerate_lower_sets(
    dim: int, size: int, budget: int = DEFAULT_NODE_BUDGET
) -> Iterator[LowerSet]:
    """Yield every lower set of the given size in Z_+^dim exactly once.

    The stream is deterministic: children are explored in lex order of
    the appended point.  ``budget`` caps the number of visited sets of
    any size; exceeding it raises BudgetExceededError.
    """
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    if size < 0:
        raise ValueError("size must be non-negative")
    if size == 0:
        yield LowerSet(dim, ())
        return
    origin = (0,) * dim
    members = {origin}
    chain = [origin]
    nodes = 1

    def grow(frontier: tuple[Coords, ...]) -> Iterator[LowerSet]:
        nonlocal nodes
        if len(chain) == size:
            yield LowerSet(dim, tuple(chain))
            return
        for j, p in enumerate(frontier):
            nodes += 1
            if nodes > budget:
                raise BudgetExceededError("budget exceeded")
            members.add(p)
            chain.append(p)
            fresh = [s for s in _successors(p, dim) if _preds_present(s, members)]
            fresh.sort()
            yield from grow(_merge_sorted(frontier[j + 1:], fresh))
            chain.pop()
            members.discard(p)

    yield from grow(tuple(sorted(_successors(origin, dim))))


def _count_by_size(dim: int, size_max: int, budget: int) -> list[int]:
    """Counts of lower sets of each size 0..size_max, one DFS sweep."""
    counts = [0] * (size_max + 1)
    counts[0] = 1
    if size_max == 0:
        return counts
    origin = (0,) * dim
    members = {origin}
    counts[1] = 1
    nodes = 1

    def walk(frontier: tuple[Coords, ...], depth: int) -> None:
        nonlocal nodes
        if depth == size_max:
            return
        for j, p in enumerate(frontier):
            nodes += 1
            if nodes > budget:
                raise BudgetExceededError("budget exceeded")
            counts[depth + 1] += 1
            members.add(p)
            fresh = [s for s in _successors(p, dim) if _preds_present(s, members)]
            fresh.sort()
            walk(_merge_sorted(frontier[j + 1:], fresh), depth + 1)
            members.discard(p)

    walk(tuple(sorted(_successors(origin, dim))), 1)
    return counts


def count_lower_sets(
    dim: int,
    size: int,
    method: str = "auto",
    budget: int = DEFAULT_NODE_BUDGET,
) -> int:
    """Number of lower sets of the given size in Z_+^dim, exactly.

    ``method="dfs"`` forces the canonical enumeration walk.  ``"auto"``
    dispatches to the partition oracles for dim <= 3 and falls back to
    the walk otherwise; both methods agree on all inputs.  A count is
    either exact or BudgetExceededError is raised, never approximate.
    """
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    if size < 0:
        raise ValueError("size must be non-negative")
    if method not in ("dfs", "auto"):
        raise ValueError("unknown method: %r" % (method,))
    if method == "auto":
        if dim == 1:
            return 1
        if dim == 2:
            return partition_oracle_2d(size)[size]
        if dim == 3:
            return plane_partition_oracle_3d(size)[size]
    return _count_by_size(dim, size, budget)[size]


def partition_oracle_2d(n_max: int) -> list[int]:
    """Partition numbers p(0..n_max) by the parts-bounded recurrence.

    Independent of the enumeration walk; plain ints keep it exact.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    table = [1] + [0] * n_max
    for part in range(1, n_max + 1):
        for total in range(part, n_max + 1):
            table[total] += table[total - part]
    return table


def plane_partition_oracle_3d(n_max: int) -> list[int]:
    """Plane partition numbers pp(0..n_max).

    Extracts coefficients of prod_{k>=1} (1 - q^k)^(-k) by applying the
    geometric factor (1 - q^k)^(-1) k times for each k.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    coef = [1] + [0] * n_max
    for k in range(1, n_max + 1):
        for _ in range(k):
            for total in range(k, n_max + 1):
                coef[total] += coef[total - k]
    return coef


def to_partition(q: LowerSet) -> Partition:
    """Column-height representation of ``q`` (dimension at least 2).

    Shifting ``q`` by the all-ones vector gives a positive lower set;
    grouping its points by the leading d-1 coordinates yields columns
    {1..h} in the last coordinate, and h is the recorded height.
    """
    if q.dim < 2:
        raise ValueError("partition form needs dimension at least 2")
    heights: dict[Coords, int] = {}
    for p in q.points:
        base = tuple(c + 1 for c in p[:-1])
        heights[base] = max(heights.get(base, 0), p[-1] + 1)
    return Partition(q.dim, heights)


def from_partition(part: Partition) -> LowerSet:
    """Inverse of :func:`to_partition`.

    Raises ValueError("not a partition") unless heights are positive and
    non-increasing along every coordinate direction (including presence
    of all predecessor bases).
    """
    d = part.dim
    if d < 2:
        raise ValueError("partition form needs dimension at least 2")
    heights = part.heights
    for base, h in heights.items():
        if len(base) != d - 1 or any(c < 1 for c in base) or h < 1:
            raise ValueError("not a partition")
        for i, c in enumerate(base):
            if c > 1:
                pred = base[:i] + (c - 1,) + base[i + 1:]
                if heights.get(pred, 0) < h:
                    raise ValueError("not a partition")
    points = []
    for base, h in heights.items():
        shifted = tuple(c - 1 for c in base)
        for j in range(h):
            points.append(shifted + (j,))
    return LowerSet(d, tuple(sorted(points)))


def slice_decompose(
    q: LowerSet, return_slices: bool = False
) -> list[int] | tuple[list[int], list[LowerSet]]:
    """Greedy hyperplane slicing of a non-empty lower set.

    Repeatedly removes the coordinate hyperplane slice holding the most
    remaining points.  Per axis the largest slice is always the zero
    slice, so each step strips {x_axis = 0} for the best axis (lowest
    index on ties) and renormalizes the rest by decrementing that axis,
    which keeps the remainder a lower set.  Returns the slice sizes,
    non-increasing and summing to len(q); with ``return_slices`` also
    the removed slices as (d-1)-dimensional lower sets.
    """
    if q.dim < 2:
        raise ValueError("slicing needs dimension at least 2")
    if not q.points:
        raise ValueError("cannot slice an empty set")
    pts = set(q.points)
    sizes: list[int] = []
    slices: list[LowerSet] = []
    while pts:
        best_axis, best = 0, -1
        for i in range(q.dim):
            c = sum(1 for p in pts if p[i] == 0)
            if c > best:
                best_axis, best = i, c
        cut = [p for p in pts if p[best_axis] == 0]
        sizes.append(len(cut))
        if return_slices:
            reduced = [p[:best_axis] + p[best_axis + 1:] for p in cut]
            slices.append(LowerSet(q.dim - 1, tuple(sorted(reduced))))
        pts = {
            p[:best_axis] + (p[best_axis] - 1,) + p[best_axis + 1:]
            for p in pts
            if p[best_axis] >= 1
        }
    if return_slices:
        return sizes, slices
    return sizes


def to_json_line(q: LowerSet) -> str:
    """One-line serialization: a JSON array of coordinate arrays."""
    return json.dumps([list(p) for p in q.points], separators=(",", ":"))


def from_json_line(line: str, dim: int | None = None) -> LowerSet:
    """Parse :func:`to_json_line` output; ``dim`` is required when empty."""
    raw = json.loads(line)
    if not raw:
        if dim is None:
            raise ValueError("dimension required for an empty set")
        return LowerSet(dim, ())
    d = dim if dim is not None else len(raw[0])
    return LowerSet.from_points(d, raw)

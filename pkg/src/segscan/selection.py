"""Greedy minimum-p selection of mutually disjoint candidates.

Candidates are drawn best-first from a binary heap keyed by
(log_p, length descending, start); an ordered set of committed intervals
answers overlap queries by inspecting only the neighbors of the query
point. A candidate that overlaps nothing already committed is selected,
everything else is discarded. Intervals are half-open, so segments that
merely share a boundary point do not overlap.
"""

from __future__ import annotations

import heapq
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from itertools import count

from .errors import ValidationError
from .scanning import Candidate


class BoundarySet:
    """Disjoint half-open intervals ordered by start, with O(log S) queries."""

    def __init__(self):
        self._starts: list[int] = []
        self._ends: list[int] = []

    def __len__(self) -> int:
        return len(self._starts)

    def __iter__(self):
        return iter(zip(self._starts, self._ends))

    def overlaps(self, start: int, end: int) -> bool:
        """True iff [start, end) intersects any stored interval."""
        if start >= end:
            raise ValidationError(f"empty query interval [{start}, {end})")
        i = bisect_right(self._starts, start)
        if i > 0 and self._ends[i - 1] > start:
            return True
        return i < len(self._starts) and self._starts[i] < end

    def insert(self, start: int, end: int) -> None:
        if self.overlaps(start, end):
            raise ValidationError(f"interval [{start}, {end}) overlaps a committed segment")
        i = bisect_right(self._starts, start)
        self._starts.insert(i, start)
        self._ends.insert(i, end)

    def remove(self, start: int, end: int) -> None:
        i = bisect_left(self._starts, start)
        if i == len(self._starts) or self._starts[i] != start or self._ends[i] != end:
            raise ValidationError(f"interval [{start}, {end}) is not committed")
        del self._starts[i]
        del self._ends[i]

    def left_limit(self, at: int) -> int:
        """End of the nearest interval at or left of ``at`` (0 if none)."""
        i = bisect_right(self._starts, at)
        return self._ends[i - 1] if i > 0 else 0

    def right_limit(self, at: int, n: int) -> int:
        """Start of the nearest interval at or right of ``at`` (n if none)."""
        i = bisect_left(self._starts, at)
        return self._starts[i] if i < len(self._starts) else n

    def intervals(self) -> list[tuple[int, int]]:
        return list(zip(self._starts, self._ends))


def check_overlap(boundaries: BoundarySet, start: int, end: int) -> bool:
    """Overlap query against the committed boundary set."""
    return boundaries.overlaps(start, end)


@dataclass
class SelectedSet:
    """Disjoint selected segments, sorted by start."""

    segments: list[Candidate] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    def intervals(self) -> list[tuple[int, int]]:
        return [seg.interval for seg in self.segments]


class CandidateStore:
    """p-ordered candidate pool plus the committed boundary interval set."""

    def __init__(self, candidates):
        self._tie = count()
        self._heap = [(c.sort_key, next(self._tie), c) for c in candidates]
        heapq.heapify(self._heap)
        self.boundaries = BoundarySet()

    def __len__(self) -> int:
        return len(self._heap)

    def pop_best(self) -> Candidate | None:
        if not self._heap:
            return None
        return heapq.heappop(self._heap)[-1]

    def commit(self, candidate: Candidate) -> None:
        self.boundaries.insert(candidate.start, candidate.end)


def select_nonoverlapping(candidates, p_s: float | None = None) -> SelectedSet:
    """Greedily select disjoint candidates in ascending p order.

    Repeatedly extracts the best remaining candidate; commits it when it
    does not overlap anything already committed, discards it otherwise.
    The result is exactly the greedy-by-p-value disjoint subset. The
    scanner already filtered at p_s; passing it here re-checks that under
    `python -O`-stripped assertions.
    """
    if p_s is not None:
        assert all(c.log_p <= math.log(p_s) for c in candidates), "candidate above p_s"
    store = CandidateStore(candidates)
    picked: list[Candidate] = []
    while (candidate := store.pop_best()) is not None:
        if not check_overlap(store.boundaries, candidate.start, candidate.end):
            store.commit(candidate)
            picked.append(candidate)
    picked.sort(key=lambda c: c.start)
    return SelectedSet(picked)

"""Boundary refinement and merging of selected segments.

Each selected segment is polished by four local moves: expand left, expand
right, shrink left, shrink right. A move proposes shifting one boundary by
ceil(L/K) (L the current length, K the refinement divisor, default 10). If
the proposal strictly lowers the p-value it is accepted and the move
repeats; otherwise every boundary strictly between the proposal and the
current boundary is evaluated, the best is accepted if it strictly improves,
and the move ends. Proposals never cross a committed neighbor or the profile
edge; they are truncated to the nearest legal boundary.

Segments refine in ascending p order, so stronger segments claim contested
territory first. After refinement, consecutive segments merge whenever the
spanning segment (gap included) has a smaller p-value than both members,
repeating until no merge applies. Every accepted move strictly decreases a
p-value, which bounds the whole process.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .scanning import Candidate, ScanConfig
from .selection import BoundarySet, SelectedSet
from .stats import NoiseModel, PrefixSums, log_p_value, z_statistic


@dataclass
class RefineContext:
    """Shared read-only inputs plus the mutable committed boundary set.

    ``trace``, when supplied, accumulates one entry per accepted move:
    ("expand_left"|..., before, after) for boundary moves and
    ("merge", (left, right), span) for merges.
    """

    ps: PrefixSums
    noise: NoiseModel
    cfg: ScanConfig
    boundaries: BoundarySet = field(default_factory=BoundarySet)
    trace: list | None = None

    def stat(self, start: int, end: int) -> Candidate:
        """Candidate statistics for [start, end) from prefix sums."""
        n = end - start
        z = z_statistic(self.ps.range_sum(start, end), n, self.noise)
        return Candidate(start, end, z, log_p_value(z, self.cfg.sides))

    def _record(self, op: str, before, after) -> None:
        if self.trace is not None:
            self.trace.append((op, before, after))


def _jump(length: int, k: int) -> int:
    return math.ceil(length / k)


def expand_left(ctx: RefineContext, seg: Candidate) -> Candidate:
    """Move the left boundary outward while the p-value improves.

    The segment's own interval must not be in ctx.boundaries while it is
    being refined (refine_all removes and reinserts it).
    """
    k = ctx.cfg.k_refine
    limit = ctx.boundaries.left_limit(seg.start)
    cur = seg
    while True:
        l0 = cur.start
        proposal = max(l0 - _jump(cur.length, k), limit)
        if proposal >= l0:
            break
        jumped = ctx.stat(proposal, cur.end)
        if jumped.log_p < cur.log_p:
            ctx._record("expand_left", cur, jumped)
            cur = jumped
            continue
        best = None
        for left in range(proposal + 1, l0):
            trial = ctx.stat(left, cur.end)
            if best is None or trial.log_p < best.log_p:
                best = trial
        if best is not None and best.log_p < cur.log_p:
            ctx._record("expand_left", cur, best)
            cur = best
        break
    return cur


def expand_right(ctx: RefineContext, seg: Candidate) -> Candidate:
    """Mirror image of expand_left on the right boundary."""
    k = ctx.cfg.k_refine
    limit = ctx.boundaries.right_limit(seg.end, ctx.ps.n)
    cur = seg
    while True:
        r0 = cur.end
        proposal = min(r0 + _jump(cur.length, k), limit)
        if proposal <= r0:
            break
        jumped = ctx.stat(cur.start, proposal)
        if jumped.log_p < cur.log_p:
            ctx._record("expand_right", cur, jumped)
            cur = jumped
            continue
        best = None
        for right in range(proposal - 1, r0, -1):
            trial = ctx.stat(cur.start, right)
            if best is None or trial.log_p < best.log_p:
                best = trial
        if best is not None and best.log_p < cur.log_p:
            ctx._record("expand_right", cur, best)
            cur = best
        break
    return cur


def shrink_left(ctx: RefineContext, seg: Candidate) -> Candidate:
    """Move the left boundary inward while the p-value improves."""
    if seg.length < 2:
        return seg
    k = ctx.cfg.k_refine
    cur = seg
    while cur.length >= 2:
        l0 = cur.start
        proposal = min(l0 + _jump(cur.length, k), cur.end - 1)
        if proposal <= l0:
            break
        jumped = ctx.stat(proposal, cur.end)
        if jumped.log_p < cur.log_p:
            ctx._record("shrink_left", cur, jumped)
            cur = jumped
            continue
        best = None
        for left in range(l0 + 1, proposal):
            trial = ctx.stat(left, cur.end)
            if best is None or trial.log_p < best.log_p:
                best = trial
        if best is not None and best.log_p < cur.log_p:
            ctx._record("shrink_left", cur, best)
            cur = best
        break
    return cur


def shrink_right(ctx: RefineContext, seg: Candidate) -> Candidate:
    """Mirror image of shrink_left on the right boundary."""
    if seg.length < 2:
        return seg
    k = ctx.cfg.k_refine
    cur = seg
    while cur.length >= 2:
        r0 = cur.end
        proposal = max(r0 - _jump(cur.length, k), cur.start + 1)
        if proposal >= r0:
            break
        jumped = ctx.stat(cur.start, proposal)
        if jumped.log_p < cur.log_p:
            ctx._record("shrink_right", cur, jumped)
            cur = jumped
            continue
        best = None
        for right in range(r0 - 1, proposal, -1):
            trial = ctx.stat(cur.start, right)
            if best is None or trial.log_p < best.log_p:
                best = trial
        if best is not None and best.log_p < cur.log_p:
            ctx._record("shrink_right", cur, best)
            cur = best
        break
    return cur


def refine_segment(ctx: RefineContext, seg: Candidate) -> Candidate:
    """Apply the four boundary moves until a full pass changes nothing."""
    while True:
        before = seg.interval
        seg = expand_left(ctx, seg)
        seg = expand_right(ctx, seg)
        seg = shrink_left(ctx, seg)
        seg = shrink_right(ctx, seg)
        if seg.interval == before:
            return seg


def refine_all(ctx: RefineContext, selected: SelectedSet) -> SelectedSet:
    """Refine every selected segment, best p-value first.

    ctx.boundaries must hold exactly the selected intervals on entry; it is
    updated in place and holds the refined intervals on return.
    """
    order = sorted(selected.segments, key=lambda c: c.sort_key)
    refined: list[Candidate] = []
    for seg in order:
        ctx.boundaries.remove(seg.start, seg.end)
        new = refine_segment(ctx, seg)
        ctx.boundaries.insert(new.start, new.end)
        refined.append(new)
    refined.sort(key=lambda c: c.start)
    return SelectedSet(refined)


def merge_adjacent(ctx: RefineContext, selected: SelectedSet) -> SelectedSet:
    """Merge consecutive segments while the spanning segment beats both.

    The span runs from the first segment's left boundary to the second's
    right boundary and includes any gap points. After a merge the new
    segment is re-tested against its neighbors; the scan terminates at a
    fixpoint where no consecutive pair can merge.
    """
    segs = sorted(selected.segments, key=lambda c: c.start)
    i = 0
    while i + 1 < len(segs):
        left, right = segs[i], segs[i + 1]
        span = ctx.stat(left.start, right.end)
        if span.log_p < left.log_p and span.log_p < right.log_p:
            ctx._record("merge", (left, right), span)
            ctx.boundaries.remove(left.start, left.end)
            ctx.boundaries.remove(right.start, right.end)
            ctx.boundaries.insert(span.start, span.end)
            segs[i:i + 2] = [span]
            if i > 0:
                i -= 1
        else:
            i += 1
    return SelectedSet(segs)

"""Infinite partitions of the naturals into finite blocks.

A partition is stored as a boundary stream ``w`` (EPDiff, ``w(0) = 0``) whose
consecutive values cut the line into windows, plus a labelling pattern per
window assigning each point of the window to a local block.  Patterns repeat
cyclically after a finite list of prefix patterns, and an optional
``merge_prefix`` fuses the first ``m`` windows into a single block.  Blocks
never span windows beyond that finite merge, which keeps the block structure
of any bounded region computable from the representation alone.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Optional

from ..errors import MalformedSpec
from .sets import EPWord, OmegaSet, range_set
from .streams import EPDiff, UpStream


class Partition:
    def __init__(self, boundaries: EPDiff, prefix_patterns, cycle_patterns,
                 merge_prefix: int = 0):
        if not isinstance(boundaries, EPDiff):
            raise MalformedSpec("partition boundaries must be an EPDiff stream")
        if boundaries.value(0) != 0:
            raise MalformedSpec("partition boundaries must start at 0")
        prefix_patterns = tuple(tuple(int(l) for l in pat) for pat in prefix_patterns)
        cycle_patterns = tuple(tuple(int(l) for l in pat) for pat in cycle_patterns)
        if not cycle_patterns:
            raise MalformedSpec("cyclic pattern list must be nonempty")
        if any(len(pat) == 0 for pat in prefix_patterns + cycle_patterns):
            raise MalformedSpec("window patterns must be nonempty")
        if merge_prefix < 0:
            raise MalformedSpec("merge_prefix must be a natural number")
        self.boundaries = boundaries
        self.prefix_patterns = prefix_patterns
        self.cycle_patterns = cycle_patterns
        self.merge_prefix = int(merge_prefix)
        self._validate_alignment()

    def __repr__(self):
        return (f"Partition(boundaries={self.boundaries!r}, "
                f"prefix={len(self.prefix_patterns)} pats, "
                f"cycle={len(self.cycle_patterns)} pats, merge={self.merge_prefix})")

    def _validate_alignment(self):
        # Every window's pattern must have exactly the window's length; by
        # periodicity it is enough to check the prefix region plus one full
        # joint cycle of boundary diffs and patterns.
        w = self.boundaries
        joint = _lcm(len(w.cycle_diffs), len(self.cycle_patterns))
        horizon = max(len(self.prefix_patterns), len(w.prefix_diffs), self.merge_prefix) + joint
        for j in range(horizon):
            pat = self.pattern_at(j)
            width = w.value(j + 1) - w.value(j)
            if len(pat) != width:
                raise MalformedSpec(
                    f"pattern for window {j} has length {len(pat)}, window has width {width}"
                )

    def pattern_at(self, j: int):
        p = len(self.prefix_patterns)
        if j < p:
            return self.prefix_patterns[j]
        return self.cycle_patterns[(j - p) % len(self.cycle_patterns)]

    def pattern_phase(self, j: int) -> int:
        p = len(self.prefix_patterns)
        return (j - p) % len(self.cycle_patterns)

    def window_index(self, x: int) -> int:
        """Index j with w(j) <= x < w(j+1)."""
        w = self.boundaries
        if x < 0:
            raise ValueError("points of the partition are naturals")
        lo, hi = 0, 1
        while w.value(hi) <= x:
            lo, hi = hi, hi * 2
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if w.value(mid) <= x:
                lo = mid
            else:
                hi = mid
        return lo

    def block_id(self, x: int):
        """Stable identifier of the block containing x."""
        j = self.window_index(x)
        if self.merge_prefix and j < self.merge_prefix:
            return ("merged",)
        return (j, self.pattern_at(j)[x - self.boundaries.value(j)])

    def blocks_meeting(self, a: int, b: int) -> int:
        """Number of distinct blocks meeting [a, b)."""
        if a > b:
            raise ValueError("blocks_meeting needs a <= b")
        if a == b:
            return 0
        seen = set()
        w = self.boundaries
        j = self.window_index(a)
        while w.value(j) < b:
            lo = max(a, w.value(j))
            hi = min(b, w.value(j + 1))
            if self.merge_prefix and j < self.merge_prefix:
                seen.add(("merged",))
            else:
                pat = self.pattern_at(j)
                base = w.value(j)
                for x in range(lo, hi):
                    seen.add((j, pat[x - base]))
            j += 1
        return len(seen)

    def block_of(self, x: int) -> list[int]:
        """All points of the block containing x (blocks are finite)."""
        j = self.window_index(x)
        w = self.boundaries
        if self.merge_prefix and j < self.merge_prefix:
            return list(range(0, w.value(self.merge_prefix)))
        pat = self.pattern_at(j)
        base = w.value(j)
        label = pat[x - base]
        return [base + i for i, l in enumerate(pat) if l == label]

    def transient_windows(self) -> int:
        """Windows before the joint cyclic behaviour starts."""
        return max(len(self.prefix_patterns), len(self.boundaries.prefix_diffs),
                   self.merge_prefix)

    def joint_cycle_windows(self) -> int:
        return _lcm(len(self.boundaries.cycle_diffs), len(self.cycle_patterns))


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def make_partition(spec) -> Partition:
    """Build a partition from a descriptor dict (or pass one through)."""
    if isinstance(spec, Partition):
        return spec
    if not isinstance(spec, dict):
        raise MalformedSpec(f"cannot build a partition from {type(spec).__name__}")
    from .streams import make_up_stream

    boundaries = make_up_stream(spec["boundaries"])
    if not isinstance(boundaries, EPDiff):
        raise MalformedSpec("partition boundaries must be an EPDiff stream")
    pattern = spec.get("pattern", {})
    return Partition(
        boundaries,
        pattern.get("prefix", ()),
        pattern.get("cycle", ((0,),)),
        spec.get("merge_prefix", 0),
    )


def interval_partition_of(g: UpStream, merge_first: bool = False) -> Partition:
    """Partition into the intervals [g(i), g(i+1)), one block per window.

    When ``g(0) > 0`` the leading chunk ``[0, g(0))`` is prepended as its own
    window so the result covers the whole line.  ``merge_first`` fuses
    everything below ``g(1)`` into a single first block.
    """
    if not isinstance(g, EPDiff):
        raise MalformedSpec("interval partitions need EPDiff boundaries")
    if g.value(0) == 0:
        w = g
        lead = 0
    else:
        w = EPDiff(0, (g.value(0),) + g.prefix_diffs, g.cycle_diffs)
        lead = 1
    merge = 0
    if merge_first:
        merge = lead + 1  # everything below g(1) becomes one block
    pats_needed = max(len(w.prefix_diffs), merge)
    prefix_pats = tuple((0,) * w.diff(j) for j in range(pats_needed))
    # width list rotated so cyclic patterns line up with cyclic diffs
    cycle_pats = tuple((0,) * w.diff(pats_needed + i) for i in range(len(w.cycle_diffs)))
    return Partition(w, prefix_pats, cycle_pats, merge)


def minima_set(p: Partition) -> OmegaSet:
    """The set of block minima, in word form when the pattern is cyclic."""
    w = p.boundaries
    t = p.transient_windows()
    joint = p.joint_cycle_windows()
    start = w.value(t)
    span = w.value(t + joint) - start
    cycle_bits = [0] * span
    for j in range(t, t + joint):
        pat = p.pattern_at(j)
        base = w.value(j)
        seen = set()
        for i, label in enumerate(pat):
            if label not in seen:
                seen.add(label)
                cycle_bits[base + i - start] = 1
    prefix_bits = [0] * start
    marked = set()
    for x in range(start):
        bid = p.block_id(x)
        if bid not in marked:
            marked.add(bid)
            prefix_bits[x] = 1
    return EPWord(prefix_bits, cycle_bits)

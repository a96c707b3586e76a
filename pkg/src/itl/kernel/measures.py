"""Infinite-measure subsets of the nonnegative half-line.

A set is a finite union of disjoint half-open rational intervals inside
``[0, p0)`` followed by a motif of disjoint rational intervals inside
``[0, L)`` repeated with period ``L`` from ``p0`` on.  All endpoint
arithmetic is exact (``fractions.Fraction``); the motif must carry positive
measure, so the whole set has infinite measure.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from ..errors import MalformedSpec
from .sets import EPWord

Interval = Tuple[Fraction, Fraction]


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise MalformedSpec(f"expected an exact rational, got {type(x).__name__}")


def _normalize(intervals: Iterable, bound: Fraction, what: str) -> tuple[Interval, ...]:
    out = []
    for pair in intervals:
        lo, hi = (_as_fraction(pair[0]), _as_fraction(pair[1]))
        if not (0 <= lo < hi <= bound):
            raise MalformedSpec(f"{what} interval [{lo}, {hi}) must sit inside [0, {bound})")
        out.append((lo, hi))
    out.sort()
    for (a0, b0), (a1, _b1) in zip(out, out[1:]):
        if a1 < b0:
            raise MalformedSpec(f"{what} intervals overlap at {a1}")
    return tuple(out)


class MeasurableSet:
    def __init__(self, prefix_intervals, motif_intervals, p0, period):
        self.p0 = _as_fraction(p0)
        self.period = _as_fraction(period)
        if self.p0 <= 0 or self.period <= 0:
            raise MalformedSpec("p0 and the motif period must be positive")
        self.prefix_intervals = _normalize(prefix_intervals, self.p0, "prefix")
        self.motif_intervals = _normalize(motif_intervals, self.period, "motif")
        if not self.motif_intervals:
            raise MalformedSpec("motif must be nonempty")
        self.motif_measure = sum((hi - lo for lo, hi in self.motif_intervals), Fraction(0))
        if self.motif_measure <= 0:
            raise MalformedSpec("motif must have positive measure")

    def __repr__(self):
        return (f"MeasurableSet(prefix={self.prefix_intervals}, "
                f"motif={self.motif_intervals}, p0={self.p0}, L={self.period})")

    def __eq__(self, other):
        return isinstance(other, MeasurableSet) and (
            self.prefix_intervals, self.motif_intervals, self.p0, self.period,
        ) == (other.prefix_intervals, other.motif_intervals, other.p0, other.period)

    def measure_in(self, a, b) -> Fraction:
        """Exact Lebesgue measure of the set intersected with [a, b)."""
        a = _as_fraction(a)
        b = _as_fraction(b)
        if a > b:
            raise ValueError("measure_in needs a <= b")
        total = Fraction(0)
        for lo, hi in self.prefix_intervals:
            total += _overlap(a, b, lo, hi)
        if b > self.p0:
            lo_shift = max(a, self.p0)
            j0 = (lo_shift - self.p0) // self.period
            j = int(j0)
            while True:
                base = self.p0 + j * self.period
                if base >= b:
                    break
                for lo, hi in self.motif_intervals:
                    total += _overlap(a, b, base + lo, base + hi)
                j += 1
        return total

    def copies_phase(self, x) -> Fraction:
        """Position of x relative to the motif grid (x >= p0)."""
        return (_as_fraction(x) - self.p0) % self.period


def _overlap(a: Fraction, b: Fraction, lo: Fraction, hi: Fraction) -> Fraction:
    left = max(a, lo)
    right = min(b, hi)
    return right - left if right > left else Fraction(0)


def make_measurable_set(spec) -> MeasurableSet:
    """Build a measurable set from a descriptor dict (or pass one through)."""
    if isinstance(spec, MeasurableSet):
        return spec
    if not isinstance(spec, dict):
        raise MalformedSpec(f"cannot build a measurable set from {type(spec).__name__}")
    return MeasurableSet(
        spec.get("prefix", ()),
        spec["motif"],
        spec.get("p0", spec.get("L", 1)),
        spec["L"],
    )


def full_half_line() -> MeasurableSet:
    return MeasurableSet([(0, 1)], [(0, 1)], 1, 1)


def unit_blocks(x: EPWord) -> MeasurableSet:
    """The union of unit intervals [j, j+1) over the members j of X.

    The word's prefix becomes the prefix region and one cycle becomes the
    motif, so measure queries stay exact and periodic.
    """
    if not isinstance(x, EPWord):
        from ..errors import FragmentUnsupported

        raise FragmentUnsupported("unit blocks need a word-form set")
    p = len(x.prefix)
    period = len(x.cycle)
    prefix = [(Fraction(i), Fraction(i + 1)) for i, b in enumerate(x.prefix) if b]
    motif = [(Fraction(i), Fraction(i + 1)) for i, b in enumerate(x.cycle) if b]
    p0 = Fraction(p) if p > 0 else Fraction(period)
    if p == 0:
        # inline one motif copy as the prefix region so p0 stays positive
        prefix = list(motif)
        return MeasurableSet(prefix, motif, p0, period)
    return MeasurableSet(prefix, motif, p0, period)


def contract_set(y: MeasurableSet, factor: int) -> MeasurableSet:
    """Scale the set by 1/factor; measures scale the same way."""
    if factor < 1:
        raise MalformedSpec("contraction factor must be >= 1")
    f = Fraction(1, factor)
    return MeasurableSet(
        [(lo * f, hi * f) for lo, hi in y.prefix_intervals],
        [(lo * f, hi * f) for lo, hi in y.motif_intervals],
        y.p0 * f,
        y.period * f,
    )

"""Eventual count/measure profiles via finite-state cycle detection.

For an EPDiff stream paired with an ultimately periodic object, the pair
``(phase of the difference cycle, alignment of the left endpoint inside the
object's period)`` ranges over a finite set once both prefixes have expired.
Iterating until that state repeats therefore produces the exact ultimately
periodic profile of the per-interval counts, after which transient and period
are canonicalized to their minimal values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Tuple

from ..errors import FragmentUnsupported
from .measures import MeasurableSet
from .partitions import Partition
from .sets import EPWord, OmegaSet
from .streams import EPDiff, UpStream


@dataclass(frozen=True)
class CountProfile:
    """c(n) = head[n] for n < transient, else cycle[(n - transient) % period]."""

    transient: int
    head: Tuple
    cycle: Tuple

    def __post_init__(self):
        if len(self.head) != self.transient:
            raise ValueError("head length must equal the transient")
        if not self.cycle:
            raise ValueError("cycle must be nonempty")

    @property
    def period(self) -> int:
        return len(self.cycle)

    def value_at(self, n: int):
        if n < self.transient:
            return self.head[n]
        return self.cycle[(n - self.transient) % len(self.cycle)]

    def values(self, count: int) -> list:
        return [self.value_at(n) for n in range(count)]

    def cycle_max(self):
        return max(self.cycle)

    def cycle_min(self):
        return min(self.cycle)


def _canonicalize(counts: Sequence, t_raw: int, p_raw: int) -> CountProfile:
    """Minimal (transient, period) for the sequence detected as eventually
    periodic with raw anchor (t_raw, p_raw)."""
    cyc = list(counts[t_raw:t_raw + p_raw])
    # minimal period: smallest divisor of p_raw under which the cycle repeats
    period = p_raw
    for d in range(1, p_raw + 1):
        if p_raw % d == 0 and all(cyc[i] == cyc[i % d] for i in range(p_raw)):
            period = d
            break
    cyc = cyc[:period]
    # minimal transient: absorb head entries that already follow the cycle
    t = t_raw
    while t > 0 and counts[t - 1] == cyc[(t - 1 - t_raw) % period]:
        t -= 1
    rotated = tuple(cyc[(i + t - t_raw) % period] for i in range(period))
    return CountProfile(transient=t, head=tuple(counts[:t]), cycle=rotated)


def _run_detection(count_fn: Callable[[int], object],
                   state_fn: Callable[[int], object],
                   ready_fn: Callable[[int], bool],
                   step_bound: int) -> CountProfile:
    counts: list = []
    seen: dict = {}
    n = 0
    while True:
        if ready_fn(n):
            state = state_fn(n)
            if state in seen:
                t_raw = seen[state]
                return _canonicalize(counts, t_raw, n - seen[state])
            seen[state] = n
        counts.append(count_fn(n))
        n += 1
        if n > step_bound:
            raise RuntimeError(
                f"cycle detection exceeded its bound of {step_bound} steps; "
                "the state space arithmetic is wrong"
            )


def interval_count_profile(f: UpStream, x: OmegaSet) -> CountProfile:
    """Exact profile of c(n) = |[f(n), f(n+1)) ∩ X| on the decidable fragment."""
    if not isinstance(f, EPDiff):
        raise FragmentUnsupported(
            f"interval profiles need an EPDiff stream, got {f.kind}; use a horizon scan"
        )
    if not isinstance(x, EPWord):
        raise FragmentUnsupported(
            f"interval profiles need a word-form set, got {x.kind}; use a horizon scan"
        )
    p_f = len(f.prefix_diffs)
    p_x = len(x.prefix)
    period = x.period

    def ready(n: int) -> bool:
        return n >= p_f and f.value(n) >= p_x

    def state(n: int):
        return (f.diff_phase(n), (f.value(n) - p_x) % period)

    def count(n: int) -> int:
        return x.count_in(f.value(n), f.value(n + 1))

    # the state space has at most |cycle| * period points past the transients
    expiry = max(p_f, p_x)  # f(n) >= n, so f(n) >= p_x within p_x steps
    bound = expiry + len(f.cycle_diffs) * period + 2
    return _run_detection(count, state, ready, bound)


def colored_count_profile(f: UpStream, p: Partition) -> CountProfile:
    """Exact profile of the number of distinct blocks meeting [f(n), f(n+1))."""
    if not isinstance(f, EPDiff):
        raise FragmentUnsupported(
            f"colored profiles need an EPDiff stream, got {f.kind}; use a horizon scan"
        )
    p_f = len(f.prefix_diffs)
    t_w = p.transient_windows()
    joint = p.joint_cycle_windows()
    w = p.boundaries

    def ready(n: int) -> bool:
        return n >= p_f and p.window_index(f.value(n)) >= t_w

    def state(n: int):
        j = p.window_index(f.value(n))
        return (f.diff_phase(n), (j - t_w) % joint, f.value(n) - w.value(j))

    def count(n: int) -> int:
        return p.blocks_meeting(f.value(n), f.value(n + 1))

    max_window = max(w.value(t_w + i + 1) - w.value(t_w + i) for i in range(joint))
    expiry = max(p_f, w.value(t_w))
    bound = expiry + len(f.cycle_diffs) * joint * max_window + 2
    return _run_detection(count, state, ready, bound)


def measure_profile(f: UpStream, y: MeasurableSet) -> CountProfile:
    """Exact profile of μ([f(n), f(n+1)) ∩ Y) with rational values."""
    if not isinstance(f, EPDiff):
        raise FragmentUnsupported(
            f"measure profiles need an EPDiff stream, got {f.kind}; use a horizon scan"
        )
    p_f = len(f.prefix_diffs)

    def ready(n: int) -> bool:
        return n >= p_f and f.value(n) >= y.p0

    def state(n: int):
        return (f.diff_phase(n), y.copies_phase(f.value(n)))

    def count(n: int):
        return y.measure_in(f.value(n), f.value(n + 1))

    # residues of integer endpoints inside the rational period are finite:
    # scaling by the denominators gives at most num(L * D) classes
    den = y.period.denominator * y.p0.denominator
    classes = (y.period * den).numerator
    expiry = p_f + int(y.p0) + 2
    bound = expiry + len(f.cycle_diffs) * classes + 2
    return _run_detection(count, state, ready, bound)

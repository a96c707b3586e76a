"""Finitely represented strictly increasing functions on the naturals.

Three representation kinds are supported:

* ``EPDiff`` -- an explicit start value plus an eventually periodic sequence
  of positive differences (finite prefix, repeating cycle).  Everything about
  such a stream is decidable.
* ``Ramp`` -- difference at index ``n`` is ``alpha*n + beta``, so values grow
  quadratically.  Enough structure survives for exact slope comparisons.
* ``Program`` -- an opaque deterministic generator with a memo table and a
  step budget.  Recursive constructions land here; asymptotic questions about
  them are answered ``Unknown`` unless the construction declares a guarantee
  it can justify.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterator, Optional

from ..errors import MalformedSpec, ProgramDivergence

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class StreamTraits:
    """Classification flags for a stream; ``None`` means undetermined.

    ``min_diff`` is the exact minimum difference when it is computable from
    the representation.  ``in_gt_k(k)`` asks whether every interval
    ``[f(n), f(n+1))`` has length greater than ``k``.
    """

    min_diff: Optional[int]
    in_gt_id: Optional[bool]
    divergent_diffs: Optional[bool]
    declared_gap_gt: Optional[int] = None

    def in_gt_k(self, k: int) -> Optional[bool]:
        if self.min_diff is not None:
            return self.min_diff > k
        if self.declared_gap_gt is not None and self.declared_gap_gt >= k:
            return True
        return None


class UpStream:
    """Common interface: ``value(n)`` strictly increasing in ``n``."""

    kind = "abstract"

    def value(self, n: int) -> int:
        raise NotImplementedError

    def diff(self, n: int) -> int:
        return self.value(n + 1) - self.value(n)

    def values(self, count: int) -> list[int]:
        return [self.value(n) for n in range(count)]

    def traits(self) -> StreamTraits:
        raise NotImplementedError

    # Average eventual growth per step, exact where the representation allows.
    def slope(self) -> Optional[Fraction]:
        return None


class EPDiff(UpStream):
    kind = "ep"

    def __init__(self, start: int, prefix_diffs, cycle_diffs):
        prefix = tuple(int(d) for d in prefix_diffs)
        cycle = tuple(int(d) for d in cycle_diffs)
        if start < 0:
            raise MalformedSpec("start must be a natural number")
        if not cycle:
            raise MalformedSpec("difference cycle must be nonempty")
        if any(d < 1 for d in prefix + cycle):
            raise MalformedSpec("differences must be >= 1")
        self.start = int(start)
        self.prefix_diffs = prefix
        self.cycle_diffs = cycle
        # cumulative sums: _pre[i] = sum of first i prefix diffs
        self._pre = [0]
        for d in prefix:
            self._pre.append(self._pre[-1] + d)
        self._cyc = [0]
        for d in cycle:
            self._cyc.append(self._cyc[-1] + d)
        self.cycle_sum = self._cyc[-1]

    def __repr__(self):
        return f"EPDiff(start={self.start}, prefix={list(self.prefix_diffs)}, cycle={list(self.cycle_diffs)})"

    def __eq__(self, other):
        return (
            isinstance(other, EPDiff)
            and self.start == other.start
            and self.prefix_diffs == other.prefix_diffs
            and self.cycle_diffs == other.cycle_diffs
        )

    def __hash__(self):
        return hash((self.start, self.prefix_diffs, self.cycle_diffs))

    def value(self, n: int) -> int:
        if n < 0:
            raise ValueError("index must be a natural number")
        p = len(self.prefix_diffs)
        if n <= p:
            return self.start + self._pre[n]
        q, r = divmod(n - p, len(self.cycle_diffs))
        return self.start + self._pre[p] + q * self.cycle_sum + self._cyc[r]

    def diff(self, n: int) -> int:
        p = len(self.prefix_diffs)
        if n < p:
            return self.prefix_diffs[n]
        return self.cycle_diffs[(n - p) % len(self.cycle_diffs)]

    def diff_phase(self, n: int) -> int:
        """Cycle phase of the difference used at index ``n`` (n past prefix)."""
        p = len(self.prefix_diffs)
        return (n - p) % len(self.cycle_diffs)

    def traits(self) -> StreamTraits:
        diffs = self.prefix_diffs + self.cycle_diffs
        # A bounded difference sequence violates d(n) > n from some n on.
        return StreamTraits(min_diff=min(diffs), in_gt_id=False, divergent_diffs=False)

    def slope(self) -> Fraction:
        return Fraction(self.cycle_sum, len(self.cycle_diffs))


class Ramp(UpStream):
    kind = "ramp"

    def __init__(self, start: int, alpha: int, beta: int):
        if start < 0:
            raise MalformedSpec("start must be a natural number")
        if alpha < 1 or beta < 1:
            raise MalformedSpec("ramp needs alpha >= 1 and beta >= 1")
        self.start = int(start)
        self.alpha = int(alpha)
        self.beta = int(beta)

    def __repr__(self):
        return f"Ramp(start={self.start}, alpha={self.alpha}, beta={self.beta})"

    def __eq__(self, other):
        return (
            isinstance(other, Ramp)
            and (self.start, self.alpha, self.beta) == (other.start, other.alpha, other.beta)
        )

    def __hash__(self):
        return hash(("ramp", self.start, self.alpha, self.beta))

    def value(self, n: int) -> int:
        if n < 0:
            raise ValueError("index must be a natural number")
        return self.start + self.alpha * n * (n - 1) // 2 + self.beta * n

    def diff(self, n: int) -> int:
        return self.alpha * n + self.beta

    def traits(self) -> StreamTraits:
        return StreamTraits(min_diff=self.beta, in_gt_id=True, divergent_diffs=True)


class Program(UpStream):
    kind = "program"

    def __init__(
        self,
        pid: str,
        make_iter: Callable[[], Iterator[int]],
        budget: int = DEFAULT_BUDGET,
        declared: Optional[StreamTraits] = None,
    ):
        self.pid = pid
        self._make_iter = make_iter
        self._iter: Optional[Iterator[int]] = None
        self._memo: list[int] = []
        self._budget = budget
        self._declared = declared

    def __repr__(self):
        return f"Program({self.pid!r})"

    def value(self, n: int) -> int:
        if n < 0:
            raise ValueError("index must be a natural number")
        if self._iter is None:
            self._iter = self._make_iter()
        while len(self._memo) <= n:
            if self._budget <= 0:
                raise ProgramDivergence(f"step budget exhausted for program {self.pid!r}")
            self._budget -= 1
            v = next(self._iter)
            if self._memo and v <= self._memo[-1]:
                raise MalformedSpec(
                    f"program {self.pid!r} is not strictly increasing at index {len(self._memo)}"
                )
            self._memo.append(v)
        return self._memo[n]

    def traits(self) -> StreamTraits:
        if self._declared is not None:
            return self._declared
        # Probing can refute a flag but never confirm it.
        probe: list[int] = []
        try:
            probe = [self.value(i) for i in range(17)]
        except ProgramDivergence:
            probe = list(self._memo)
        gt_id: Optional[bool] = None
        if len(probe) >= 2:
            diffs = [b - a for a, b in zip(probe, probe[1:])]
            if any(d <= n for n, d in enumerate(diffs)):
                gt_id = False
        return StreamTraits(min_diff=None, in_gt_id=gt_id, divergent_diffs=None)


def make_up_stream(spec) -> UpStream:
    """Build a stream from a representation descriptor (dict or UpStream)."""
    if isinstance(spec, UpStream):
        return spec
    if not isinstance(spec, dict):
        raise MalformedSpec(f"cannot build a stream from {type(spec).__name__}")
    kind = spec.get("kind")
    if kind == "ep":
        return EPDiff(spec.get("start", 0), spec.get("prefix", ()), spec.get("cycle", ()))
    if kind == "ramp":
        return Ramp(spec.get("start", 0), spec.get("alpha", 1), spec.get("beta", 1))
    if kind == "program":
        raise MalformedSpec("program streams carry opaque state and cannot be built from a descriptor")
    raise MalformedSpec(f"unknown stream kind {kind!r}")


def stream_eval(f: UpStream, n: int) -> int:
    """Value of ``f`` at index ``n``."""
    return f.value(n)


def classify_stream(f: UpStream) -> StreamTraits:
    """Exact gap/growth flags for EPDiff and Ramp; tri-state for programs."""
    return f.traits()


def identity_stream() -> EPDiff:
    return EPDiff(0, (), (1,))


def _arith_reindex_ep(f: EPDiff, s: int) -> EPDiff:
    p = len(f.prefix_diffs)
    c = len(f.cycle_diffs)
    t0 = -(-p // s)  # first n with s*n >= p
    cyc_len = c // gcd(c, s % c if s % c else c) if c > 1 else 1
    vals = [f.value(s * n) for n in range(t0 + cyc_len + 1)]
    prefix = [vals[i + 1] - vals[i] for i in range(t0)]
    cycle = [vals[t0 + i + 1] - vals[t0 + i] for i in range(cyc_len)]
    return EPDiff(vals[0], prefix, cycle)


def reindex_stream(f: UpStream, schedule: str) -> UpStream:
    """Reindex a stream: ``pairs`` -> f(2n), ``squares`` -> f(n^2), ``shift`` -> f(n+1).

    ``pairs`` and ``shift`` preserve the EPDiff and Ramp kinds; ``squares``
    always yields a program-backed stream.
    """
    if schedule == "pairs":
        return _arith_stream(f, 2)
    if schedule == "shift":
        if isinstance(f, EPDiff):
            if f.prefix_diffs:
                return EPDiff(f.value(1), f.prefix_diffs[1:], f.cycle_diffs)
            cyc = f.cycle_diffs
            return EPDiff(f.value(1), (), cyc[1:] + cyc[:1])
        if isinstance(f, Ramp):
            return Ramp(f.start + f.beta, f.alpha, f.alpha + f.beta)

        def gen_shift():
            n = 1
            while True:
                yield f.value(n)
                n += 1

        return Program(f"shift({_pid(f)})", gen_shift)
    if schedule == "squares":
        def gen_sq():
            n = 0
            while True:
                yield f.value(n * n)
                n += 1

        # gap at n covers 2n+1 source gaps, so gaps exceed n and diverge
        tr = f.traits()
        declared = StreamTraits(
            min_diff=None,
            in_gt_id=True,
            divergent_diffs=True,
            declared_gap_gt=(tr.min_diff - 1) if tr.min_diff is not None else 0,
        )
        return Program(f"squares({_pid(f)})", gen_sq, declared=declared)
    raise MalformedSpec(f"unknown reindex schedule {schedule!r}")


def _arith_stream(f: UpStream, s: int) -> UpStream:
    """n -> f(s*n); preserves EPDiff and Ramp."""
    if s < 1:
        raise MalformedSpec("arith step must be >= 1")
    if s == 1:
        return f
    if isinstance(f, EPDiff):
        return _arith_reindex_ep(f, s)
    if isinstance(f, Ramp):
        alpha = s * s * f.alpha
        beta = s * f.beta + f.alpha * s * (s - 1) // 2
        return Ramp(f.start, alpha, beta)

    def gen():
        n = 0
        while True:
            yield f.value(s * n)
            n += 1

    return Program(f"arith{s}({_pid(f)})", gen)


def scale_values(f: UpStream, factor: int) -> UpStream:
    """Pointwise scaling n -> factor * f(n)."""
    if factor < 1:
        raise MalformedSpec("scale factor must be >= 1")
    if factor == 1:
        return f
    if isinstance(f, EPDiff):
        return EPDiff(
            f.start * factor,
            tuple(d * factor for d in f.prefix_diffs),
            tuple(d * factor for d in f.cycle_diffs),
        )
    if isinstance(f, Ramp):
        return Ramp(f.start * factor, f.alpha * factor, f.beta * factor)

    def gen():
        n = 0
        while True:
            yield factor * f.value(n)
            n += 1

    return Program(f"scale{factor}({_pid(f)})", gen)


def offset_values(f: UpStream, offset: int) -> UpStream:
    """Pointwise shift n -> f(n) + offset (offset >= 0)."""
    if offset < 0:
        raise MalformedSpec("offset must be a natural number")
    if offset == 0:
        return f
    if isinstance(f, EPDiff):
        return EPDiff(f.start + offset, f.prefix_diffs, f.cycle_diffs)
    if isinstance(f, Ramp):
        return Ramp(f.start + offset, f.alpha, f.beta)

    def gen():
        n = 0
        while True:
            yield f.value(n) + offset
            n += 1

    return Program(f"offset{offset}({_pid(f)})", gen)


def _pid(f: UpStream) -> str:
    return f.pid if isinstance(f, Program) else repr(f)


def recurrence_program(pid: str, first: int, step: Callable[[int, int], int],
                       budget: int = DEFAULT_BUDGET,
                       declared: Optional[StreamTraits] = None) -> Program:
    """Stream h with h(0) = first and h(n+1) = step(h(n), n)."""

    def gen():
        v = first
        n = 0
        while True:
            yield v
            v = step(v, n)
            n += 1

    return Program(pid, gen, budget=budget, declared=declared)

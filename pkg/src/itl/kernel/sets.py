"""Infinite subsets of the naturals with finite descriptions.

``EPWord`` stores the characteristic word as a finite prefix plus a repeating
cycle containing at least one ``1`` (so the set is infinite).  ``RangeOf``
stores the set of values of a strictly increasing stream.  Membership,
counting on ``[a, b)`` and increasing enumeration are mutually consistent by
construction and are cross-checked in the tests.
"""

from __future__ import annotations

from typing import Optional

from ..errors import FragmentUnsupported, MalformedSpec
from .streams import EPDiff, Program, Ramp, UpStream


class OmegaSet:
    kind = "abstract"

    def member(self, n: int) -> bool:
        raise NotImplementedError

    def count_in(self, a: int, b: int) -> int:
        raise NotImplementedError

    def enumerate(self, i: int) -> int:
        raise NotImplementedError

    def co_infinite(self) -> Optional[bool]:
        raise NotImplementedError


class EPWord(OmegaSet):
    kind = "word"

    def __init__(self, prefix_word, cycle_word):
        prefix = tuple(int(b) for b in prefix_word)
        cycle = tuple(int(b) for b in cycle_word)
        if not cycle:
            raise MalformedSpec("cycle word must be nonempty")
        if any(b not in (0, 1) for b in prefix + cycle):
            raise MalformedSpec("characteristic words are over bits")
        if 1 not in cycle:
            raise MalformedSpec("cycle must contain a 1 (the set must be infinite)")
        self.prefix = prefix
        self.cycle = cycle
        self._pre_ones = [0]
        for b in prefix:
            self._pre_ones.append(self._pre_ones[-1] + b)
        self._cyc_ones = [0]
        for b in cycle:
            self._cyc_ones.append(self._cyc_ones[-1] + b)
        self.ones_per_cycle = self._cyc_ones[-1]
        self.one_offsets = tuple(i for i, b in enumerate(cycle) if b)

    def __repr__(self):
        pre = "".join(map(str, self.prefix))
        cyc = "".join(map(str, self.cycle))
        return f"EPWord(prefix='{pre}', cycle='{cyc}')"

    def __eq__(self, other):
        return isinstance(other, EPWord) and (self.prefix, self.cycle) == (other.prefix, other.cycle)

    def __hash__(self):
        return hash((self.prefix, self.cycle))

    @property
    def period(self) -> int:
        return len(self.cycle)

    def member(self, n: int) -> bool:
        if n < 0:
            return False
        if n < len(self.prefix):
            return bool(self.prefix[n])
        return bool(self.cycle[(n - len(self.prefix)) % len(self.cycle)])

    def _ones_below(self, x: int) -> int:
        """Number of elements < x."""
        if x <= 0:
            return 0
        p = len(self.prefix)
        if x <= p:
            return self._pre_ones[x]
        q, r = divmod(x - p, len(self.cycle))
        return self._pre_ones[p] + q * self.ones_per_cycle + self._cyc_ones[r]

    def count_in(self, a: int, b: int) -> int:
        if a > b:
            raise ValueError("count_in needs a <= b")
        return self._ones_below(b) - self._ones_below(a)

    def enumerate(self, i: int) -> int:
        if i < 0:
            raise ValueError("enumeration index must be a natural number")
        p = len(self.prefix)
        pre_ones = self._pre_ones[p]
        if i < pre_ones:
            # scan the finite prefix
            seen = -1
            for pos, b in enumerate(self.prefix):
                seen += b
                if seen == i:
                    return pos
        j = i - pre_ones
        q, r = divmod(j, self.ones_per_cycle)
        return p + q * len(self.cycle) + self.one_offsets[r]

    def co_infinite(self) -> bool:
        return 0 in self.cycle


class RangeOf(OmegaSet):
    kind = "range"

    def __init__(self, stream: UpStream):
        self.stream = stream

    def __repr__(self):
        return f"RangeOf({self.stream!r})"

    def _first_index_geq(self, x: int) -> int:
        """Least i with stream(i) >= x (0 when x <= stream(0))."""
        s = self.stream
        if s.value(0) >= x:
            return 0
        lo, hi = 0, 1
        while s.value(hi) < x:
            lo, hi = hi, hi * 2
        while lo + 1 < hi:
            mid = (lo + hi) // 2
            if s.value(mid) < x:
                lo = mid
            else:
                hi = mid
        return hi

    def member(self, n: int) -> bool:
        i = self._first_index_geq(n)
        return self.stream.value(i) == n

    def count_in(self, a: int, b: int) -> int:
        if a > b:
            raise ValueError("count_in needs a <= b")
        if a == b:
            return 0
        return self._first_index_geq(b) - self._first_index_geq(a)

    def enumerate(self, i: int) -> int:
        return self.stream.value(i)

    def co_infinite(self) -> Optional[bool]:
        s = self.stream
        if isinstance(s, EPDiff):
            return any(d >= 2 for d in s.cycle_diffs)
        if isinstance(s, Ramp):
            return True  # differences unbounded
        tr = s.traits()
        if tr.divergent_diffs:
            return True
        if tr.min_diff is not None and tr.min_diff >= 2:
            return True
        if tr.declared_gap_gt is not None and tr.declared_gap_gt >= 1:
            return True
        return None


def make_omega_set(spec) -> OmegaSet:
    """Build an OmegaSet from a descriptor dict (or pass one through)."""
    if isinstance(spec, OmegaSet):
        return spec
    if not isinstance(spec, dict):
        raise MalformedSpec(f"cannot build a set from {type(spec).__name__}")
    kind = spec.get("kind")
    if kind == "word":
        return EPWord(_bits(spec.get("prefix", "")), _bits(spec.get("cycle", "")))
    if kind == "range":
        from .streams import make_up_stream

        return RangeOf(make_up_stream(spec["stream"]))
    raise MalformedSpec(f"unknown set kind {kind!r}")


def _bits(w):
    if isinstance(w, str):
        return tuple(int(ch) for ch in w)
    return tuple(int(b) for b in w)


def full_set() -> EPWord:
    return EPWord((), (1,))


def set_count_in(x: OmegaSet, a: int, b: int) -> int:
    """Exact |[a, b) ∩ X|."""
    return x.count_in(a, b)


def set_enumerate(x: OmegaSet, i: int) -> int:
    """The i-th element of X in increasing order."""
    return x.enumerate(i)


def range_set(b: UpStream) -> OmegaSet:
    """The set {b(n) : n} of values of a stream.

    EPDiff streams have eventually periodic gaps, so their range is emitted
    directly in word form; other kinds stay range-backed.
    """
    if isinstance(b, EPDiff):
        p = len(b.prefix_diffs)
        anchor = b.value(p)
        prefix_bits = [0] * anchor
        for i in range(p + 1):
            v = b.value(i)
            if v < anchor:
                prefix_bits[v] = 1
        cycle_bits = [0] * b.cycle_sum
        for off in b._cyc[:-1]:
            cycle_bits[off] = 1
        return EPWord(prefix_bits, cycle_bits)
    return RangeOf(b)


def word_from_range(b: EPDiff) -> EPWord:
    out = range_set(b)
    assert isinstance(out, EPWord)
    return out


def sample_enumeration(x: OmegaSet, schedule) -> UpStream:
    """Stream of every s-th element (``("arith", s)``) or the n^2-th (``"squares"``).

    Arithmetic sampling of a word-form set keeps an eventually periodic
    difference structure, so the result is EPDiff; squares sampling is
    program-backed.
    """
    if schedule == "squares":
        def gen():
            n = 0
            while True:
                yield x.enumerate(n * n)
                n += 1

        from .streams import StreamTraits

        declared = StreamTraits(min_diff=None, in_gt_id=True, divergent_diffs=True,
                                declared_gap_gt=0)
        return Program(f"squares-of({x!r})", gen, declared=declared)
    if isinstance(schedule, tuple) and len(schedule) == 2 and schedule[0] == "arith":
        s = int(schedule[1])
        if s < 1:
            raise MalformedSpec("arith sampling step must be >= 1")
        if isinstance(x, EPWord):
            p1 = x._pre_ones[len(x.prefix)]
            w = x.ones_per_cycle
            from math import gcd

            t0 = -(-p1 // s)  # first n with s*n >= p1
            cyc_len = w // gcd(w, s % w if s % w else w) if w > 1 else 1
            vals = [x.enumerate(s * n) for n in range(t0 + cyc_len + 1)]
            prefix = [vals[i + 1] - vals[i] for i in range(t0)]
            cycle = [vals[t0 + i + 1] - vals[t0 + i] for i in range(cyc_len)]
            return EPDiff(vals[0], prefix, cycle)
        if isinstance(x, RangeOf):
            from .streams import _arith_stream

            return _arith_stream(x.stream, s)
        raise FragmentUnsupported(f"cannot sample {x!r}")
    raise MalformedSpec(f"unknown sampling schedule {schedule!r}")

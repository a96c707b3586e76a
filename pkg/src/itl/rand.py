"""Counter-based splittable pseudo-randomness.

Every generated object must be reproducible from ``(params, seed)`` alone,
independent of Python version or process layout, so we carry our own small
splitmix64 core instead of ``random.Random``.  Child seeds are derived by
mixing a parent seed with a counter, which keeps parallel trials independent
and replayable.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return z ^ (z >> 31)


def split_seed(seed: int, index: int) -> int:
    """Derive the child seed for trial ``index`` under ``seed``."""
    return _mix((seed + (index + 1) * _GAMMA) & MASK64)


class Rng:
    """Deterministic splitmix64 generator with the few draws we need."""

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & MASK64
        return _mix(self._state)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in the inclusive range [lo, hi]."""
        if hi < lo:
            raise ValueError(f"empty range [{lo}, {hi}]")
        span = hi - lo + 1
        return lo + self.next_u64() % span

    def choice(self, seq):
        if not seq:
            raise ValueError("choice from empty sequence")
        return seq[self.randint(0, len(seq) - 1)]

    def chance(self, num: int, den: int) -> bool:
        """True with probability num/den."""
        return self.randint(0, den - 1) < num

    def spawn(self, index: int) -> "Rng":
        return Rng(split_seed(self._state, index))

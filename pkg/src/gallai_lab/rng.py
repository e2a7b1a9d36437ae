"""Seeded pseudo-random numbers with a fixed, platform-independent algorithm.

Generators must give bit-identical graphs everywhere, so nothing here touches
the :mod:`random` module. The algorithm is:

* seeding: the 64-bit seed is passed through one round of SplitMix64
  (Steele, Lea, Flood 2014) to get the initial state. A zero state is
  replaced by the SplitMix64 golden-gamma constant ``0x9E3779B97F4A7C15``.
* stepping: xorshift64* (Vigna 2016) with shifts 12, 25, 27 and output
  multiplier ``0x2545F4914F6CDD1D``; all arithmetic is modulo 2**64.
* bounded integers: rejection sampling on the top of the 64-bit range, so
  ``below(n)`` is exactly uniform on ``[0, n)``.
"""
from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """One SplitMix64 output for input ``x`` (used for seeding and seed derivation)."""
    z = (x + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(*parts: int) -> int:
    """Fold integers into one 64-bit seed, deterministically."""
    h = 0
    for p in parts:
        h = splitmix64(h ^ (p & MASK64))
    return h


class XorShift64Star:
    def __init__(self, seed: int):
        if not 0 <= seed <= MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        state = splitmix64(seed)
        self._state = state or GOLDEN_GAMMA

    def next_u64(self) -> int:
        x = self._state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self._state = x
        return (x * 0x2545F4914F6CDD1D) & MASK64

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def chance(self, num: int, den: int) -> bool:
        """True with probability exactly ``num/den``."""
        return self.below(den) < num

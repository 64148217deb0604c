"""Seeded 64-bit linear congruential generator (fixed constants, reproducible everywhere)."""
from __future__ import annotations

_MULT = 6364136223846793005
_INC = 1442695040888963407
_MASK = (1 << 64) - 1


class LCG:
    def __init__(self, seed: int = 0):
        self.state = (int(seed) * 0x9E3779B97F4A7C15 + _INC) & _MASK

    def next64(self) -> int:
        self.state = (self.state * _MULT + _INC) & _MASK
        return self.state

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection on the high 32 bits."""
        if n <= 0:
            raise ValueError("n must be positive")
        if n > 1 << 32:
            return ((self.next64() >> 16) * (self.next64() >> 16)) % n
        limit = (1 << 32) - ((1 << 32) % n)
        while True:
            x = self.next64() >> 32
            if x < limit:
                return x % n

    def randint(self, lo: int, hi: int) -> int:
        """Inclusive range."""
        return lo + self.below(hi - lo + 1)

    def element(self, field, span: int = 10):
        if field.is_finite:
            return self.below(field.q)
        return field.from_int(self.randint(-span, span))

    def choice(self, seq):
        return seq[self.below(len(seq))]

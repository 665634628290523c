"""SplitMix64 stream and the seeded interlacing-pair generator."""

from __future__ import annotations

import numpy as np

from .polynomial import InterlacingPair

_MASK = (1 << 64) - 1


class SplitMix64:
    """Small 64-bit generator with a fixed, language-neutral recurrence."""

    def __init__(self, seed: int):
        self.state = int(seed) & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        # top 53 bits -> [0, 1)
        return lo + (hi - lo) * ((self.next_u64() >> 11) * 2.0**-53)

    def uniforms(self, n: int, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
        return np.array([self.uniform(lo, hi) for _ in range(n)])

    def integer(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return lo + int(self.uniform() * (hi - lo + 1))

    def normal(self) -> float:
        u1 = max(self.uniform(), 2.0**-53)
        return float(np.sqrt(-2 * np.log(u1)) * np.cos(2 * np.pi * self.uniform()))


def random_roots(rng: SplitMix64, n: int, width: float = 10.0, min_gap: float = 0.05) -> np.ndarray:
    """n sorted uniform draws on [-width/2, width/2] with gaps >= min_gap * width / n."""
    gap = min_gap * width / n
    # draw the free length then add the mandatory gaps back
    free = width - gap * (n - 1)
    x = np.sort(rng.uniforms(n, 0.0, free))
    return x + gap * np.arange(n) - width / 2


def gen(seed: int, degree: int, width: float = 10.0) -> InterlacingPair:
    """Random monic interlacing pair with deg p = ``degree``."""
    if degree < 2:
        raise ValueError("degree must be >= 2")
    rng = SplitMix64(seed)
    x = random_roots(rng, 2 * degree - 1, width)
    return InterlacingPair.from_roots(x[::2], x[1::2])


def gen_many(seed: int, count: int, degrees) -> list[InterlacingPair]:
    """``count`` pairs with degrees cycling through ``degrees``; pair i uses seed + i."""
    degrees = list(degrees)
    return [gen(seed + i, degrees[i % len(degrees)]) for i in range(count)]


__all__ = ["SplitMix64", "random_roots", "gen", "gen_many"]

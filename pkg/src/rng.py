"""Seeded 64-bit linear congruential generator shared by every random step.

Splits, initial weights and shuffles drawn from it
reproduce exactly across runs and platforms.
"""

from typing import List, MutableSequence, Sequence, Tuple, TypeVar

import numpy as np

LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
MASK64 = (1 << 64) - 1

_FLOAT_SCALE = 1.0 / (1 << 53)

T = TypeVar("T")


class Lcg64:
    """state <- (LCG_MULTIPLIER * state + LCG_INCREMENT) mod 2**64."""

    def __init__(self, seed: int):
        self._state = int(seed) & MASK64

    @classmethod
    def derive(cls, seed: int, stream: int) -> "Lcg64":
        """Independent stream for the same user seed."""
        return cls((int(seed) * LCG_MULTIPLIER + int(stream)) & MASK64)

    def next_uint64(self) -> int:
        self._state = (self._state * LCG_MULTIPLIER + LCG_INCREMENT) & MASK64
        return self._state

    def random(self) -> float:
        """Uniform float in [0, 1) from the top 53 bits of the next state."""
        return (self.next_uint64() >> 11) * _FLOAT_SCALE

    def uniform(self, low: float, high: float) -> float:
        return low + (high - low) * self.random()

    def randbelow(self, n: int) -> int:
        if n <= 0:
            raise ValueError(f"randbelow needs a positive bound, got {n}")
        return int(self.random() * n)

    def choice(self, items: Sequence[T]) -> T:
        return items[self.randbelow(len(items))]

    def shuffle(self, items: MutableSequence) -> None:
        """In-place Fisher-Yates shuffle, last index first."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def uniform_array(self, shape: Tuple[int, ...], scale: float) -> np.ndarray:
        """Row-major float64 array with entries uniform in [-scale, +scale]."""
        size = int(np.prod(shape)) if shape else 1
        values: List[float] = [self.uniform(-scale, scale) for _ in range(size)]
        return np.asarray(values, dtype=np.float64).reshape(shape)

"""Deterministic 64-bit pseudo-random stream.

Splitmix64 is pinned as the single generator for all randomized steps
(bootstrap sampling, per-node feature draws, fold shuffling) so that a
seed reproduces bit-identical results on every platform.  The identifier
below is written into saved model headers.
"""

from __future__ import annotations

from typing import Sequence

RNG_ID = "splitmix64-v1"

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class Rng:
    """Splitmix64 sequence starting from a 64-bit seed."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n).  Modulo bias is ~n/2**64, negligible here."""
        if n <= 0:
            raise ValueError("below() requires n >= 1")
        return self.next_u64() % n

    def uniform(self) -> float:
        """Uniform float in [0, 1)."""
        return self.next_u64() / 2**64

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, population: Sequence[int], k: int) -> list[int]:
        """k distinct elements, drawn without replacement (partial Fisher-Yates)."""
        if not 0 <= k <= len(population):
            raise ValueError(f"cannot sample {k} from {len(population)} items")
        pool = list(population)
        for i in range(k):
            j = i + self.below(len(pool) - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]


def derive_seed(seed: int, index: int) -> int:
    """Child seed for worker `index`: one splitmix64 step over seed XOR index.

    Guarantees that parallel and serial execution of indexed workers draw
    from identical per-worker streams.
    """
    return Rng((seed ^ index) & _MASK64).next_u64()

"""
Splittable random number streams.

Every stream is a counter-based Philox generator keyed by a master seed and a
path of child indices, so that the stream handed to task i is the same whether
tasks run serially or on many workers.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np


class RNGStream:
    "A reproducible random stream identified by a master seed and a spawn path."

    seed: int
    path: Tuple[int, ...]
    generator: np.random.Generator

    def __init__(self, seed: int, path: Tuple[int, ...] = ()):
        if seed < 0 or seed >= 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer: {seed}")
        self.seed = int(seed)
        self.path = tuple(int(i) for i in path)
        sequence = np.random.SeedSequence(entropy=self.seed, spawn_key=self.path)
        self.generator = np.random.Generator(np.random.Philox(sequence))

    def child(self, index: int) -> RNGStream:
        "An independent stream for sub-task index; does not consume state of this stream."

        if index < 0:
            raise ValueError(f"child index must be nonnegative: {index}")
        return RNGStream(self.seed, self.path + (index,))

    def children(self, count: int) -> List[RNGStream]:
        return [self.child(i) for i in range(count)]

    def uniform(self, size=None) -> np.ndarray:
        return self.generator.random(size)

    def __repr__(self) -> str:
        return f"RNGStream(seed={self.seed}, path={self.path})"

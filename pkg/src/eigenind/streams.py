"""Counter-based random streams for reproducible parallel Monte Carlo.

Every Monte Carlo loop in the package is split into fixed-size blocks of
samples.  Block ``b`` of a stream draws from a Philox generator keyed by
``(seed, tag, b)``, so the numbers a block sees never depend on how many
worker threads are used or in which order blocks finish.  Results are
reduced in block order.
"""

from __future__ import annotations

import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, TypeVar

import numpy as np

T = TypeVar("T")

DEFAULT_BLOCK = 8192


def _tag_word(tag: str) -> int:
    return zlib.crc32(tag.encode("utf-8"))


@dataclass(frozen=True)
class RandomStream:
    seed: int = 0
    threads: int = 1
    block_size: int = DEFAULT_BLOCK
    tag: tuple[int, ...] = ()

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.threads < 1 or self.block_size < 1:
            raise ValueError("threads and block_size must be positive")

    def substream(self, name: str) -> "RandomStream":
        """Independent child stream; children with different names never overlap."""
        return replace(self, tag=self.tag + (_tag_word(name),))

    def generator(self, block: int) -> np.random.Generator:
        ss = np.random.SeedSequence([self.seed & 0xFFFFFFFF, self.seed >> 32, *self.tag, block])
        return np.random.Generator(np.random.Philox(ss))

    def block_sizes(self, n_samples: int) -> list[int]:
        full, rest = divmod(n_samples, self.block_size)
        return [self.block_size] * full + ([rest] if rest else [])

    def map_blocks(self, n_samples: int, fn: Callable[[np.random.Generator, int], T]) -> list[T]:
        """Run ``fn(generator, count)`` on every block; results come back in block order."""
        sizes = self.block_sizes(n_samples)
        jobs = [(self.generator(b), k) for b, k in enumerate(sizes)]
        if self.threads == 1 or len(jobs) <= 1:
            return [fn(gen, k) for gen, k in jobs]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            return list(pool.map(lambda job: fn(*job), jobs))


def as_stream(rng: "RandomStream | int | None") -> RandomStream:
    if rng is None:
        return RandomStream()
    if isinstance(rng, RandomStream):
        return rng
    return RandomStream(seed=int(rng))


def bernoulli_summary(hits: int, total: int) -> tuple[float, float]:
    """Mean and standard error of a Bernoulli frequency."""
    if total < 1:
        raise ValueError("need at least one sample")
    p = hits / total
    return p, float(np.sqrt(max(p * (1.0 - p), 0.0) / total))

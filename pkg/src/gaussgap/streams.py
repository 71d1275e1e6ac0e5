"""Deterministic seeded RNG streams for reproducible parallel Monte Carlo.

All randomness in the package flows from a single 64-bit seed. Work is cut
into fixed-size chunks; each chunk draws from its own counter-based Philox
stream, so the output is a pure function of (inputs, seed) no matter how the
chunks are scheduled across threads.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

import numpy as np

_MASK64 = (1 << 64) - 1

#: default number of Monte Carlo draws per chunk
CHUNK_SIZE = 512


def _splitmix64(x: int) -> int:
    # Finalizer from the splitmix64 generator; bijective on 64-bit words.
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (x ^ (x >> 31)) & _MASK64


def derive(seed: int, *tags: int) -> int:
    """Derive an independent 64-bit sub-seed from ``seed`` and integer tags.

    Used to split one user-facing seed into statistically independent
    streams (e.g. the two summands of a sum-of-processes sampler).
    """
    x = seed & _MASK64
    for t in tags:
        x = _splitmix64(x ^ ((t & _MASK64) * 0xD1B54A32D192ED03 & _MASK64))
    return x


def substream(seed: int, chunk: int = 0) -> np.random.Generator:
    """Counter-based Philox stream for a given (seed, chunk index) pair.

    Distinct chunks get disjoint counter blocks of 2**128 states, so streams
    never overlap and can be generated independently in any order.
    """
    return np.random.Generator(np.random.Philox(key=seed & _MASK64, counter=chunk << 128))


def chunk_ranges(n_total: int, chunk_size: int = CHUNK_SIZE) -> list[tuple[int, int, int]]:
    """Split ``n_total`` items into (chunk_index, start, stop) triples."""
    out = []
    i = 0
    start = 0
    while start < n_total:
        stop = min(start + chunk_size, n_total)
        out.append((i, start, stop))
        i += 1
        start = stop
    return out


def map_chunks(
    worker: Callable[[int, int, int], np.ndarray],
    n_total: int,
    threads: int = 1,
    chunk_size: int = CHUNK_SIZE,
) -> list[np.ndarray]:
    """Run ``worker(chunk_index, start, stop)`` over all chunks.

    Results come back ordered by chunk index regardless of ``threads``, so
    any reduction performed by the caller sees a fixed accumulation order.
    """
    ranges = chunk_ranges(n_total, chunk_size)
    if threads <= 1 or len(ranges) <= 1:
        return [worker(i, a, b) for i, a, b in ranges]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(worker, i, a, b) for i, a, b in ranges]
        return [f.result() for f in futures]

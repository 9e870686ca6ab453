"""Reproducible random number generation.

Everything random in this package flows through one fixed, documented
generator so that results are bit-identical across platforms and worker
counts:

* stream: splitmix64 (64-bit state, golden-ratio increment, 3-round mix);
* bounded integers: rejection sampling, so there is no modulo bias;
* shuffles: Fisher-Yates from index n-1 downward;
* per-task streams: ``derive_seed(master, index)`` mixes a master seed with
  a task index, so trial i's stream never depends on how trials are batched.

A vectorized engine (`BatchRng`) runs many independent lanes at once and
produces, lane for lane, exactly the same draws as `Rng` would. The
equivalence is pinned by tests.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """splitmix64 finalizer: a fixed 64-bit avalanche of ``z``."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return (z ^ (z >> 31)) & MASK64


def derive_seed(master: int, index: int) -> int:
    """Seed for the ``index``-th sub-stream of ``master``.

    Defined as ``mix64(master XOR (index + 1) * GOLDEN)``; the +1 keeps
    index 0 from collapsing to the master seed itself.
    """
    return mix64((master & MASK64) ^ (((index + 1) * GOLDEN) & MASK64))


class Rng:
    """Scalar splitmix64 stream."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = int(seed) & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def randbelow(self, k: int) -> int:
        """Uniform integer in [0, k) by rejection (no modulo bias)."""
        if k <= 0:
            raise ValueError(f"randbelow bound must be positive, got {k}")
        limit = ((1 << 64) // k) * k
        while True:
            u = self.next_u64()
            if u < limit:
                return u % k

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle, iterating from the top index down."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]


class BatchRng:
    """Many independent splitmix64 lanes advanced in lockstep with numpy.

    Lane ``t`` seeded with ``seeds[t]`` emits exactly the draws of
    ``Rng(seeds[t])``; rejection re-draws advance only the rejected lanes.
    """

    def __init__(self, seeds: np.ndarray):
        self.states = np.asarray(seeds, dtype=np.uint64).copy()

    @property
    def lanes(self) -> int:
        return self.states.shape[0]

    def _next(self, idx: np.ndarray | slice) -> np.ndarray:
        self.states[idx] += np.uint64(GOLDEN)
        z = self.states[idx].copy()
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        return z ^ (z >> np.uint64(31))

    def randbelow(self, k: int) -> np.ndarray:
        """Per-lane uniform integer in [0, k), one accepted draw per lane."""
        if k <= 0:
            raise ValueError(f"randbelow bound must be positive, got {k}")
        limit_int = ((1 << 64) // k) * k
        out = self._next(slice(None))
        if limit_int < (1 << 64):  # k divides 2^64 exactly otherwise
            limit = np.uint64(limit_int)
            pending = np.flatnonzero(out >= limit)
            while pending.size:
                out[pending] = self._next(pending)
                pending = pending[out[pending] >= limit]
        return (out % np.uint64(k)).astype(np.int64)

    def permutations(self, n: int) -> np.ndarray:
        """One permutation of 0..n-1 per lane (rows), Fisher-Yates order.

        Row ``t`` equals what ``Rng.shuffle`` produces on lane ``t``'s stream.
        """
        lanes = self.lanes
        out = np.tile(np.arange(n, dtype=np.int32), (lanes, 1))
        rows = np.arange(lanes)
        for i in range(n - 1, 0, -1):
            j = self.randbelow(i + 1)
            left = out[rows, i].copy()
            out[rows, i] = out[rows, j]
            out[rows, j] = left
        return out


def batch_seeds(master: int, start: int, count: int) -> np.ndarray:
    """Seeds for trial indices ``start .. start+count-1`` as a uint64 array."""
    idx = np.arange(start, start + count, dtype=np.uint64)
    z = (np.uint64(master & MASK64)
         ^ ((idx + np.uint64(1)) * np.uint64(GOLDEN)))
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))

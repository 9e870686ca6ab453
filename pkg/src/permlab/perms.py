"""Permutations of 0..n-1: construction, sampling, shift statistics, surgery.

A permutation sigma is stored by its image array (``image[i] = sigma(i)``).
The displacement of position i is ``v(i) = (i - sigma(i)) mod n``; the shift
histogram counts, for each class ``l``, how many positions are displaced by
``l``. Class 0 counts the fixed points.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from math import factorial
from typing import Iterator, Sequence

from .errors import NotABijection, PositionOutOfRange, RankOutOfRange
from .rng import Rng


@dataclass(frozen=True)
class Permutation:
    """A bijection on 0..n-1, immutable and validated at construction."""

    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        if n == 0:
            raise NotABijection("a permutation needs at least one element")
        seen = [False] * n
        for v in self.image:
            if not isinstance(v, int) or not 0 <= v < n or seen[v]:
                raise NotABijection(
                    f"{self.image!r} is not a permutation of 0..{n - 1}")
            seen[v] = True

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def inverse_of(self, value: int) -> int:
        """The position holding ``value``."""
        return self.image.index(value)

    def to_json(self) -> str:
        return json.dumps(list(self.image))


@dataclass(frozen=True)
class ShiftHistogram:
    """Counts per displacement class; ``counts[l]`` is the size of class l."""

    counts: tuple[int, ...]

    def __post_init__(self):
        n = len(self.counts)
        if sum(self.counts) != n or any(not 0 <= c <= n for c in self.counts):
            raise ValueError(f"invalid shift histogram {self.counts!r}")

    @property
    def n(self) -> int:
        return len(self.counts)


def make_permutation(values: Sequence[int]) -> Permutation:
    """Validate ``values`` and wrap it as a Permutation."""
    return Permutation(tuple(int(v) for v in values))


def identity_permutation(n: int) -> Permutation:
    return Permutation(tuple(range(n)))


def random_permutation(n: int, rng: Rng) -> Permutation:
    """Uniform permutation of 0..n-1 drawn from ``rng``'s stream."""
    if n < 1:
        raise NotABijection("order must be at least 1")
    items = list(range(n))
    rng.shuffle(items)
    return Permutation(tuple(items))


def shift_vector(p: Permutation) -> tuple[int, ...]:
    """Displacements ``v(i) = (i - sigma(i)) mod n`` for each position."""
    n = p.n
    return tuple((i - s) % n for i, s in enumerate(p.image))


def shift_histogram(p: Permutation) -> ShiftHistogram:
    counts = [0] * p.n
    for v in shift_vector(p):
        counts[v] += 1
    return ShiftHistogram(tuple(counts))


def argmax_shift(h: ShiftHistogram) -> int:
    """Most populous displacement class; ties go to the lowest index."""
    return h.counts.index(max(h.counts))


def apply_transposition(p: Permutation, a: int, b: int) -> Permutation:
    """New permutation with the images at positions a and b exchanged."""
    n = p.n
    if not (0 <= a < n and 0 <= b < n):
        raise PositionOutOfRange(f"positions ({a}, {b}) not in 0..{n - 1}")
    img = list(p.image)
    img[a], img[b] = img[b], img[a]
    return Permutation(tuple(img))


def rotate_values(p: Permutation, l: int) -> Permutation:
    """The permutation ``i -> (sigma(i) + l) mod n``."""
    n = p.n
    return Permutation(tuple((s + l) % n for s in p.image))


def fixed_points(p: Permutation) -> int:
    return sum(1 for i, s in enumerate(p.image) if i == s)


def lex_rank(p: Permutation) -> int:
    """Rank of ``p`` among all permutations of its order, in lex order."""
    n = p.n
    remaining = list(range(n))
    rank = 0
    for i, s in enumerate(p.image):
        pos = remaining.index(s)
        rank += pos * factorial(n - 1 - i)
        remaining.pop(pos)
    return rank


def lex_unrank(n: int, rank: int) -> Permutation:
    """Inverse of :func:`lex_rank`: the rank-th permutation in lex order."""
    if not 0 <= rank < factorial(n):
        raise RankOutOfRange(f"rank {rank} not in 0..{n}!-1")
    remaining = list(range(n))
    image = []
    for i in range(n):
        f = factorial(n - 1 - i)
        pos, rank = divmod(rank, f)
        image.append(remaining.pop(pos))
    return Permutation(tuple(image))


def iter_permutations(n: int) -> Iterator[tuple[int, ...]]:
    """All image tuples of order n in lexicographic order."""
    import itertools
    return itertools.permutations(range(n))


def example_deck() -> Permutation:
    """The 52-card worked example shipped as a data fixture.

    Card v sits in locker i when ``image[i] = v``; cards map to 0..51 as
    clubs 0-12, diamonds 13-25, hearts 26-38, spades 39-51, each suit in
    the order 2,3,...,10,J,Q,K,A.
    """
    text = resources.files("permlab.data").joinpath("example_deck.json").read_text()
    return make_permutation(json.loads(text))

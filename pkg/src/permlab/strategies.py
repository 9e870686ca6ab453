"""Hint+guess strategies for the needle-in-a-haystack game.

A strategy is a pair of deterministic functions: ``hint`` maps the hidden
permutation to a message in 0..m-1, ``guess`` maps (message, target) to the
single position probed. Success means the probed position holds the target.

Concrete strategies:

* shift   -- hint = most populous displacement class, probe (target + hint) mod n;
* naive   -- hint = content of position 0, probe 0 on a match else position 1;
* latin   -- hint = closest row of an n x n latin square, probe through that
             row's inverse (the shift strategy is the cyclic special case);
* baseline -- no advice (m = 1), probe the target's own position.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

from .enumeration import check_guard
from .errors import NotLatin, UnknownStrategy
from .fields import PartitionStrategy, aic_check  # noqa: F401  (re-export)
from .perms import Permutation, argmax_shift, shift_histogram

EVAL_GUARD = 8


@dataclass(frozen=True)
class Strategy:
    """A deterministic advice strategy for order n with hints in 0..m-1."""

    name: str
    n: int
    m: int
    hint: Callable[[Permutation], int]
    guess: Callable[[int, int], int]


@dataclass(frozen=True)
class LatinSquare:
    """n rows that are permutations of 0..n-1, with every column one too."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        cols = set(range(n))
        for r in self.rows:
            if len(r) != n or set(r) != cols:
                raise NotLatin(f"row {r!r} is not a permutation of 0..{n - 1}")
        for c in range(n):
            if {r[c] for r in self.rows} != cols:
                raise NotLatin(f"column {c} repeats a value")

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def cyclic(cls, n: int) -> "LatinSquare":
        """Row r is the shift-by-r permutation ``i -> (i - r) mod n``."""
        return cls(tuple(tuple((i - r) % n for i in range(n)) for r in range(n)))

    @classmethod
    def from_json(cls, text: str) -> "LatinSquare":
        data = json.loads(text)
        if not isinstance(data, list):
            raise NotLatin("latin square file must hold a JSON matrix")
        return cls(tuple(tuple(int(v) for v in row) for row in data))


def shift_strategy(n: int) -> Strategy:
    def hint(p: Permutation) -> int:
        return argmax_shift(shift_histogram(p))

    def guess(h: int, s: int) -> int:
        return (s + h) % n

    return Strategy("shift", n, n, hint, guess)


def naive_strategy(n: int) -> Strategy:
    if n < 2:
        raise ValueError("naive strategy needs n >= 2")

    def hint(p: Permutation) -> int:
        return p.image[0]

    def guess(h: int, s: int) -> int:
        # any fixed second position works; 1 keeps runs reproducible
        return 0 if s == h else 1

    return Strategy("naive", n, n, hint, guess)


def baseline_strategy(n: int) -> Strategy:
    """No advice: a single dummy message and a probe at the target itself."""
    return Strategy("baseline", n, 1, lambda p: 0, lambda h, s: s)


def latin_strategy(square: LatinSquare) -> Strategy:
    n = square.n
    inverses = tuple(tuple(_invert(row)) for row in square.rows)

    def hint(p: Permutation) -> int:
        best_row, best = 0, -1
        for r, row in enumerate(square.rows):
            agree = sum(1 for i in range(n) if row[i] == p.image[i])
            if agree > best:
                best_row, best = r, agree
        return best_row

    def guess(h: int, s: int) -> int:
        return inverses[h][s]

    return Strategy("latin", n, n, hint, guess)


def _invert(row: Sequence[int]) -> list[int]:
    inv = [0] * len(row)
    for i, v in enumerate(row):
        inv[v] = i
    return inv


def strategy_by_name(name: str, n: int) -> Strategy:
    """Resolve a CLI-style strategy name: shift | naive | baseline | latin:<file>."""
    if name == "shift":
        return shift_strategy(n)
    if name == "naive":
        return naive_strategy(n)
    if name == "baseline":
        return baseline_strategy(n)
    if name.startswith("latin:"):
        path = name.split(":", 1)[1]
        with open(path, "r", encoding="utf-8") as fh:
            square = LatinSquare.from_json(fh.read())
        if square.n != n:
            raise UnknownStrategy(
                f"latin square of order {square.n} does not match n={n}")
        return latin_strategy(square)
    raise UnknownStrategy(f"unknown strategy {name!r}")


@dataclass(frozen=True)
class ExactEvaluation:
    """Exact per-target success probabilities of a strategy."""

    strategy: str
    n: int
    per_target: tuple[Fraction, ...]
    overall: Fraction          # uniform average over targets
    minimum: Fraction
    worst_target: int


def evaluate_success_exact(st: Strategy, guard: int = EVAL_GUARD) -> ExactEvaluation:
    """Sweep every permutation and every target; exact rational results."""
    n = st.n
    check_guard(n, guard, "evaluate_success_exact")
    wins = [0] * n
    for img in itertools.permutations(range(n)):
        p = Permutation(img)
        h = st.hint(p)
        for s in range(n):
            if img[st.guess(h, s)] == s:
                wins[s] += 1
    total = factorial(n)
    per_target = tuple(Fraction(w, total) for w in wins)
    overall = Fraction(sum(wins), total * n)
    minimum = min(per_target)
    return ExactEvaluation(st.name, n, per_target, overall, minimum,
                           per_target.index(minimum))

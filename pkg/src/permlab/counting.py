"""Exact counting: factorials, derangements, rencontres numbers, shift pmf.

Everything here is integer or rational arithmetic; floats never enter a
decision. Where the constant e appears (the nearest-integer form of the
derangement count, the crowding threshold for the most common shift), it is
bracketed by rational Taylor partial sums ``S_m <= e <= S_m + 3/(m+1)!`` at
whatever order settles the comparison.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial as _factorial

from .errors import KOutOfRange, NTooSmall, ROutOfRange


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError("factorial of a negative number")
    return _factorial(n)


@lru_cache(maxsize=None)
def derangements(n: int) -> int:
    """Number of permutations of 0..n-1 with no fixed point.

    Recurrence D_n = (n-1)(D_{n-1} + D_{n-2}), D_0 = 1, D_1 = 0.
    """
    if n < 0:
        raise ValueError("negative order")
    prev, cur = 1, 0   # D_0, D_1
    if n == 0:
        return prev
    for m in range(2, n + 1):
        prev, cur = cur, (m - 1) * (cur + prev)
    return cur


def e_bounds(order: int) -> tuple[Fraction, Fraction]:
    """Rational bracket lo <= e <= hi from the Taylor series at ``order``."""
    partial = sum(Fraction(1, _factorial(i)) for i in range(order + 1))
    return partial, partial + Fraction(3, _factorial(order + 1))


def derangements_by_rounding(n: int) -> int:
    """D_n computed as the nearest integer to n!/e, using rational brackets.

    The bracket is refined until both endpoints round the same way; n!/e is
    irrational for n >= 1, so this terminates.
    """
    if n == 0:
        return 1
    f = _factorial(n)
    order = n + 4
    while True:
        lo_e, hi_e = e_bounds(order)
        lo_val = Fraction(f, 1) / hi_e + Fraction(1, 2)
        hi_val = Fraction(f, 1) / lo_e + Fraction(1, 2)
        if lo_val.__floor__() == hi_val.__floor__():
            return lo_val.__floor__()
        order += 4


def rencontres(n: int, r: int) -> int:
    """Number of permutations of 0..n-1 with exactly r fixed points."""
    if not 0 <= r <= n:
        raise ROutOfRange(f"r={r} not in 0..{n}")
    return comb(n, r) * derangements(n - r)


def shift_count_pmf(n: int, k: int) -> Fraction:
    """Exact probability that a given shift class of a uniform permutation
    has size k; the same for every class, and equal to D_{n,k}/n!."""
    if not 0 <= k <= n:
        raise KOutOfRange(f"k={k} not in 0..{n}")
    return Fraction(rencontres(n, k), _factorial(n))


def rencontres_upper_bound_holds(n: int, r: int) -> bool:
    """Exact check of D_{n,r} <= n!/r!."""
    if not 0 <= r <= n:
        raise ROutOfRange(f"r={r} not in 0..{n}")
    return rencontres(n, r) * _factorial(r) <= _factorial(n)


def _twice_e_times_factorial_le(k: int, n: int) -> bool:
    """Decide 2e*k! <= n exactly via rational brackets on e."""
    f = _factorial(k)
    order = 8
    while True:
        lo_e, hi_e = e_bounds(order)
        if 2 * hi_e * f <= n:
            return True
        if 2 * lo_e * f > n:
            return False
        order += 4


def typical_max_shift(n: int) -> int:
    """Largest k with 2e*k! <= n.

    A uniform permutation has some shift class of at least this size with
    probability better than guesswork; it pins the scale of the most common
    displacement. Defined for n >= 6 (so the answer is at least 1).
    """
    if n < 6:
        raise NTooSmall(f"typical_max_shift needs n >= 6, got {n}")
    k = 1
    while _twice_e_times_factorial_le(k + 1, n):
        k += 1
    return k

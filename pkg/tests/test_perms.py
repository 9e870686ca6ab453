"""Core permutation type, shift statistics, and the worked-deck fixture."""

import itertools
from math import factorial

import numpy as np
import pytest
from hypothesis import given, strategies as hs

from permlab.errors import NotABijection, PositionOutOfRange, RankOutOfRange
from permlab.perms import (Permutation, apply_transposition, argmax_shift,
                           example_deck, fixed_points, identity_permutation,
                           lex_rank, lex_unrank, make_permutation,
                           random_permutation, rotate_values, shift_histogram,
                           shift_vector)
from permlab.rng import BatchRng, Rng, batch_seeds

# Published sequences for the worked 52-card deck.
DECK_V = (3, 36, 1, 17, 29, 50, 37, 34, 15, 6, 11, 2, 29, 29, 3, 34, 45, 9,
          24, 1, 7, 45, 48, 9, 22, 20, 16, 40, 32, 49, 1, 43, 13, 29, 22, 46,
          38, 46, 32, 17, 6, 49, 18, 28, 28, 25, 46, 0, 18, 7, 19, 14)
DECK_S = (1, 3, 1, 2, 0, 0, 2, 2, 0, 2, 0, 1, 0, 1, 1, 1, 1, 2, 2, 1, 1, 0,
          2, 0, 1, 1, 0, 0, 2, 4, 0, 0, 2, 0, 2, 0, 1, 1, 1, 0, 1, 0, 0, 1,
          0, 2, 3, 0, 1, 2, 1, 0)


def small_perms(max_n=6):
    return hs.integers(min_value=1, max_value=max_n).flatmap(
        lambda n: hs.permutations(list(range(n)))).map(make_permutation)


class TestConstruction:
    def test_identity(self):
        p = make_permutation([0, 1, 2])
        assert p.image == (0, 1, 2) and p.n == 3

    def test_duplicate_rejected(self):
        with pytest.raises(NotABijection):
            make_permutation([1, 1, 0])

    def test_out_of_range_rejected(self):
        with pytest.raises(NotABijection):
            make_permutation([0, 3, 1])

    def test_empty_rejected(self):
        with pytest.raises(NotABijection):
            make_permutation([])

    def test_deck_fixture_is_valid_order_52(self):
        assert example_deck().n == 52


class TestShiftStatistics:
    def test_identity_shift_vector(self):
        assert shift_vector(identity_permutation(5)) == (0,) * 5

    def test_cycle_shift_vector(self):
        # sigma(i) = i+1 mod 3 displaces every position by 2
        assert shift_vector(make_permutation([1, 2, 0])) == (2, 2, 2)

    def test_deck_shift_vector_matches_published(self):
        assert shift_vector(example_deck()) == DECK_V

    def test_deck_histogram_matches_published(self):
        assert shift_histogram(example_deck()).counts == DECK_S

    def test_deck_hint(self):
        h = shift_histogram(example_deck())
        assert argmax_shift(h) == 29
        assert h.counts[29] == 4
        assert h.counts[1] == 3 and h.counts[46] == 3

    def test_identity_histogram(self):
        assert shift_histogram(identity_permutation(7)).counts == (7,) + (0,) * 6

    def test_three_singleton_classes(self):
        assert shift_histogram(make_permutation([2, 1, 0])).counts == (1, 1, 1)

    def test_argmax_tie_breaks_low(self):
        assert argmax_shift(shift_histogram(make_permutation([2, 1, 0]))) == 0

    def test_argmax_first_maximal(self):
        p = make_permutation([1, 0, 3, 2])  # v = (3, 1, 3, 1), classes 1 and 3 tie
        h = shift_histogram(p)
        assert h.counts == (0, 2, 0, 2)
        assert argmax_shift(h) == 1

    @given(small_perms())
    def test_histogram_sums_to_n(self, p):
        h = shift_histogram(p)
        assert sum(h.counts) == p.n
        assert all(0 <= v < p.n for v in shift_vector(p))

    @given(small_perms())
    def test_fixed_points_equal_class_zero(self, p):
        assert fixed_points(p) == shift_histogram(p).counts[0]

    def test_rotation_shifts_histogram(self):
        # adding l to every image rotates the histogram down by l
        for n in range(1, 7):
            for img in itertools.permutations(range(n)):
                p = Permutation(img)
                base = shift_histogram(p).counts
                for l in range(n):
                    rotated = shift_histogram(rotate_values(p, l)).counts
                    assert rotated == tuple(base[(j + l) % n] for j in range(n))


class TestTransposition:
    def test_swap_adjacent(self):
        assert apply_transposition(identity_permutation(3), 0, 1).image == (1, 0, 2)

    def test_swap_same_position_is_identity(self):
        p = make_permutation([2, 0, 1])
        assert apply_transposition(p, 1, 1) == p

    def test_out_of_range(self):
        with pytest.raises(PositionOutOfRange):
            apply_transposition(identity_permutation(3), 0, 3)

    def test_deck_swap_puts_hint_card_first(self):
        deck = example_deck()
        pos = deck.inverse_of(29)
        assert pos == 30
        after = apply_transposition(deck, 0, pos)
        assert after.image[0] == 29
        assert after.image[30] == 49

    @given(small_perms(), hs.data())
    def test_involution(self, p, data):
        a = data.draw(hs.integers(min_value=0, max_value=p.n - 1))
        b = data.draw(hs.integers(min_value=0, max_value=p.n - 1))
        assert apply_transposition(apply_transposition(p, a, b), a, b) == p


class TestFixedPoints:
    def test_identity(self):
        assert fixed_points(identity_permutation(4)) == 4

    def test_two_two_cycles(self):
        assert fixed_points(make_permutation([1, 0, 3, 2])) == 0

    def test_single(self):
        assert fixed_points(make_permutation([0, 2, 1])) == 1


class TestLexRank:
    def test_identity_is_rank_zero(self):
        assert lex_rank(identity_permutation(3)) == 0

    def test_last_permutation(self):
        assert lex_unrank(3, 5).image == (2, 1, 0)

    def test_round_trip_exhaustive(self):
        for n in range(1, 7):
            for r, img in enumerate(itertools.permutations(range(n))):
                p = Permutation(img)
                assert lex_rank(p) == r
                assert lex_unrank(n, r) == p

    def test_rank_out_of_range(self):
        with pytest.raises(RankOutOfRange):
            lex_unrank(3, 6)
        with pytest.raises(RankOutOfRange):
            lex_unrank(3, -1)


class TestSerialization:
    def test_json_array(self):
        import json
        p = make_permutation([2, 0, 1])
        assert json.loads(p.to_json()) == [2, 0, 1]


class TestRandomPermutation:
    def test_order_one(self):
        assert random_permutation(1, Rng(123)).image == (0,)

    def test_determinism(self):
        a = random_permutation(50, Rng(2024))
        b = random_permutation(50, Rng(2024))
        assert a == b

    def test_advances_state(self):
        rng = Rng(5)
        assert random_permutation(10, rng) != random_permutation(10, rng)

    def test_uniform_over_s6(self):
        # 600k draws; every one of the 720 cells within 5 standard errors.
        n, draws = 6, 600_000
        batch = 10_000
        counts = np.zeros(720, dtype=np.int64)
        weights = np.array([factorial(n - 1 - i) for i in range(n)])
        done = 0
        while done < draws:
            rng = BatchRng(batch_seeds(31337, done, batch))
            perms = rng.permutations(n)
            # lex rank of each row, vectorized
            ranks = np.zeros(batch, dtype=np.int64)
            for i in range(n):
                smaller = (perms[:, i + 1:] < perms[:, i][:, None]).sum(axis=1)
                ranks += smaller * weights[i]
            counts += np.bincount(ranks, minlength=720)
            done += batch
        # the batch engine equals the scalar sampler draw for draw
        check = BatchRng(batch_seeds(31337, 0, 64)).permutations(n)
        for lane in range(64):
            scalar = random_permutation(n, Rng(batch_seeds(31337, lane, 1)[0]))
            assert tuple(check[lane]) == scalar.image
        p = 1 / 720
        tol = 5 * (draws * p * (1 - p)) ** 0.5
        assert counts.min() > 0
        assert np.abs(counts - draws * p).max() < tol

"""The generator contract: fixed algorithm, fixed streams, no modulo bias."""

import numpy as np
import pytest
from hypothesis import given, strategies as hs

from permlab.rng import BatchRng, Rng, batch_seeds, derive_seed, mix64

# splitmix64 reference outputs for seed 0 (published test vector)
SEED0_OUTPUTS = [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_reference_vector_seed_zero():
    rng = Rng(0)
    assert [rng.next_u64() for _ in range(3)] == SEED0_OUTPUTS


def test_mix64_is_pure():
    assert mix64(12345) == mix64(12345)
    assert mix64(0) != mix64(1)


def test_same_seed_same_stream():
    a, b = Rng(987654321), Rng(987654321)
    assert [a.next_u64() for _ in range(100)] == [b.next_u64() for _ in range(100)]


def test_derive_seed_distinct_and_matches_batch():
    singles = [derive_seed(42, i) for i in range(1000)]
    assert len(set(singles)) == 1000
    assert list(batch_seeds(42, 0, 1000)) == singles


@given(hs.integers(min_value=1, max_value=10**9), hs.integers(min_value=0))
def test_randbelow_in_range(k, seed):
    assert 0 <= Rng(seed).randbelow(k) < k


def test_randbelow_smoke_uniformity():
    rng = Rng(7)
    draws = 30_000
    counts = [0, 0, 0]
    for _ in range(draws):
        counts[rng.randbelow(3)] += 1
    expect = draws / 3
    tol = 5 * (draws * (1 / 3) * (2 / 3)) ** 0.5
    assert all(abs(c - expect) < tol for c in counts)


def test_batch_randbelow_equals_scalar():
    seeds = [derive_seed(5, i) for i in range(64)]
    batch = BatchRng(np.array(seeds, dtype=np.uint64))
    scalars = [Rng(s) for s in seeds]
    for k in (2, 3, 7, 52, 1 << 16, 10**6 + 3):
        got = batch.randbelow(k)
        want = [r.randbelow(k) for r in scalars]
        assert got.tolist() == want


def test_batch_permutations_equal_scalar_shuffle():
    seeds = [derive_seed(99, i) for i in range(40)]
    batch = BatchRng(np.array(seeds, dtype=np.uint64)).permutations(9)
    for lane, s in enumerate(seeds):
        items = list(range(9))
        Rng(s).shuffle(items)
        assert batch[lane].tolist() == items


def test_randbelow_rejects_nonpositive():
    with pytest.raises(ValueError):
        Rng(0).randbelow(0)
    with pytest.raises(ValueError):
        BatchRng(np.array([1], dtype=np.uint64)).randbelow(-2)

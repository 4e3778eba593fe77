import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from invwalk.errors import BudgetExceeded
from invwalk.heatflow import exact_E
from invwalk.perm import (
    McEstimate,
    Permutation,
    WalkSpec,
    apply_generator,
    draw_generators,
    enumerate_total_inversions,
    inversions,
    inversions_merge,
    inversions_naive,
    monte_carlo_E,
    sample_walk,
    shard_bitgen,
)

from conftest import brute_force_mean


@pytest.mark.parametrize("word,expected", [("1234", 0), ("4321", 6), ("231", 2)])
def test_inversion_examples(word, expected):
    p = Permutation.parse(word)
    assert inversions_naive(p) == expected
    assert inversions_merge(p) == expected


def test_permutation_must_be_bijection():
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))
    with pytest.raises(ValueError):
        Permutation((0, 1, 2))


def test_merge_and_naive_agree_on_random_permutations():
    rng = random.Random(2024)
    for _ in range(1000):
        m = rng.randint(1, 1000) if rng.random() < 0.05 else rng.randint(1, 60)
        w = list(range(1, m + 1))
        rng.shuffle(w)
        assert inversions_naive(w) == inversions_merge(w)


@pytest.mark.parametrize(
    "word,i,expected", [("1234", 1, "2134"), ("2134", 1, "1234"), ("1234", 3, "1243")]
)
def test_apply_generator(word, i, expected):
    assert str(apply_generator(Permutation.parse(word), i)) == expected


def test_apply_generator_out_of_range():
    p = Permutation.identity(3)
    for i in (0, 4):
        with pytest.raises(IndexError):
            apply_generator(p, i)


@given(st.permutations(list(range(1, 9))), st.integers(1, 7))
def test_generator_changes_inversions_by_one(word, i):
    p = Permutation(tuple(word))
    assert inversions(apply_generator(p, i)) - inversions(p) in (-1, 1)


def test_sample_walk_examples():
    rng = np.random.default_rng(5)
    assert sample_walk(3, 0, rng) == Permutation.identity(3)
    assert str(sample_walk(1, 5, rng)) == "21"
    for _ in range(20):
        assert inversions(sample_walk(4, 1, rng)) == 1


@settings(max_examples=50)
@given(st.integers(1, 8), st.integers(0, 30), st.integers(0, 2**64 - 1))
def test_walk_parity_and_length_bound(n, t, seed):
    p = sample_walk(n, t, np.random.default_rng(seed))
    inv = inversions(p)
    assert inv <= t
    assert inv % 2 == t % 2


def test_draw_generators_uniform_and_in_range():
    idx = draw_generators(shard_bitgen(11, 0), 60_000, 3)
    assert idx.min() == 0 and idx.max() == 2
    counts = np.bincount(idx, minlength=3)
    assert np.all(np.abs(counts - 20_000) < 5 * np.sqrt(20_000))


def test_draw_generators_rejection_keeps_stream_order():
    # n = 3 has a (tiny) rejection zone; the result must equal filtering the raw stream
    raw = np.asarray(shard_bitgen(3, 1).random_raw(1000), dtype=np.uint64)
    limit = (1 << 64) - ((1 << 64) % 3)
    expect = (raw[raw < np.uint64(limit)] % np.uint64(3)).astype(np.int64)
    got = draw_generators(shard_bitgen(3, 1), expect.size, 3)
    assert np.array_equal(got, expect)


@pytest.mark.parametrize("n,t,expected", [(4, 1, 4), (2, 2, 4), (1, 3, 1)])
def test_enumeration_examples(n, t, expected):
    assert enumerate_total_inversions(n, t) == expected


@pytest.mark.parametrize("n,t", [(1, 0), (2, 3), (3, 3), (4, 2), (3, 4), (5, 2)])
def test_enumeration_matches_word_products(n, t):
    assert Fraction(enumerate_total_inversions(n, t), n**t) == brute_force_mean(n, t)


def test_enumeration_partition_by_first_letter_is_identical():
    for n, t in [(3, 5), (4, 4), (5, 3)]:
        assert enumerate_total_inversions(n, t, partition=True) == enumerate_total_inversions(n, t)


def test_enumeration_budget(monkeypatch):
    with pytest.raises(BudgetExceeded, match="budget 10"):
        enumerate_total_inversions(2, 4, budget=10)
    monkeypatch.setenv("INVWALK_ENUM_BUDGET", "100")
    with pytest.raises(BudgetExceeded, match="budget 100"):
        enumerate_total_inversions(5, 3)


def test_enumeration_equals_dp_cross_module():
    for n in range(1, 6):
        for t in range(8):
            assert enumerate_total_inversions(n, t) == n**t * exact_E(n, t)


def test_walkspec_validation():
    with pytest.raises(ValueError):
        WalkSpec(0, 1)
    with pytest.raises(ValueError):
        WalkSpec(2, 1, samples=3, shards=4)
    with pytest.raises(ValueError):
        WalkSpec(2, -1)
    assert WalkSpec(2, 1, samples=10, shards=3).shard_sizes() == [4, 3, 3]


def test_monte_carlo_parity_case_is_exactly_zero():
    est = monte_carlo_E(WalkSpec(1, 4, seed=7, samples=1000))
    assert est.mean == 0.0 and est.stderr == 0.0


def test_monte_carlo_is_deterministic_and_worker_independent():
    spec = WalkSpec(5, 6, seed=123456789, samples=20_000, shards=4)
    a = monte_carlo_E(spec)
    b = monte_carlo_E(spec)
    c = monte_carlo_E(spec, workers=2)
    assert a == b == c
    assert isinstance(a, McEstimate)
    d = monte_carlo_E(WalkSpec(5, 6, seed=123456790, samples=20_000, shards=4))
    assert d != a


def test_monte_carlo_stderr_definition():
    est = monte_carlo_E(WalkSpec(3, 3, seed=2, samples=5000))
    assert est.stderr > 0
    # stderr ~ sd/sqrt(N); sd of inv after 3 steps is below 3
    assert est.stderr < 3 / np.sqrt(5000)


@pytest.mark.parametrize("n,t,exact", [(2, 3, Fraction(3, 2)), (4, 2, Fraction(3, 2))])
def test_monte_carlo_within_five_stderr(n, t, exact):
    est = monte_carlo_E(WalkSpec(n, t, seed=1, samples=10**6, shards=4))
    assert abs(est.mean - float(exact)) <= 5 * est.stderr

import random
from fractions import Fraction

import pytest

import oracles
from unitfrac import (
    CapacityError,
    UnitSet,
    ValidationError,
    blocked_start_trace,
    count_subsets,
    count_subsets_at_most,
    dense_window,
    enumerate_subsets,
    find_subset,
    largest_avoiding_set,
    least_blocked_start,
    max_avoiding_sum,
    one_sum_witnesses,
    prune_small_fibers,
    reciprocal_sum,
    subset_exists,
)

# exact #{S subseteq [1,N] : R(S) = 1}, frozen from the enumeration oracle
EXACT_ONE_COUNTS = (1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 6, 6, 6, 11, 11, 22)


def test_count_matches_frozen_values():
    for N, expected in enumerate(EXACT_ONE_COUNTS, start=1):
        assert count_subsets(UnitSet.interval(1, N), 1) == expected, N


def test_count_at_most_frozen_values():
    assert count_subsets_at_most(UnitSet.interval(1, 6), 1) == 26
    assert count_subsets_at_most(UnitSet.interval(1, 18), 1) == 35868
    assert count_subsets_at_most(UnitSet.interval(1, 20), 1) == 122316


def test_count_random_sets_against_fraction_dfs():
    rng = random.Random(11)
    for _ in range(25):
        ground = sorted(rng.sample(range(2, 30), rng.randint(3, 10)))
        target = Fraction(rng.randint(1, 4), rng.randint(2, 6))
        expected = oracles.naive_count(ground, target)
        assert count_subsets(ground, target) == expected, (ground, target)
        assert subset_exists(ground, target) == (expected > 0)


def test_count_at_most_random_against_dfs():
    rng = random.Random(13)
    for _ in range(10):
        ground = sorted(rng.sample(range(2, 24), rng.randint(3, 9)))
        target = Fraction(rng.randint(1, 3), rng.randint(2, 5))
        naive = sum(
            1
            for mask in range(1 << len(ground))
            if sum(Fraction(1, n) for i, n in enumerate(ground) if mask >> i & 1) <= target
        )
        assert count_subsets_at_most(ground, target) == naive, (ground, target)


def test_bigint_fallback_matches_dfs():
    # twelve primes force the scaled total far beyond int64
    ground = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
    target = Fraction(1, 2) + Fraction(1, 7) + Fraction(1, 29)
    assert count_subsets(ground, target) == oracles.naive_count(ground, target)
    witness = find_subset(ground, target)
    assert witness is not None and reciprocal_sum(witness) == target


def test_find_subset_is_lex_min():
    assert find_subset(UnitSet.interval(1, 6), 1).elements == (1,)
    assert find_subset(UnitSet.interval(2, 6), 1).elements == (2, 3, 6)
    assert find_subset(UnitSet.interval(2, 20), Fraction(1, 2)).elements == (2,)
    assert find_subset([3, 5, 7], Fraction(1, 2)) is None


def test_find_subset_matches_enumeration_minimum():
    rng = random.Random(17)
    for _ in range(20):
        ground = sorted(rng.sample(range(2, 28), rng.randint(4, 10)))
        target = Fraction(rng.randint(1, 3), rng.randint(2, 6))
        all_witnesses = oracles.naive_enumerate(ground, target)
        witness = find_subset(ground, target)
        if not all_witnesses:
            assert witness is None
        else:
            assert witness.elements == min(all_witnesses)


def test_enumerate_subsets_sorted_and_complete():
    ground = UnitSet.interval(1, 12)
    got = [w.elements for w in enumerate_subsets(ground, 1)]
    assert got == oracles.naive_enumerate(range(1, 13), Fraction(1))
    assert got == sorted(got)


def test_enumerate_refuses_beyond_max_results():
    with pytest.raises(CapacityError):
        enumerate_subsets(UnitSet.interval(1, 15), 1, max_results=2)


def test_one_sum_witnesses_cover_small_N():
    witnesses = one_sum_witnesses(12)
    assert [w.elements for w in witnesses] == oracles.naive_enumerate(range(1, 13), Fraction(1))


def test_capacity_errors():
    with pytest.raises(CapacityError):
        count_subsets(range(1, 100), 1)
    with pytest.raises(CapacityError):
        enumerate_subsets(range(1, 40), 1)
    with pytest.raises(CapacityError):
        max_avoiding_sum(60)


def test_degenerate_targets():
    assert count_subsets([2, 3], Fraction(-1, 2)) == 0
    assert count_subsets([2, 3], 0) == 1  # the empty subset
    assert find_subset([2, 3], 0).elements == ()
    assert subset_exists([], 0)
    assert not subset_exists([], Fraction(1, 2))


def test_max_avoiding_sum_known_values():
    r5 = max_avoiding_sum(5)
    assert r5.value == Fraction(77, 60)
    assert r5.witness.elements == (2, 3, 4, 5)
    assert r5.certified
    r6 = max_avoiding_sum(6)
    assert r6.value == Fraction(77, 60)
    assert max_avoiding_sum(18).value == Fraction(27031127, 12252240)


def test_max_avoiding_sum_matches_exhaustive():
    for N in range(1, 13):
        value, _ = oracles.exhaustive_max_avoiding(N)
        result = max_avoiding_sum(N)
        assert result.value == value, N
        assert result.certified
        # the witness really is avoiding and attains the value
        assert reciprocal_sum(result.witness) == value
        assert count_subsets(result.witness, 1) == 0


def test_largest_avoiding_set_known_values():
    r = largest_avoiding_set(6)
    assert r.value == 4
    assert r.witness.elements == (2, 3, 4, 5)
    assert r.certified


def test_largest_avoiding_set_matches_exhaustive():
    for N in range(1, 13):
        size, _ = oracles.exhaustive_largest_avoiding(N)
        result = largest_avoiding_set(N)
        assert result.value == size, N
        assert len(result.witness) == size
        assert count_subsets(result.witness, 1) == 0


def test_extremal_result_serialization():
    d = max_avoiding_sum(6).to_dict()
    assert d["value"] == "77/60"
    assert d["witness"] == "2,3,4,5"
    assert d["certified"] is True


def test_least_blocked_start_known_values():
    assert least_blocked_start(1) == 2
    assert least_blocked_start(6) == 3
    assert least_blocked_start(16) == 4
    assert least_blocked_start(20) == 5
    for N in (1, 4, 6, 10, 16, 20):
        assert least_blocked_start(N) == oracles.naive_blocked_start(N), N


def test_blocked_start_trace_witnesses_are_expansions():
    t, witnesses = blocked_start_trace(16)
    assert t == 4
    assert set(witnesses) == {1, 2, 3}
    for start, w in witnesses.items():
        assert w.elements[0] == start
        assert reciprocal_sum(w) == 1


def test_prune_small_fibers():
    # threshold 1/3: the fiber of 9 is {9, 18} with 9 * (1/9 + 1/18) = 3/2,
    # kept; the fiber of 16 is {16} with 16/16 = 1, kept; raising the
    # threshold above 3/2 empties everything whose fiber mass is light
    ground = UnitSet.coerce([9, 16, 18])
    assert prune_small_fibers(ground, Fraction(1, 3)).elements == (9, 16, 18)
    trace: list = []
    pruned = prune_small_fibers(ground, Fraction(8, 5), trace=trace)
    assert pruned.elements == ()
    assert trace  # every deletion recorded


def test_prune_small_fibers_loss_bound():
    ground = UnitSet.interval(2, 40)
    threshold = Fraction(1, 4)
    trace: list = []
    pruned = prune_small_fibers(ground, threshold, trace=trace)
    lost = reciprocal_sum(ground) - reciprocal_sum(pruned)
    assert lost <= sum(threshold / q for q, _ in trace)


def test_dense_window():
    lo, hi, window = dense_window(UnitSet.interval(1, 100), 0.5)
    assert 1 <= lo <= hi <= 100
    assert window.elements == tuple(range(lo, hi + 1))
    with pytest.raises(ValidationError):
        dense_window([], 0.5)
    with pytest.raises(ValidationError):
        dense_window([1, 2], 1.5)


def test_stats_counters_populated():
    stats: dict = {}
    count_subsets(UnitSet.interval(1, 16), 1, stats=stats)
    assert stats.get("nodes", 0) > 0

import math

import pytest

import oracles
from unitfrac import (
    FUNDAMENTAL_LEMMA_MATRIX,
    ValidationError,
    fundamental_lemma_reports,
    large_prime_power_count,
    mertens_residual,
    mertens_sum,
    omega_tail_count,
    omega_values,
    primes_up_to,
    prime_power_product,
    primorial,
    sieve_survivors,
)


def test_primes_up_to():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_up_to(1) == []
    assert primes_up_to(2) == [2]
    assert len(primes_up_to(10**5)) == 9592


def test_mertens_sum_matches_naive():
    for N in (2, 10, 100, 1000):
        assert mertens_sum(N) == pytest.approx(oracles.naive_mertens(N), abs=1e-12)
    assert mertens_sum(1) == 0.0


def test_mertens_residual_positive_and_small():
    # sum 1/p = log log N + M + residual with M the Meissel-Mertens constant;
    # the residual decays, staying inside (0, 1) on desk ranges
    for N in (3, 10, 100, 10**4, 10**6):
        assert 0.0 < mertens_residual(N) < 1.0, N
    with pytest.raises(ValidationError):
        mertens_residual(2)


def test_omega_values_small():
    om = omega_values(16)
    expected = {1: 0, 2: 1, 3: 1, 4: 2, 6: 2, 8: 3, 12: 3, 16: 4, 13: 1}
    for n, e in expected.items():
        assert om[n] == e, n


def test_omega_tail_count():
    # n <= 8 with Omega(n) > 2: only 8 = 2^3
    assert omega_tail_count(8, 2) == 1
    naive = sum(
        1 for n in range(1, 101) if sum(oracles.naive_factorize(n).values()) > 3
    )
    assert omega_tail_count(100, 3) == naive


def test_large_prime_power_count_naive():
    def naive(N, t):
        thr = N / t
        hits = 0
        for n in range(1, N + 1):
            if any(p**e > thr for p, e in oracles.naive_factorize(n).items()):
                hits += 1
        return hits

    for N, t in ((100, 2), (100, 4), (500, 8)):
        assert large_prime_power_count(N, t) == naive(N, t), (N, t)


def test_large_prime_power_bound_small():
    for N in (10**4, 10**5):
        for t in (2, 4, 8, 16):
            assert large_prime_power_count(N, t) <= 2 * N * math.log(t) / math.log(N)


def test_sieve_survivors_small():
    report = sieve_survivors(1, 30, [2, 3, 5])
    assert report.survivor_count == 8  # 1,7,11,13,17,19,23,29
    assert report.predicted_count == pytest.approx(30 * (1 / 2) * (2 / 3) * (4 / 5))
    assert report.ratio == pytest.approx(1.0, abs=1e-9)


def test_sieve_survivors_naive_cross_check():
    start, length, P = 50, 200, [2, 3, 7, 11]
    naive = sum(
        1 for n in range(start, start + length) if all(n % p for p in P)
    )
    assert sieve_survivors(start, length, P).survivor_count == naive


def test_fundamental_lemma_matrix_shape():
    reports = fundamental_lemma_reports()
    assert len(reports) == len(FUNDAMENTAL_LEMMA_MATRIX)
    first = reports[0]
    assert (first.interval_start, first.interval_length) == (1, 30)
    assert first.survivor_count == 8


def test_primorial_and_prime_power_product():
    assert primorial(10) == 2 * 3 * 5 * 7
    # product over every prime power q <= 10: 2*4*8 * 3*9 * 5 * 7
    assert prime_power_product(10) == 60480
    assert prime_power_product(1) == 1


def test_chebyshev_style_product_bounds():
    # primorial grows at least like 2^N; the all-prime-powers product stays
    # under c * 3^N. The worst ratio on N <= 2000 is 3^20.31 at N = 293, so
    # c = 3^21 covers the desk range with margin decaying afterwards.
    for N in (100, 1000, 10**4):
        assert primorial(N) >= 2**N, N
        assert prime_power_product(N) <= 3 ** (N + 21), N
    for N in range(2, 400, 7):
        assert prime_power_product(N) <= 3 ** (N + 21), N

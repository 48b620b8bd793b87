import math

import numpy as np
import pytest

from ppdio.primes import (
    divisor_function,
    iter_prime_arrays,
    prime_count,
    sieve_range,
    von_mangoldt_weights,
)


def brute_primes(lo, hi):
    def is_prime(n):
        if n < 2:
            return False
        for d in range(2, math.isqrt(n) + 1):
            if n % d == 0:
                return False
        return True

    return [n for n in range(lo + 1, hi + 1) if is_prime(n)]


class TestSieve:
    def test_small_range(self):
        seg = sieve_range(10, 30)
        assert seg.primes.tolist() == [11, 13, 17, 19, 23, 29]

    def test_from_one(self):
        seg = sieve_range(1, 20)
        assert seg.primes.tolist() == [2, 3, 5, 7, 11, 13, 17, 19]

    def test_half_open_endpoints(self):
        assert sieve_range(2, 3).primes.tolist() == [3]
        assert 2 not in sieve_range(2, 100).primes

    def test_matches_brute_force(self, rng):
        for _ in range(10):
            lo = rng.randint(1, 5000)
            hi = lo + rng.randint(1, 2000)
            assert sieve_range(lo, hi).primes.tolist() == brute_primes(lo, hi)

    def test_segment_concatenation_invariant(self, rng):
        full = sieve_range(1, 10**6).primes
        for bits in (10, 14, 18):
            parts = list(iter_prime_arrays(1, 10**6, segment_bits=bits))
            np.testing.assert_array_equal(np.concatenate(parts), full)

    def test_split_points_invariant(self, rng):
        # disjoint (lo, mid], (mid, hi] concatenate to (lo, hi]
        for _ in range(5):
            lo = rng.randint(1, 10**5)
            hi = lo + rng.randint(100, 10**5)
            mid = rng.randint(lo + 1, hi - 1)
            left = sieve_range(lo, mid).primes
            right = sieve_range(mid, hi).primes
            np.testing.assert_array_equal(
                np.concatenate([left, right]), sieve_range(lo, hi).primes
            )

    def test_high_segment(self):
        seg = sieve_range(10**9, 10**9 + 10**4)
        assert len(seg.primes) == len(brute_primes(10**9, 10**9 + 10**4))

    def test_rejects(self):
        with pytest.raises(ValueError):
            sieve_range(10, 10)
        with pytest.raises(ValueError):
            sieve_range(0, 10)
        with pytest.raises(ValueError):
            list(iter_prime_arrays(1, (1 << 40) + 1))


class TestPrimeCount:
    @pytest.mark.parametrize(
        "X,expected",
        [(2, 1), (10, 4), (100, 25), (10**4, 1229), (10**6, 78498)],
    )
    def test_known_values(self, X, expected):
        assert prime_count(X) == expected

    def test_independent_of_segment_size(self):
        assert prime_count(10**5, segment_bits=12) == prime_count(10**5)


class TestVonMangoldt:
    def test_small_table(self):
        table = dict(von_mangoldt_weights(1, 16))
        assert set(table) == {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}
        assert table[8] == pytest.approx(math.log(2))
        assert table[9] == pytest.approx(math.log(3))
        assert table[16] == pytest.approx(math.log(2))

    def test_chebyshev_psi(self):
        psi = math.fsum(w for _, w in von_mangoldt_weights(1, 10**4))
        assert psi == pytest.approx(10013.39, abs=0.01)

    def test_sorted_and_range(self):
        rows = von_mangoldt_weights(100, 1000)
        ns = [n for n, _ in rows]
        assert ns == sorted(ns)
        assert all(100 < n <= 1000 for n in ns)

    def test_split_invariant(self):
        whole = von_mangoldt_weights(1, 5000)
        split = von_mangoldt_weights(1, 1234) + von_mangoldt_weights(1234, 5000)
        assert whole == sorted(split)


def brute_divisor(n, m):
    """Count ordered m-tuples with product n."""
    if m == 1:
        return 1
    return sum(brute_divisor(n // d, m - 1) for d in range(1, n + 1) if n % d == 0)


class TestDivisorFunction:
    @pytest.mark.parametrize(
        "n,m,expected",
        [(1, 2, 1), (6, 2, 4), (4, 3, 6), (12, 4, 40), (7, 2, 2), (7, 3, 3)],
    )
    def test_known_values(self, n, m, expected):
        assert divisor_function(n, m) == expected

    def test_matches_brute_force(self, rng):
        for _ in range(50):
            n = rng.randint(1, 300)
            m = rng.choice([2, 3, 4])
            assert divisor_function(n, m) == brute_divisor(n, m)

    def test_multiplicative(self, rng):
        for _ in range(30):
            a = rng.randint(1, 500)
            b = rng.randint(1, 500)
            if math.gcd(a, b) != 1:
                continue
            for m in (2, 3, 4):
                assert divisor_function(a * b, m) == divisor_function(a, m) * divisor_function(b, m)

    def test_rejects(self):
        with pytest.raises(ValueError):
            divisor_function(0, 2)
        with pytest.raises(ValueError):
            divisor_function(10, 5)

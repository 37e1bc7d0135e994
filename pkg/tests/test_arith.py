import math

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from lucasgcd import arith
from lucasgcd.errors import NotCoprimeError, NotFoundError, OutOfRangeError, ResourceLimitError


def smooth_brute(x, y):
    return sum(1 for n in range(1, x + 1) if n == 1 or max(sympy.primefactors(n)) < y)


class TestSieve:

    def test_pi_1e7(self, sieve_1e7):
        assert arith.pi(sieve_1e7, 10**7) == 664579

    def test_spf_matches_sympy(self, sieve_1e5):
        for n in range(2, 20001):
            assert sieve_1e5.spf[n] == min(sympy.primefactors(n))

    def test_segmented_equals_single_segment(self):
        a = arith.PrimeSieve(200_003, segment_size=1000)
        b = arith.PrimeSieve(200_003, segment_size=1 << 20)
        assert np.array_equal(a.spf, b.spf)

    def test_small_limits(self):
        s = arith.PrimeSieve(2)
        assert s.primes.tolist() == [2]
        with pytest.raises(OutOfRangeError):
            arith.PrimeSieve(1)

    def test_memory_budget(self):
        with pytest.raises(ResourceLimitError):
            arith.sieve_build(10**6, memory_budget=10**6)

    def test_out_of_range_query(self, sieve_1e5):
        with pytest.raises(OutOfRangeError):
            sieve_1e5.is_prime(10**5 + 1)
        with pytest.raises(OutOfRangeError):
            arith.pi(sieve_1e5, 10**6)

    def test_omega(self, sieve_1e5):
        om = sieve_1e5.omega_upto(3000)
        assert om[0] == 0 and om[1] == 0
        assert all(om[n] == len(sympy.primefactors(n)) for n in range(2, 3001))

    def test_tables_read_only(self, sieve_1e5):
        with pytest.raises(ValueError):
            sieve_1e5.spf[10] = 3


class TestFactor:

    @given(st.integers(1, 10**5))
    def test_factorize_roundtrip(self, n):
        s = _SIEVE
        f = arith.factorize(s, n)
        assert f.value() == n
        assert dict(f.factors) == sympy.factorint(n)

    @given(st.integers(1, 10**15))
    def test_factor_int_without_sieve(self, n):
        assert dict(arith.factor_int(n).factors) == sympy.factorint(n)

    def test_phi_tau_divisors(self, sieve_1e5):
        for n in range(1, 1000):
            f = arith.factorize(sieve_1e5, n)
            assert arith.euler_phi(f) == sympy.totient(n)
            assert arith.tau(f) == sympy.divisor_count(n)
            assert sorted(arith.divisors(f)) == sympy.divisors(n)

    def test_legendre(self):
        for p in (3, 5, 7, 11, 101):
            for a in range(-20, 40):
                assert arith.legendre(a, p) == sympy.legendre_symbol(a % p, p) if a % p else arith.legendre(a, p) == 0

    def test_lcm_factored(self):
        assert arith.lcm_factored(((2, 3), (5, 1)), ((2, 1), (3, 2))) == ((2, 3), (3, 2), (5, 1))


_SIEVE = arith.sieve_build(10**5)


class TestCounting:

    def test_progression_partition(self, sieve_1e5):
        x = 10**5
        for b in range(1, 40):
            total = sum(arith.pi_progression(sieve_1e5, x, b, a) for a in range(b) if math.gcd(a, b) == 1)
            assert total == arith.pi(sieve_1e5, x) - len(sympy.primefactors(b))

    def test_progression_brute(self, sieve_1e5):
        ps = list(sympy.primerange(2, 5001))
        for b, a in [(4, 1), (4, 3), (10, 7), (25, 1), (7, 3)]:
            assert arith.pi_progression(sieve_1e5, 5000, b, a) == sum(1 for p in ps if p % b == a % b)

    def test_progression_not_coprime(self, sieve_1e5):
        with pytest.raises(NotCoprimeError):
            arith.pi_progression(sieve_1e5, 100, 6, 4)

    def test_smooth_examples(self, sieve_1e5):
        assert arith.smooth_count(sieve_1e5, 100, 2) == 1
        assert arith.smooth_count(sieve_1e5, 100, 3) == 7
        # the {2,3}-smooth numbers up to 30 number twelve
        assert arith.smooth_count(sieve_1e5, 30, 4) == 12

    @pytest.mark.parametrize("x", [1, 10, 97, 500])
    @pytest.mark.parametrize("y", [2, 3, 4, 6, 12, 30])
    def test_smooth_brute(self, sieve_1e5, x, y):
        assert arith.smooth_count(sieve_1e5, x, y) == smooth_brute(x, y)

    @pytest.mark.parametrize("C", [2, 3, 5])
    def test_smooth_log_bound(self, sieve_1e7, C):
        for x in (10**3, 10**4, 10**5, 10**6, 10**7):
            assert arith.smooth_count(sieve_1e7, x, C) <= (2 * math.log(x)) ** C

    def test_smooth_monotone(self, sieve_1e5):
        prev_row = None
        for y in (2, 3, 5, 8, 13):
            row = [arith.smooth_count(sieve_1e5, x, y) for x in range(1, 300, 7)]
            assert row == sorted(row)
            if prev_row:
                assert all(a <= b for a, b in zip(prev_row, row))
            prev_row = row


class TestPrimality:

    @given(st.integers(-5, 10**6))
    def test_matches_sieve(self, n):
        want = n >= 2 and bool(_SIEVE.is_prime_flags[n]) if n <= 10**5 else sympy.isprime(n)
        assert arith.is_prime_64(n) == want

    @pytest.mark.parametrize("n", [3215031751, 2152302898747, 3474749660383, 341550071728321,
                                   3825123056546413051])
    def test_strong_pseudoprimes(self, n):
        assert not arith.is_prime_64(n)

    def test_large_primes(self):
        assert arith.is_prime_64((1 << 61) - 1)
        assert arith.is_prime_64(18446744073709551557)

    @pytest.mark.parametrize("d, want", [(5, 11), (25, 101), (125, 251), (625, 11251), (4, 5), (1, 2)])
    def test_least_prime_one_mod(self, d, want):
        assert arith.least_prime_in_ap(1, d, 10**6) == want

    def test_least_prime_brute(self):
        for d in range(1, 60):
            for a in range(d):
                if math.gcd(a, d) != 1:
                    continue
                want = next(p for p in sympy.primerange(2, 10**5) if p % d == a)
                assert arith.least_prime_in_ap(a, d, 10**5) == want

    def test_least_prime_not_found(self):
        with pytest.raises(NotFoundError):
            arith.least_prime_in_ap(1, 625, 11250)

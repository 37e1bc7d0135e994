import math

import numpy as np
import pytest
import sympy
from scipy import special

from lucasgcd import arith
from lucasgcd.constants import (Kind, constant_series, estimate_from_terms, growth_table,
                                incomplete_gamma, incomplete_gamma_quad, prime_minorant, series_terms,
                                tail_profile)
from lucasgcd.errors import LambdaTooLargeError, OutOfRangeError
from lucasgcd.lucas import FIBONACCI, PELL, RankTable, new_params
from lucasgcd.rho import rho_oracle

from conftest import ell_scan


def series_brute(params, lam, N, kind):
    terms = []
    for n in range(2, N + 1):
        if math.gcd(n, params.a2) != 1:
            continue
        r = rho_oracle(lam, n)
        if r == 0:
            continue
        L = ell_scan(params, n)
        terms.append(r / (L if kind is Kind.M else int(sympy.totient(L))))
    return math.fsum(terms)


class TestSeries:

    def test_fibonacci_first_terms(self, sieve_1e5):
        # n = 2,3,4,5,7,8,9; ell = 6,12,12,5,56,24,36
        logs = {2: math.log(2), 3: math.log(3), 5: math.log(5), 7: math.log(7)}
        want = math.fsum([logs[2] / 6, logs[3] / 12, logs[2] / 12, logs[5] / 5,
                          logs[7] / 56, logs[2] / 24, logs[3] / 36])
        got = constant_series(FIBONACCI, sieve_1e5, None, 1, 10, Kind.M).partial_sum
        assert got == pytest.approx(want, rel=1e-15)

    @pytest.mark.parametrize("kind", list(Kind))
    @pytest.mark.parametrize("lam", [1, 2, 3])
    def test_against_brute(self, seq, sieve_1e5, kind, lam):
        N = 400
        got = constant_series(seq, sieve_1e5, None, lam, N, kind).partial_sum
        assert got == pytest.approx(series_brute(seq, lam, N, kind), rel=1e-12)

    def test_monotone_and_ordered(self, seq, sieve_1e5):
        cache = RankTable(seq)
        for lam in (1, 2):
            st = series_terms(seq, sieve_1e5, cache, lam, 10**5)
            prev_m = prev_p = -1.0
            for N in (10, 100, 10**3, 10**4, 10**5):
                m = estimate_from_terms(st, N, Kind.M).partial_sum
                p = estimate_from_terms(st, N, Kind.P).partial_sum
                assert prev_m <= m <= p and prev_p <= p
                assert m >= prime_minorant(seq, sieve_1e5, lam, N)
                prev_m, prev_p = m, p

    def test_tail_estimate(self, sieve_1e5):
        est = constant_series(FIBONACCI, sieve_1e5, None, 1, 10**5, Kind.M)
        assert 0 < est.last_decade_mass and est.tail_estimate > 0
        small = constant_series(FIBONACCI, sieve_1e5, None, 1, 50, Kind.M)
        assert math.isnan(small.tail_estimate)

    def test_profile(self, sieve_1e5):
        prof = tail_profile(PELL, sieve_1e5, None, 2, Kind.P, [10, 100, 1000])
        assert [N for N, _ in prof] == [10, 100, 1000]
        assert prof[-1][1] == constant_series(PELL, sieve_1e5, None, 2, 1000, Kind.P).partial_sum
        with pytest.raises(ValueError):
            tail_profile(PELL, sieve_1e5, None, 2, Kind.P, [100, 10])

    def test_out_of_range(self, sieve_1e5):
        with pytest.raises(OutOfRangeError):
            series_terms(FIBONACCI, sieve_1e5, None, 1, 10**6)

    def test_growth(self, sieve_1e5):
        rows = growth_table(FIBONACCI, sieve_1e5, None, [1, 2, 3, 4], 10**4)
        assert [r.lam for r in rows] == [1, 2, 3, 4]
        assert rows[0].lam_log_lam == 0.0
        assert all(a.log_M < b.log_M for a, b in zip(rows, rows[1:]))


class TestMinorant:

    def test_brute(self, sieve_1e5):
        jac = new_params(1, 2)
        want = 0.5 * math.fsum(math.log(p) ** 2 / p**2 for p in sympy.primerange(3, 1001))
        assert prime_minorant(jac, sieve_1e5, 2, 1000) == pytest.approx(want, rel=1e-14)


class TestIncompleteGamma:

    @pytest.mark.parametrize("n", range(1, 11))
    @pytest.mark.parametrize("x", [0.0, 0.5, 1.0, 2.0, 5.0, 10.0])
    def test_vs_quadrature(self, n, x):
        q = incomplete_gamma_quad(n, x)
        assert abs(incomplete_gamma(n, x) - q) / q <= 1e-9

    @pytest.mark.parametrize("n", [1, 3, 7, 15, 20])
    @pytest.mark.parametrize("x", [0.0, 0.1, 3.0, 25.0, 60.0])
    def test_vs_scipy_special(self, n, x):
        want = special.gammaincc(n, x) * special.gamma(n)
        assert incomplete_gamma(n, x) == pytest.approx(want, rel=1e-12)

    def test_zero_is_factorial(self):
        assert [incomplete_gamma(n, 0.0) for n in range(1, 8)] == [math.factorial(n - 1) for n in range(1, 8)]

    def test_domain(self):
        with pytest.raises(ValueError):
            incomplete_gamma(0, 1.0)
        with pytest.raises(ValueError):
            incomplete_gamma(2, -1.0)
        with pytest.raises(LambdaTooLargeError):
            incomplete_gamma(21, 1.0)

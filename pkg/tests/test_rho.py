import itertools
import math

import pytest
from hypothesis import given, strategies as st

from lucasgcd import arith
from lucasgcd.errors import LambdaTooLargeError, OracleTooLargeError
from lucasgcd.rho import RhoContext, rho, rho_all, rho_oracle, rho_value

_SIEVE = arith.sieve_build(10**5)


def rho_naive(lam, n):
    """Ordered lam-tuples of d_i | n that are prime powers (d = 1 excluded) with lcm n."""
    pps = [d for d in range(2, n + 1) if n % d == 0 and len(arith.factor_int(d).factors) == 1]
    total = []
    for tup in itertools.product(pps, repeat=lam):
        if math.lcm(*tup) == n:
            total.append(math.prod(math.log(arith.factor_int(d).factors[0][0]) for d in tup))
    return math.fsum(total)


class TestExamples:

    def test_one_is_zero(self):
        for lam in range(1, 8):
            assert rho_value(lam, 1) == 0.0

    def test_rho1_is_von_mangoldt(self):
        for n in range(2, 500):
            f = arith.factor_int(n).factors
            want = math.log(f[0][0]) if len(f) == 1 else 0.0
            assert rho_value(1, n) == pytest.approx(want, rel=1e-15, abs=0)

    def test_rho2_twelve(self):
        assert rho_value(2, 12) == pytest.approx(2 * math.log(2) * math.log(3), rel=1e-14)

    def test_rho2_four(self):
        # (2,4), (4,2), (4,4)
        assert rho_value(2, 4) == pytest.approx(3 * math.log(2) ** 2, rel=1e-14)

    def test_prime_power(self):
        # every coordinate is a power of p, at least one is the top power
        for p, h, lam in [(2, 5, 3), (3, 2, 4), (7, 1, 5)]:
            want = (h**lam - (h - 1) ** lam) * math.log(p) ** lam
            assert rho_value(lam, p**h) == pytest.approx(want, rel=1e-13)

    def test_too_many_primes(self):
        assert rho_value(2, 30) == 0.0


class TestOracle:

    def test_naive_agrees_with_library_oracle(self):
        for lam in (1, 2, 3):
            for n in range(1, 200):
                assert rho_oracle(lam, n) == pytest.approx(rho_naive(lam, n), rel=1e-12, abs=0)

    @pytest.mark.parametrize("lam", [1, 2, 3, 4])
    def test_formula_vs_oracle(self, lam):
        ctx = RhoContext(lam)
        top = 2000 if lam <= 3 else 400
        for n in range(1, top + 1):
            want = rho_oracle(lam, n, _SIEVE)
            assert rho(ctx, arith.factorize(_SIEVE, n)) == pytest.approx(want, rel=1e-9, abs=1e-300)

    def test_oracle_limits(self):
        with pytest.raises(OracleTooLargeError):
            rho_oracle(2, 10**4 + 1)
        with pytest.raises(OracleTooLargeError):
            rho_oracle(5, 12)


class TestBounds:

    @given(st.integers(2, 10**5), st.integers(1, 5))
    def test_log_power_bound(self, n, lam):
        assert rho_value(lam, n, _SIEVE) <= math.log(n) ** lam * (1 + 1e-12)

    def test_rho_all_consistent(self):
        ctx5 = RhoContext(5)
        for n in range(1, 3000):
            f = arith.factorize(_SIEVE, n)
            allv = rho_all(ctx5, f)
            for lam in range(1, 6):
                assert allv[lam - 1] == pytest.approx(rho(RhoContext(lam), f), rel=1e-13, abs=0)

    def test_lambda_limits(self):
        with pytest.raises(LambdaTooLargeError):
            RhoContext(21)
        with pytest.raises(ValueError):
            RhoContext(0)
        assert rho_value(20, 2) == pytest.approx(math.log(2) ** 20, rel=1e-13)

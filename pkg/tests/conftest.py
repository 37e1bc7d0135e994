import math

import pytest

from lucasgcd.arith import sieve_build
from lucasgcd.lucas import FIBONACCI, PELL, RankTable, new_params


def u_direct(a1, a2, n):
    """Exact u_n by iterating the recurrence."""
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a1 * b + a2 * a
    return a


def g_direct(params, n):
    return math.gcd(n, u_direct(params.a1, params.a2, n))


def z_scan(params, m, bound=None):
    """Least n >= 1 with m | u_n, by walking the sequence mod m."""
    bound = bound or 2 * m + 2
    a, b = 0, 1 % m
    for n in range(1, bound + 1):
        a, b = b, (params.a1 * b + params.a2 * a) % m
        if a == 0:
            return n
    raise AssertionError(f"no rank for {m} below {bound}")


def ell_scan(params, m):
    return math.lcm(m, z_scan(params, m))


SEQUENCES = {
    "fibonacci": FIBONACCI,
    "pell": PELL,
    "jacobsthal": new_params(1, 2),
    "mersenne": new_params(3, -2),
    "u(1,-3)": new_params(1, -3),
}


@pytest.fixture(scope="session")
def sieve_1e5():
    return sieve_build(10**5)


@pytest.fixture(scope="session")
def sieve_1e6():
    return sieve_build(10**6)


@pytest.fixture(scope="session")
def sieve_1e7():
    return sieve_build(10**7)


@pytest.fixture(params=list(SEQUENCES), scope="module")
def seq(request):
    return SEQUENCES[request.param]


@pytest.fixture
def fib_cache():
    return RankTable(FIBONACCI)


# (criterion number, passed, detail), filled by test_acceptance.py
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if passed else 'FAIL'}  {detail}")

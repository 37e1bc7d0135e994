"""Desk-scale invariant suite behind ``lucasgcd verify``.

Each check compares the library against an independent route (direct
iteration, linear scans, brute-force enumeration, quadrature) or against a
finite unconditional inequality, and reports pass/fail with a short detail.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, List

from . import arith, constants, extremes, lucas, moments, rho
from .arith import PrimeSieve
from .lucas import LucasParams, RankTable

SIEVE_LIMIT = 10**5


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


def direct_u_mod(params: LucasParams, n: int, m: int) -> int:
    a, b = 0, 1 % m
    for _ in range(n):
        a, b = b, (params.a1 * b + params.a2 * a) % m
    return a


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a))


def check_fast_doubling(params, sieve, cache) -> Check:
    rng = random.Random(20240101)
    bad = 0
    for _ in range(200):
        n, m = rng.randint(0, 3000), rng.randint(1, 10**9)
        bad += lucas.lucas_u_mod(params, n, m) != direct_u_mod(params, n, m)
    return Check("fast_doubling_vs_iteration", bad == 0, f"200 pairs, {bad} mismatches")


def _scan_ell(params: LucasParams, m: int) -> int:
    return math.lcm(m, lucas.rank_scan(params, m, 2 * m))


def check_divides_g(params, sieve, cache) -> Check:
    bad = 0
    ms = [m for m in range(1, 101)]
    ells = {m: _scan_ell(params, m) for m in ms if math.gcd(m, params.a2) == 1}
    gs = [0] + [lucas.g(params, n) for n in range(1, 1001)]
    for m in ms:
        for n in range(1, 1001):
            lhs = gs[n] % m == 0
            rhs = m in ells and n % ells[m] == 0
            bad += lhs != rhs
    return Check("divides_g_iff_ell_divides", bad == 0, f"m<=100, n<=1000, {bad} violations")


def check_ell_lcm(params, sieve, cache) -> Check:
    bad = 0
    ms = [m for m in range(1, 61) if math.gcd(m, params.a2) == 1]
    for m in ms:
        for n in ms:
            lhs = math.lcm(lucas.ell(params, m, cache, sieve), lucas.ell(params, n, cache, sieve))
            bad += lhs != _scan_ell(params, math.lcm(m, n))
    return Check("ell_of_lcm", bad == 0, f"m,n<=60, {bad} violations")


def check_ell_prime_power(params, sieve, cache) -> Check:
    bad = 0
    for p in arith.PrimeSieve(100).primes.tolist():
        if params.a2 % p == 0:
            continue
        zp = lucas.rank_scan(params, p, 2 * p)
        for j in range(1, 4):
            want = p**j if params.delta % p == 0 else p**j * zp
            bad += _scan_ell(params, p**j) != want
    return Check("ell_prime_power_formula", bad == 0, f"p<=100, j<=3, {bad} violations")


def check_rank_bounds(params, sieve, cache) -> Check:
    bad = 0
    for n in range(1, 2001):
        if math.gcd(n, params.a2) != 1:
            continue
        z = lucas.rank(params, n, cache, sieve)
        bad += z > 2 * n or math.lcm(n, z) > 2 * n * n
    return Check("rank_and_ell_upper_bounds", bad == 0, f"n<=2000, {bad} violations")


def check_gamma_tau(params, sieve, cache) -> Check:
    bad = sum(lucas.gamma_count(params, r, cache, sieve) > arith.tau(arith.factorize(sieve, r))
              for r in range(1, 2001))
    return Check("gamma_at_most_tau", bad == 0, f"r<=2000, {bad} violations")


def check_rho_oracle(params, sieve, cache) -> Check:
    worst = 0.0
    for lam in (1, 2, 3):
        ctx = rho.RhoContext(lam)
        for n in range(1, 501):
            worst = max(worst, _rel(rho.rho_oracle(lam, n, sieve), rho.rho(ctx, arith.factorize(sieve, n))))
    return Check("rho_vs_bruteforce", worst <= 1e-9, f"n<=500, lam<=3, max rel err {worst:.3g}")


def check_rho_bound(params, sieve, cache) -> Check:
    bad = 0
    ctx = rho.RhoContext(5)
    for n in range(2, 10**4 + 1):
        vals = rho.rho_all(ctx, arith.factorize(sieve, n))
        ln = math.log(n)
        bad += any(v > ln ** (k + 1) * (1 + 1e-12) for k, v in enumerate(vals))
    return Check("rho_at_most_log_power", bad == 0, f"n<=1e4, lam<=5, {bad} violations")


def check_moment_identity(params, sieve, cache) -> Check:
    worst = 0.0
    for dom in (moments.Domain.SHIFTED, moments.Domain.ALL):
        for lam in (1, 2, 3):
            for x in (10**3, 10**4):
                a = moments.moment_direct(params, sieve, cache, lam, x, dom)
                b = moments.moment_via_identity(params, sieve, cache, lam, x, dom)
                worst = max(worst, _rel(a, b))
    return Check("moment_identity", worst <= 1e-9, f"x<=1e4, lam<=3, max rel err {worst:.3g}")


def check_pointwise(params, sieve, cache) -> Check:
    worst = 0.0
    gs = [0] + [lucas.g(params, n) for n in range(1, 2001)]
    for lam in (1, 2, 3):
        for n in range(1, 2001):
            want = math.log(gs[n]) ** lam
            worst = max(worst, _rel(want, moments.pointwise_identity(params, cache, lam, n, sieve)))
    return Check("pointwise_identity", worst <= 1e-9, f"n<=2000, lam<=3, max rel err {worst:.3g}")


def check_incomplete_gamma(params, sieve, cache) -> Check:
    worst = 0.0
    for n in range(1, 11):
        for x in (0.0, 0.5, 1.0, 2.0, 5.0, 10.0):
            worst = max(worst, abs(constants.incomplete_gamma(n, x) - constants.incomplete_gamma_quad(n, x))
                        / constants.incomplete_gamma_quad(n, x))
    return Check("incomplete_gamma_vs_quadrature", worst <= 1e-9, f"n<=10, 6 x values, max rel err {worst:.3g}")


def check_constants(params, sieve, cache) -> Check:
    problems = []
    for lam in (1, 2):
        st = constants.series_terms(params, sieve, cache, lam, 10**4)
        prev = {k: -1.0 for k in constants.Kind}
        for N in (10**2, 10**3, 10**4):
            m = constants.estimate_from_terms(st, N, constants.Kind.M).partial_sum
            p = constants.estimate_from_terms(st, N, constants.Kind.P).partial_sum
            if m < prev[constants.Kind.M] or p < prev[constants.Kind.P]:
                problems.append(f"non-monotone lam={lam} N={N}")
            if m > p:
                problems.append(f"M>P lam={lam} N={N}")
            if m < constants.prime_minorant(params, sieve, lam, N):
                problems.append(f"minorant lam={lam} N={N}")
            prev = {constants.Kind.M: m, constants.Kind.P: p}
    return Check("constants_order_and_minorant", not problems, "; ".join(problems) or "lam<=2, N<=1e4")


def check_smooth_bound(params, sieve, cache) -> Check:
    bad = 0
    for C in (2, 3, 5):
        for x in (10**3, 10**4, 10**5):
            bad += arith.smooth_count(sieve, x, C) > (2 * math.log(x)) ** C
    return Check("smooth_count_bound", bad == 0, f"C in 2,3,5, x<=1e5, {bad} violations")


def check_progressions(params, sieve, cache) -> Check:
    x = 10**4
    bad = 0
    for b in range(1, 31):
        total = sum(arith.pi_progression(sieve, x, b, a) for a in range(b) if math.gcd(a, b) == 1)
        divides = sum(1 for p in sieve.primes_upto(x).tolist() if b % p == 0)
        bad += total != arith.pi(sieve, x) - divides
    return Check("progression_counts_partition", bad == 0, f"b<=30, x=1e4, {bad} violations")


def check_extremes(params, sieve, cache) -> Check:
    p = extremes.least_prime_divisor(params.delta)
    if p is None:
        return Check("extremes_witnesses", True, "delta = +-1, no prime divisor; skipped")
    x = 10**5
    res = extremes.max_g(params, sieve, cache, x, moments.Domain.ALL)
    ok = res.max_value * p >= x
    kmax = max(1, min(3, int(math.log(10**7) / math.log(p))))
    rows = extremes.least_prime_tower(params, p, kmax, 10**7)
    ok = ok and all(r.divisible for r in rows)
    return Check("extremes_witnesses", ok, f"max g(n<=1e5)={res.max_value}, tower q={p} k<={kmax}")


def check_runs(params, sieve, cache) -> Check:
    y = 4
    ws = extremes.find_runs(params, sieve, cache, 2, y, SIEVE_LIMIT)
    flags = sieve.is_prime_flags
    bad = 0
    for w in ws:
        a, b = w.primes
        bad += (a % w.modulus != 1 or b % w.modulus != 1 or flags[a + 1:b].any()
                or lucas.g(params, a - 1) <= y or lucas.g(params, b - 1) <= y)
    return Check("run_witnesses", bad == 0, f"{len(ws)} witnesses below 1e5, {bad} invalid")


CHECKS: List[Callable[..., Check]] = [
    check_fast_doubling, check_divides_g, check_ell_lcm, check_ell_prime_power,
    check_rank_bounds, check_gamma_tau, check_rho_oracle, check_rho_bound,
    check_moment_identity, check_pointwise, check_incomplete_gamma, check_constants,
    check_smooth_bound, check_progressions, check_extremes, check_runs,
]


def run_suite(params: LucasParams, sieve: PrimeSieve = None) -> List[Check]:
    sieve = sieve if sieve is not None else arith.sieve_build(SIEVE_LIMIT)
    cache = RankTable(params)
    out = []
    for fn in CHECKS:
        try:
            out.append(fn(params, sieve, cache))
        except Exception as exc:  # reported as a failed property, not a crash
            out.append(Check(fn.__name__.removeprefix("check_"), False, f"{type(exc).__name__}: {exc}"))
    return out

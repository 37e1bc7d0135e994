"""Extreme values and distribution of g over integers and shifted primes."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from . import arith
from .arith import PrimeSieve
from .errors import InvalidPrimeError, OutOfRangeError
from .lucas import LucasParams, RankTable, ell, g, g_array, gamma_count
from .moments import Domain

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExceedResult:
    x: int
    y: float
    count: int
    # count * (log y)^lam * log x / x for lam = 1, 2
    shape_ratio_1: float
    shape_ratio_2: float


@dataclass(frozen=True)
class MaxScanResult:
    x: int
    domain: Domain
    max_value: int
    argmax: int
    observed_exponent: Optional[float]
    witness: Optional[int] = None


@dataclass(frozen=True)
class TowerRow:
    k: int
    modulus: int
    prime: int
    g_value: int
    divisible: bool
    exponent: float


@dataclass(frozen=True)
class RunWitness:
    m: int
    s: int
    modulus: int
    start_index: int
    primes: Tuple[int, ...]
    gap: int


@dataclass(frozen=True)
class BVResult:
    x: int
    z: int
    value: float
    ref_A1: float
    ref_A2: float
    ref_A3: float


def _shifted_g(params: LucasParams, sieve: PrimeSieve, x: int, threads: int) -> Tuple[np.ndarray, np.ndarray]:
    if x > sieve.limit:
        raise OutOfRangeError(f"x = {x} exceeds sieve limit {sieve.limit}")
    ps = sieve.primes_upto(x)
    return ps, g_array(params, ps - 1, threads)


def count_exceed(params: LucasParams, sieve: PrimeSieve, cache: Optional[RankTable],
                 x: int, y: float, threads: int = 1) -> ExceedResult:
    """#{p <= x : g(p - 1) > y}, with the bound-shape ratios for lam = 1, 2."""
    if y <= 1:
        raise ValueError(f"y must exceed 1, got {y}")
    _, gs = _shifted_g(params, sieve, x, threads)
    count = int(np.count_nonzero(gs > y))
    if x < 2:
        return ExceedResult(x, y, count, 0.0, 0.0)
    base = count * math.log(x) / x
    ly = math.log(y)
    return ExceedResult(x, y, count, base * ly, base * ly * ly)


def least_prime_divisor(n: int) -> Optional[int]:
    n = abs(n)
    if n < 2:
        return None
    return arith.factor_int(n).factors[0][0]


def max_g(params: LucasParams, sieve: PrimeSieve, cache: Optional[RankTable], x: int,
          domain: Domain = Domain.ALL, threads: int = 1) -> MaxScanResult:
    """Exact max of g(n), n <= x, or of g(p - 1), p <= x; ties go to the smallest argument.

    Over all integers with delta != +-1 the power p^floor(log_p x) of the least
    prime p | delta satisfies ell(p^r) = p^r, so max >= x / p; that witness is
    re-evaluated through g and the bound enforced.
    """
    domain = Domain(domain)
    if domain is Domain.ALL:
        if x > sieve.limit:
            raise OutOfRangeError(f"x = {x} exceeds sieve limit {sieve.limit}")
        if x < 1:
            raise ValueError("x must be >= 1")
        gs = g_array(params, np.arange(1, x + 1, dtype=np.int64), threads)
        i = int(np.argmax(gs))
        best, arg = int(gs[i]), i + 1
    else:
        if x < 2:
            raise ValueError("shifted-prime scan needs x >= 2")
        ps, gs = _shifted_g(params, sieve, x, threads)
        i = int(np.argmax(gs))
        best, arg = int(gs[i]), int(ps[i])
    expo = math.log(best) / math.log(x) if x > 1 else None
    witness = None
    p = least_prime_divisor(params.delta)
    if domain is Domain.ALL and p is not None:
        witness = p
        while witness * p <= x:
            witness *= p
        if x < p:
            witness = None
        else:
            if g(params, witness) != witness:
                raise RuntimeError(f"g({witness}) != {witness} for {params.name}")
            if best * p < x:
                raise RuntimeError(f"max g = {best} below x/{p} at x = {x}")
    return MaxScanResult(x, domain, best, arg, expo, witness)


def least_prime_tower(params: LucasParams, q: int, k_max: int,
                      search_limit: int) -> List[TowerRow]:
    """Least primes p = 1 mod q^k, k = 1..k_max, for a prime q dividing delta.

    ell(q^k) = q^k here, so q^k | g(p - 1) must hold for every row; the check
    is done by evaluating g directly.
    """
    if not arith.is_prime_64(q) or params.delta % q != 0:
        raise InvalidPrimeError(f"{q} is not a prime divisor of delta = {params.delta}")
    if k_max * math.log(q) > math.log(search_limit):
        raise ValueError(f"{q}^{k_max} exceeds the search limit {search_limit}")
    rows = []
    for k in range(1, k_max + 1):
        mod = q**k
        p = arith.least_prime_in_ap(1, mod, search_limit)
        gv = g(params, p - 1)
        rows.append(TowerRow(k, mod, p, gv, gv % mod == 0, k * math.log(q) / math.log(p)))
    return rows


def choose_run_modulus(params: LucasParams, y: int,
                       cache: Optional[RankTable] = None) -> Optional[Tuple[int, int]]:
    """(s, ell(s)) with s > y and ell(s) as small as possible, or None.

    Candidates are s in (y, 2y] coprime to a2, plus the least power of the
    least prime dividing delta that exceeds y (when delta != +-1).
    """
    best = None
    for s in range(y + 1, 2 * y + 1):
        if math.gcd(s, params.a2) != 1:
            continue
        L = ell(params, s, cache)
        if best is None or L < best[1]:
            best = (s, L)
    p = least_prime_divisor(params.delta)
    if p is not None:
        s = p
        while s <= y:
            s *= p
        if best is None or s < best[1]:
            best = (s, s)
    return best


def find_runs(params: LucasParams, sieve: PrimeSieve, cache: Optional[RankTable],
              m: int, y: int, x_limit: int) -> List[RunWitness]:
    """Runs of m consecutive primes <= x_limit, all = 1 mod ell(s), smallest gap first.

    Every member p then has s | g(p - 1), so g(p - 1) >= s > y; that is
    re-checked by evaluating g. An empty list means no witness was found.
    """
    if m < 2:
        raise ValueError(f"run length must be >= 2, got {m}")
    if x_limit > sieve.limit:
        raise OutOfRangeError(f"x_limit = {x_limit} exceeds sieve limit {sieve.limit}")
    choice = choose_run_modulus(params, y, cache)
    if choice is None:
        log.info("no admissible s for y = %s", y)
        return []
    s, mod = choice
    ps = sieve.primes_upto(x_limit)
    if ps.size < m:
        return []
    hits = ps % mod == 1
    starts = np.flatnonzero(np.lib.stride_tricks.sliding_window_view(hits, m).all(axis=1))
    out = []
    for i in starts.tolist():
        run = tuple(int(v) for v in ps[i:i + m])
        for p in run:
            if g(params, p - 1) < s:
                raise RuntimeError(f"g({p - 1}) < {s} although {p} = 1 mod {mod}")
        out.append(RunWitness(m, s, mod, i + 1, run, run[-1] - run[0]))
    out.sort(key=lambda w: (w.gap, w.start_index))
    if not out:
        log.info("no run of %d primes = 1 mod %d below %d", m, mod, x_limit)
    return out


def bv_diagnostic(params: LucasParams, sieve: PrimeSieve, cache: Optional[RankTable],
                  x: int, z: int) -> BVResult:
    """sum_{d <= z} gamma(d) |pi(x; d, 1) - pi(x)/phi(d)| next to x/(log x)^A."""
    if z < 1 or z * z > x:
        raise ValueError(f"need 1 <= z <= sqrt(x), got z = {z}, x = {x}")
    if x > sieve.limit:
        raise OutOfRangeError(f"x = {x} exceeds sieve limit {sieve.limit}")
    cache = cache if cache is not None else RankTable(params)
    terms = []
    for d in range(1, z + 1):
        gam = gamma_count(params, d, cache, sieve)
        if gam:
            terms.append(gam * abs(arith.delta_ap(sieve, x, d, 1)))
    lx = math.log(x)
    return BVResult(x, z, math.fsum(terms), x / lx, x / lx**2, x / lx**3)

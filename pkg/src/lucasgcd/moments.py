"""Moments of log g over all integers and over shifted primes p - 1.

Each moment is computed two ways: directly from g, and through the exact
rearrangement

    sum_{p <= x} (log g(p-1))^lam = sum_{d <= x, (d, a2) = 1} rho_lam(d) * pi(x; ell(d), 1)

(with floor(x / ell(d)) replacing the progression count for the sum over
all n <= x). All float sums go through ``math.fsum`` so that results are
correctly rounded and independent of summation order or thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import arith
from .arith import PrimeSieve
from .errors import OutOfRangeError
from .lucas import LucasParams, RankTable, ell, ell_table, g_array
from .rho import RhoContext, rho


class Domain(str, Enum):
    ALL = "all"
    SHIFTED = "shifted"


@dataclass(frozen=True)
class MomentReport:
    x: int
    lam: int
    domain: Domain
    direct_sum: float
    identity_sum: Optional[float]
    normalizer: int
    ratio: float


def _arguments(sieve: PrimeSieve, x: int, domain: Domain) -> np.ndarray:
    if domain is Domain.ALL:
        return np.arange(1, x + 1, dtype=np.int64)
    return sieve.primes_upto(x) - 1


def moment_terms(params: LucasParams, sieve: PrimeSieve, x: int, domain: Domain,
                 threads: int = 1) -> np.ndarray:
    """log g(n) for each n in the domain up to x, in increasing order of n."""
    if x > sieve.limit:
        raise OutOfRangeError(f"x = {x} exceeds sieve limit {sieve.limit}")
    gs = g_array(params, _arguments(sieve, x, domain), threads)
    return np.log(gs.astype(np.float64))


def moment_direct(params: LucasParams, sieve: PrimeSieve, cache: Optional[RankTable],
                  lam: int, x: int, domain: Domain = Domain.SHIFTED,
                  threads: int = 1) -> float:
    logs = moment_terms(params, sieve, x, domain, threads)
    return math.fsum((logs[logs > 0] ** lam).tolist())


def moment_via_identity(params: LucasParams, sieve: PrimeSieve, cache: Optional[RankTable],
                        lam: int, x: int, domain: Domain = Domain.SHIFTED) -> float:
    """Right-hand side of the rearranged moment, summed exactly over d <= x."""
    if x > sieve.limit:
        raise OutOfRangeError(f"x = {x} exceeds sieve limit {sieve.limit}")
    if x < 2:
        return 0.0
    cache = cache if cache is not None else RankTable(params)
    ells = ell_table(params, sieve, x, cache)
    omega = sieve.omega_upto(x)
    # a prime p = 1 mod L needs p >= L + 1, a multiple of L needs L <= x
    top = x - 1 if domain is Domain.SHIFTED else x
    cand = np.flatnonzero((ells > 0) & (ells <= top) & (omega <= lam))
    cand = cand[cand >= 2]
    ctx = RhoContext(lam)
    counts: Dict[int, int] = {}
    terms = []
    for d, L in zip(cand.tolist(), ells[cand].tolist()):
        if domain is Domain.SHIFTED:
            c = counts.get(L)
            if c is None:
                c = counts[L] = arith.pi_progression(sieve, x, L, 1)
        else:
            c = x // L
        if c:
            terms.append(rho(ctx, arith.factorize(sieve, d)) * c)
    return math.fsum(terms)


def pointwise_identity(params: LucasParams, cache: Optional[RankTable], lam: int, n: int,
                       sieve: Optional[PrimeSieve] = None) -> float:
    """sum of rho_lam(d) over d >= 2 coprime to a2 with ell(d) | n.

    Equals (log g(n))^lam. Since d | ell(d), only divisors of n qualify.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    cache = cache if cache is not None else RankTable(params)
    ctx = RhoContext(lam)
    terms = []
    for d in arith.divisors(arith.factor_int(n, sieve))[1:]:
        if math.gcd(d, params.a2) != 1:
            continue
        f = arith.factor_int(d, sieve)
        if f.omega > lam:
            continue
        if n % ell(params, d, cache, sieve) == 0:
            terms.append(rho(ctx, f))
    return math.fsum(terms)


def moment_table(params: LucasParams, sieve: PrimeSieve, cache: Optional[RankTable],
                 lam: int, x_grid: Sequence[int], domain: Domain = Domain.SHIFTED,
                 identity: bool = True, threads: int = 1) -> List[MomentReport]:
    """One MomentReport per grid point; g is evaluated once up to max(grid)."""
    grid = [int(x) for x in x_grid]
    if not grid:
        return []
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("x grid must be strictly increasing")
    cache = cache if cache is not None else RankTable(params)
    logs = moment_terms(params, sieve, grid[-1], domain, threads)
    powered = np.where(logs > 0, logs, 0.0) ** lam
    rows = []
    for x in grid:
        norm = x if domain is Domain.ALL else arith.pi(sieve, x)
        direct = math.fsum(powered[:norm].tolist())
        ident = moment_via_identity(params, sieve, cache, lam, x, domain) if identity else None
        rows.append(MomentReport(x, lam, domain, direct, ident, norm,
                                 direct / norm if norm else 0.0))
    return rows

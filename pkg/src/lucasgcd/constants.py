"""Truncated series for the moment constants M and P.

    M(lam) = sum_{(n, a2) = 1} rho_lam(n) / ell(n)
    P(lam) = sum_{(n, a2) = 1} rho_lam(n) / phi(ell(n))

Only n with at most lam distinct prime factors contribute. Partial sums are
exact-rounded (``math.fsum``) so they are monotone in the truncation point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from . import arith
from .arith import PrimeSieve
from .errors import LambdaTooLargeError, OutOfRangeError
from .lucas import LucasParams, RankTable, ell_factored, ell_table
from .rho import MAX_LAMBDA, RhoContext, rho


class Kind(str, Enum):
    M = "M"
    P = "P"


@dataclass(frozen=True)
class ConstantEstimate:
    lam: int
    truncation_N: int
    kind: Kind
    partial_sum: float
    last_decade_mass: float
    # extrapolated from the last two decades; heuristic, not a bound
    tail_estimate: float


@dataclass(frozen=True)
class SeriesTerms:
    lam: int
    n: np.ndarray
    m_terms: np.ndarray
    p_terms: np.ndarray

    def terms(self, kind: Kind) -> np.ndarray:
        return self.m_terms if kind is Kind.M else self.p_terms


def series_terms(params: LucasParams, sieve: PrimeSieve, cache: Optional[RankTable],
                 lam: int, N: int) -> SeriesTerms:
    """Nonzero terms of both series for 2 <= n <= N, in increasing n."""
    if N > sieve.limit:
        raise OutOfRangeError(f"N = {N} exceeds sieve limit {sieve.limit}")
    cache = cache if cache is not None else RankTable(params)
    ctx = RhoContext(lam)
    if N < 2:
        empty = np.zeros(0)
        return SeriesTerms(lam, np.zeros(0, dtype=np.int64), empty, empty)
    ells = ell_table(params, sieve, N, cache)
    omega = sieve.omega_upto(N)
    cand = np.flatnonzero((ells > 0) & (omega <= lam))
    cand = cand[cand >= 2]
    m_terms = np.empty(cand.size)
    p_terms = np.empty(cand.size)
    for i, (n, L) in enumerate(zip(cand.tolist(), ells[cand].tolist())):
        f = arith.factorize(sieve, n)
        r = rho(ctx, f)
        phi = 1
        for q, h in ell_factored(params, f, cache, sieve):
            phi *= q ** (h - 1) * (q - 1)
        m_terms[i] = r / L
        p_terms[i] = r / phi
    return SeriesTerms(lam, cand.astype(np.int64), m_terms, p_terms)


def _mass(terms: np.ndarray, n: np.ndarray, lo: float, hi: float) -> float:
    sel = (n > lo) & (n <= hi)
    return math.fsum(terms[sel].tolist())


def estimate_from_terms(st: SeriesTerms, N: int, kind: Kind) -> ConstantEstimate:
    terms = st.terms(kind)
    upto = int(np.searchsorted(st.n, N, side="right"))
    partial = math.fsum(terms[:upto].tolist())
    last = _mass(terms, st.n, N / 10, N)
    prev = _mass(terms, st.n, N / 100, N / 10)
    tail = math.nan
    if N >= 100 and prev > 0 and 0 < last < prev:
        ratio = last / prev
        tail = last * ratio / (1 - ratio)
    return ConstantEstimate(st.lam, N, kind, partial, last, tail)


def constant_series(params: LucasParams, sieve: PrimeSieve, cache: Optional[RankTable],
                    lam: int, N: int, kind: Kind) -> ConstantEstimate:
    return estimate_from_terms(series_terms(params, sieve, cache, lam, N), N, Kind(kind))


def tail_profile(params: LucasParams, sieve: PrimeSieve, cache: Optional[RankTable],
                 lam: int, kind: Kind, N_grid: Sequence[int]) -> List[Tuple[int, float]]:
    grid = [int(v) for v in N_grid]
    if not grid:
        return []
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("N grid must be strictly increasing")
    st = series_terms(params, sieve, cache, lam, grid[-1])
    return [(N, estimate_from_terms(st, N, Kind(kind)).partial_sum) for N in grid]


def incomplete_gamma(n: int, x: float) -> float:
    """Upper incomplete gamma for integer n: (n-1)! e^-x sum_{k<n} x^k / k!."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > MAX_LAMBDA:
        raise LambdaTooLargeError(f"n = {n} > {MAX_LAMBDA}")
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    terms = []
    t = 1.0
    for k in range(n):
        if k:
            t *= x / k
        terms.append(t)
    return math.factorial(n - 1) * math.exp(-x) * math.fsum(terms)


def incomplete_gamma_quad(n: int, x: float) -> float:
    """Same quantity by adaptive quadrature of t^(n-1) e^-t over [x, inf)."""
    val, _ = integrate.quad(lambda t: t ** (n - 1) * math.exp(-t), x, math.inf,
                            epsabs=0.0, epsrel=1e-13, limit=200)
    return val


def prime_minorant(params: LucasParams, sieve: PrimeSieve, lam: int, N: int) -> float:
    """(1/2) sum over primes |a2| < p <= N of (log p)^lam / p^2.

    A finite lower bound for the M partial sum at N: rho_lam(p) = (log p)^lam
    and ell(p) <= 2p^2.
    """
    ps = sieve.primes_upto(N)
    ps = ps[ps > abs(params.a2)].astype(np.float64)
    return 0.5 * math.fsum((np.log(ps) ** lam / ps**2).tolist())


@dataclass(frozen=True)
class GrowthRow:
    lam: int
    N: int
    log_M: float
    log_P: float
    lam_log_lam: float


def growth_table(params: LucasParams, sieve: PrimeSieve, cache: Optional[RankTable],
                 lambdas: Sequence[int], N: int) -> List[GrowthRow]:
    """log M, log P against lam log lam, one row per lam."""
    rows = []
    for lam in lambdas:
        st = series_terms(params, sieve, cache, lam, N)
        m = estimate_from_terms(st, N, Kind.M).partial_sum
        p = estimate_from_terms(st, N, Kind.P).partial_sum
        rows.append(GrowthRow(lam, N, math.log(m) if m > 0 else -math.inf,
                              math.log(p) if p > 0 else -math.inf, lam * math.log(lam)))
    return rows

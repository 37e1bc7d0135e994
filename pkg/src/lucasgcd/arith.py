"""Sieving, factorization and the classical arithmetic functions.

Everything here works over exact integers. The sieve stores a smallest
prime factor (spf) table as a numpy array and is built segment by segment so
that peak scratch memory stays bounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import NotCoprimeError, NotFoundError, OutOfRangeError, ResourceLimitError

SEGMENT_SIZE = 1 << 20
# spf (int32) + primality flag + prime-count prefix (int64), per entry
BYTES_PER_ENTRY = 13
DEFAULT_MEMORY_BUDGET = 1 << 30

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class FactoredInt:
    n: int
    factors: Tuple[Tuple[int, int], ...]

    @property
    def omega(self) -> int:
        return len(self.factors)

    def value(self) -> int:
        out = 1
        for q, h in self.factors:
            out *= q**h
        return out


class PrimeSieve:
    """Smallest-prime-factor table for 0..limit.

    ``spf[n]`` is the least prime dividing n for n >= 2; ``spf[0]`` and
    ``spf[1]`` are 0. The table is immutable after construction and safe to
    share between threads.
    """

    def __init__(self, limit: int, segment_size: int = SEGMENT_SIZE,
                 memory_budget: int = DEFAULT_MEMORY_BUDGET):
        if limit < 2:
            raise OutOfRangeError(f"sieve limit must be >= 2, got {limit}")
        if (limit + 1) * BYTES_PER_ENTRY > memory_budget:
            raise ResourceLimitError(
                f"sieve limit {limit} needs ~{(limit + 1) * BYTES_PER_ENTRY} bytes, "
                f"budget is {memory_budget}")
        self.limit = int(limit)
        self.spf = _build_spf(self.limit, segment_size)
        self.spf.setflags(write=False)
        idx = np.arange(self.limit + 1, dtype=self.spf.dtype)
        flags = (self.spf == idx) & (idx >= 2)
        flags.setflags(write=False)
        self.is_prime_flags = flags
        self._prime_prefix = np.cumsum(flags, dtype=np.int64)
        self._primes: Optional[np.ndarray] = None

    @property
    def primes(self) -> np.ndarray:
        if self._primes is None:
            p = np.flatnonzero(self.is_prime_flags).astype(np.int64)
            p.setflags(write=False)
            self._primes = p
        return self._primes

    def primes_upto(self, x: int) -> np.ndarray:
        self._check(x)
        return self.primes[: int(self._prime_prefix[x])] if x >= 0 else self.primes[:0]

    def is_prime(self, n: int) -> bool:
        self._check(n)
        return bool(self.is_prime_flags[n])

    def _check(self, x: int) -> None:
        if x > self.limit:
            raise OutOfRangeError(f"{x} exceeds sieve limit {self.limit}")

    def omega_upto(self, x: int) -> np.ndarray:
        """Number of distinct prime factors of every n in 0..x (0 for n < 2)."""
        self._check(x)
        rest = np.arange(x + 1, dtype=np.int64)
        omega = np.zeros(x + 1, dtype=np.int8)
        spf = self.spf
        active = np.flatnonzero(rest >= 2)
        while active.size:
            p = spf[rest[active]].astype(np.int64)
            omega[active] += 1
            r = rest[active] // p
            while True:
                m = (r % p == 0) & (r > 1)
                if not m.any():
                    break
                r[m] //= p[m]
            rest[active] = r
            active = active[r > 1]
        return omega


def _build_spf(limit: int, segment_size: int) -> np.ndarray:
    root = math.isqrt(limit)
    base = np.ones(root + 1, dtype=bool)
    base[:2] = False
    for i in range(2, math.isqrt(root) + 1):
        if base[i]:
            base[i * i::i] = False
    base_primes = np.flatnonzero(base).tolist()

    spf = np.zeros(limit + 1, dtype=np.int32)
    for lo in range(0, limit + 1, segment_size):
        hi = min(lo + segment_size, limit + 1)
        seg = spf[lo:hi]
        for p in base_primes:
            if p * p >= hi:
                break
            start = max(p * p, -(-lo // p) * p)
            view = seg[start - lo::p]
            view[view == 0] = p
        unmarked = np.flatnonzero(seg == 0) + lo
        unmarked = unmarked[unmarked >= 2]
        spf[unmarked] = unmarked
    return spf


def sieve_build(limit: int, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> PrimeSieve:
    return PrimeSieve(limit, memory_budget=memory_budget)


def factorize(sieve: PrimeSieve, n: int) -> FactoredInt:
    if n < 1:
        raise OutOfRangeError(f"cannot factor {n}")
    sieve._check(n)
    spf = sieve.spf
    out = []
    m = n
    while m > 1:
        q = int(spf[m])
        h = 0
        while m % q == 0:
            m //= q
            h += 1
        out.append((q, h))
    return FactoredInt(n, tuple(out))


def factor_int(n: int, sieve: Optional[PrimeSieve] = None) -> FactoredInt:
    """Factor any positive n: spf lookup when it fits the sieve, else trial division."""
    if n < 1:
        raise OutOfRangeError(f"cannot factor {n}")
    if sieve is not None and n <= sieve.limit:
        return factorize(sieve, n)
    out = []
    m = n
    for q in _trial_divisors(sieve):
        if q * q > m:
            break
        if m % q == 0:
            h = 0
            while m % q == 0:
                m //= q
                h += 1
            out.append((q, h))
            if m > 1 and is_prime_64(m):
                break
    if m > 1:
        out.append((m, 1))
    return FactoredInt(n, tuple(out))


def _trial_divisors(sieve: Optional[PrimeSieve]) -> Iterator[int]:
    last = 1
    if sieve is not None:
        for p in sieve.primes.tolist():
            yield p
        last = int(sieve.primes[-1])
    q = max(last + 1, 2)
    if q == 2:
        yield 2
        q = 3
    if q % 2 == 0:
        q += 1
    while True:
        yield q
        q += 2


def euler_phi(f: FactoredInt) -> int:
    out = 1
    for q, h in f.factors:
        out *= q ** (h - 1) * (q - 1)
    return out


def tau(f: FactoredInt) -> int:
    out = 1
    for _, h in f.factors:
        out *= h + 1
    return out


def divisors(f: FactoredInt) -> List[int]:
    divs = [1]
    for q, h in f.factors:
        divs = [d * q**e for d in divs for e in range(h + 1)]
    return sorted(divs)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a | p) for an odd prime p, via Euler's criterion."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def pi(sieve: PrimeSieve, x: int) -> int:
    if x < 2:
        return 0
    sieve._check(x)
    return int(sieve._prime_prefix[x])


def pi_progression(sieve: PrimeSieve, x: int, b: int, a: int) -> int:
    """Number of primes p <= x with p = a (mod b)."""
    if b < 1:
        raise OutOfRangeError(f"modulus must be positive, got {b}")
    if math.gcd(a, b) != 1:
        raise NotCoprimeError(f"gcd({a}, {b}) != 1")
    if x < 2:
        return 0
    sieve._check(x)
    start = a % b
    if start == 0:
        start = b
    if start > x:
        return 0
    return int(np.count_nonzero(sieve.is_prime_flags[start:x + 1:b]))


def delta_ap(sieve: PrimeSieve, x: int, b: int, a: int) -> float:
    return pi_progression(sieve, x, b, a) - pi(sieve, x) / euler_phi(factor_int(b, sieve))


def smooth_count(sieve: PrimeSieve, x: int, y: int) -> int:
    """Count n <= x whose greatest prime factor is strictly below y (P(1) = 1)."""
    if x < 1:
        return 0
    if y < 2:
        raise OutOfRangeError(f"y must be >= 2, got {y}")
    if y - 1 > sieve.limit:
        raise OutOfRangeError(f"primes below {y} exceed sieve limit {sieve.limit}")
    ps = sieve.primes_upto(y - 1).tolist()

    def count(bound: int, k: int) -> int:
        # n <= bound built from ps[:k]
        if k == 0 or bound < 2:
            return 1
        total = 0
        p = ps[k - 1]
        while bound >= 1:
            total += count(bound, k - 1)
            bound //= p
        return total

    return count(x, len(ps))


def is_prime_64(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.18e23 (covers all 64-bit inputs)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def least_prime_in_ap(a: int, d: int, search_limit: int) -> int:
    """Least prime p <= search_limit with p = a (mod d)."""
    if d < 1:
        raise OutOfRangeError(f"modulus must be positive, got {d}")
    if math.gcd(a, d) != 1:
        raise NotCoprimeError(f"gcd({a}, {d}) != 1")
    c = a % d
    if c == 0:
        c = d
    while c <= search_limit:
        if is_prime_64(c):
            return c
        c += d
    raise NotFoundError(f"no prime = {a} mod {d} up to {search_limit}")


def lcm_factored(*fs: Sequence[Tuple[int, int]]) -> Tuple[Tuple[int, int], ...]:
    exps: dict = {}
    for f in fs:
        for q, h in f:
            if h > exps.get(q, 0):
                exps[q] = h
    return tuple(sorted(exps.items()))

"""Lucas sequence arithmetic: u_n mod m, g(n) = gcd(n, u_n), rank of appearance.

A Lucas sequence here is u_0 = 0, u_1 = 1, u_n = a1*u_{n-1} + a2*u_{n-2}
with gcd(a1, a2) = 1 and the sequence nondegenerate.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from . import arith
from ._parallel import map_chunks
from .arith import FactoredInt, PrimeSieve
from .errors import (DegenerateError, InvalidPrimeError, NotCoprimeError,
                     NotCoprimeToA2Error)

# vectorized path keeps every product of two residues below 2**62
_VEC_MODULUS_BOUND = 1 << 31

Factors = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class LucasParams:
    a1: int
    a2: int
    delta: int

    @property
    def name(self) -> str:
        return f"u({self.a1},{self.a2})"


def new_params(a1: int, a2: int) -> LucasParams:
    """Validate (a1, a2) and return the parameter record.

    Nondegeneracy reduces to u_1..u_6 all nonzero: a ratio of the two roots
    that is a root of unity has order 1, 2, 3, 4 or 6, and alpha^k = beta^k
    exactly when u_k = 0.
    """
    if math.gcd(a1, a2) != 1:
        raise NotCoprimeError(f"gcd({a1}, {a2}) = {math.gcd(a1, a2)} != 1")
    delta = a1 * a1 + 4 * a2
    if a2 == 0:
        raise DegenerateError("a2 = 0")
    if delta == 0:
        raise DegenerateError(f"discriminant of ({a1}, {a2}) is 0")
    u = [0, 1]
    for _ in range(5):
        u.append(a1 * u[-1] + a2 * u[-2])
    for k in range(1, 7):
        if u[k] == 0:
            raise DegenerateError(f"u_{k} = 0 for ({a1}, {a2})")
    return LucasParams(a1, a2, delta)


FIBONACCI = LucasParams(1, 1, 5)
PELL = LucasParams(2, 1, 8)


def lucas_pair_mod(params: LucasParams, n: int, m: int) -> Tuple[int, int]:
    """(u_n mod m, u_{n+1} mod m) by fast doubling.

    Doubling rules: u_{2k} = u_k (2 u_{k+1} - a1 u_k) and
    u_{2k+1} = u_{k+1}^2 + a2 u_k^2.
    """
    if m < 1 or n < 0:
        raise ValueError(f"need n >= 0 and m >= 1, got n={n}, m={m}")
    a1, a2 = params.a1 % m, params.a2 % m
    u, v = 0, 1 % m
    for bit in bin(n)[2:]:
        u2 = u * ((2 * v - a1 * u) % m) % m
        v2 = (v * v + a2 * u * u) % m
        if bit == "1":
            u, v = v2, (a1 * v2 + a2 * u2) % m
        else:
            u, v = u2, v2
    return u, v


def lucas_u_mod(params: LucasParams, n: int, m: int) -> int:
    return lucas_pair_mod(params, n, m)[0]


def lucas_u_mod_array(params: LucasParams, ns: np.ndarray, ms: np.ndarray) -> np.ndarray:
    """Elementwise u_n mod m for int arrays; moduli must stay below 2**31."""
    ns = np.asarray(ns, dtype=np.int64)
    ms = np.asarray(ms, dtype=np.int64)
    if ns.size == 0:
        return np.zeros(0, dtype=np.int64)
    if ms.min() < 1 or ns.min() < 0:
        raise ValueError("need n >= 0 and m >= 1")
    if ms.max() >= _VEC_MODULUS_BOUND:
        out = [lucas_u_mod(params, int(n), int(m)) for n, m in zip(ns, ms)]
        return np.array(out, dtype=object)
    a1 = params.a1 % ms
    a2 = params.a2 % ms
    u = np.zeros_like(ns)
    v = 1 % ms
    for bit in range(int(ns.max()).bit_length() - 1, -1, -1):
        t = (2 * v - a1 * u % ms) % ms
        u2 = u * t % ms
        v2 = (v * v % ms + a2 * (u * u % ms)) % ms
        odd = ((ns >> bit) & 1).astype(bool)
        u = np.where(odd, v2, u2)
        v = np.where(odd, (a1 * v2 % ms + a2 * u2 % ms) % ms, v2)
    return u


def g(params: LucasParams, n: int) -> int:
    """gcd(n, u_n)."""
    if n < 1:
        raise ValueError(f"g is defined for n >= 1, got {n}")
    return math.gcd(n, lucas_u_mod(params, n, n))


def g_array(params: LucasParams, ns: np.ndarray, threads: int = 1) -> np.ndarray:
    """Vectorized g over an int array of positive arguments."""
    ns = np.asarray(ns, dtype=np.int64)

    def chunk(lo: int, hi: int) -> np.ndarray:
        part = ns[lo:hi]
        return np.gcd(part, lucas_u_mod_array(params, part, part).astype(np.int64))

    parts = map_chunks(chunk, ns.size, threads)
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def rank_scan(params: LucasParams, m: int, bound: int) -> Optional[int]:
    """Least 1 <= n <= bound with m | u_n by direct iteration, or None."""
    if m == 1:
        return 1
    a1, a2 = params.a1 % m, params.a2 % m
    prev, cur = 0, 1
    for n in range(1, bound + 1):
        if cur == 0:
            return n
        prev, cur = cur, (a1 * cur + a2 * prev) % m
    return None


class RankTable:
    """Memo of z(p^j), keyed by (p, j), with the factorization of each value.

    Reads are lock-free; insertions take a lock. Values are deterministic, so
    a racing duplicate computation stores the same thing.
    """

    def __init__(self, params: Optional[LucasParams] = None):
        self.params = params
        self.entries: Dict[Tuple[int, int], int] = {}
        self._factors: Dict[Tuple[int, int], Factors] = {}
        self.ell_cache: Optional[np.ndarray] = None
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, p: int, j: int) -> Optional[int]:
        return self.entries.get((p, j))

    def put(self, p: int, j: int, z: int) -> None:
        with self._lock:
            self.entries.setdefault((p, j), z)

    def factors(self, p: int, j: int, sieve: Optional[PrimeSieve] = None) -> Factors:
        key = (p, j)
        f = self._factors.get(key)
        if f is None:
            f = arith.factor_int(self.entries[key], sieve).factors
            with self._lock:
                self._factors.setdefault(key, f)
        return f


def _bind(params: LucasParams, cache: Optional[RankTable]) -> RankTable:
    if cache is None:
        return RankTable(params)
    if cache.params is None:
        cache.params = params
    elif cache.params != params:
        raise ValueError(f"rank table belongs to {cache.params.name}, not {params.name}")
    return cache


def rank_prime(params: LucasParams, p: int, cache: Optional[RankTable] = None,
               sieve: Optional[PrimeSieve] = None) -> int:
    """z(p) for a prime p not dividing a2.

    For p not dividing 2*delta the rank divides p - (delta | p); strip prime
    factors from that bound while divisibility survives. p = 2 and p | delta
    are handled by a direct scan up to 2p.
    """
    if params.a2 % p == 0:
        raise NotCoprimeToA2Error(f"{p} divides a2 = {params.a2}")
    if cache is not None:
        z = cache.get(p, 1)
        if z is not None:
            return z
    if not arith.is_prime_64(p):
        raise InvalidPrimeError(f"{p} is not prime")
    if p == 2 or params.delta % p == 0:
        z = rank_scan(params, p, 2 * p)
        if z is None:
            raise RuntimeError(f"no rank of appearance for {p} within 2p")
    else:
        z = p - arith.legendre(params.delta, p)
        for q, _ in arith.factor_int(z, sieve).factors:
            while z % q == 0 and lucas_u_mod(params, z // q, p) == 0:
                z //= q
        if lucas_u_mod(params, z, p) != 0:
            raise RuntimeError(f"rank search for {p} ended at {z} with u_z != 0 mod p")
    if cache is not None:
        cache.put(p, 1, z)
    return z


def rank_prime_power(params: LucasParams, p: int, j: int,
                     cache: Optional[RankTable] = None,
                     sieve: Optional[PrimeSieve] = None) -> int:
    """z(p^j), lifting level by level from z(p).

    Each lift keeps z or multiplies it by p, and every level is re-checked
    by a divisibility test.
    """
    if j < 1:
        raise ValueError(f"exponent must be >= 1, got {j}")
    cache = _bind(params, cache)
    z = cache.get(p, j)
    if z is not None:
        return z
    level = j - 1
    while level >= 1 and cache.get(p, level) is None:
        level -= 1
    if level == 0:
        z = rank_prime(params, p, cache, sieve)
        level = 1
    else:
        z = cache.get(p, level)
    for i in range(level + 1, j + 1):
        pk = p**i
        if lucas_u_mod(params, z, pk) != 0:
            z *= p
            if lucas_u_mod(params, z, pk) != 0:
                raise RuntimeError(f"lifting z({p}^{i - 1}) -> z({p}^{i}) failed")
        cache.put(p, i, z)
    return z


def rank_factored(params: LucasParams, f: FactoredInt, cache: Optional[RankTable] = None,
                  sieve: Optional[PrimeSieve] = None) -> Factors:
    """Factorization of z(m), given the factorization of m."""
    cache = _bind(params, cache)
    parts = []
    for q, h in f.factors:
        if params.a2 % q == 0:
            raise NotCoprimeToA2Error(f"{q} divides a2 = {params.a2}")
        rank_prime_power(params, q, h, cache, sieve)
        parts.append(cache.factors(q, h, sieve))
    return arith.lcm_factored(*parts)


def rank(params: LucasParams, m: int, cache: Optional[RankTable] = None,
         sieve: Optional[PrimeSieve] = None) -> int:
    """z(m): least n >= 1 with m | u_n, as an lcm over the prime powers of m."""
    if m < 1:
        raise ValueError(f"rank needs m >= 1, got {m}")
    if math.gcd(m, params.a2) != 1:
        raise NotCoprimeToA2Error(f"gcd({m}, a2={params.a2}) != 1")
    cache = _bind(params, cache)
    z = 1
    for q, h in arith.factor_int(m, sieve).factors:
        z = math.lcm(z, rank_prime_power(params, q, h, cache, sieve))
    return z


def ell_factored(params: LucasParams, f: FactoredInt, cache: Optional[RankTable] = None,
                 sieve: Optional[PrimeSieve] = None) -> Factors:
    """Factorization of lcm(m, z(m))."""
    return arith.lcm_factored(f.factors, rank_factored(params, f, cache, sieve))


def ell(params: LucasParams, m: int, cache: Optional[RankTable] = None,
        sieve: Optional[PrimeSieve] = None) -> int:
    """lcm(m, z(m)); m | g(n) exactly when ell(m) | n."""
    return math.lcm(m, rank(params, m, cache, sieve))


def gamma_count(params: LucasParams, r: int, cache: Optional[RankTable] = None,
                sieve: Optional[PrimeSieve] = None) -> int:
    """#{n : gcd(n, a2) = 1, ell(n) = r}; such n divide r."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    cache = _bind(params, cache)
    return sum(1 for d in arith.divisors(arith.factor_int(r, sieve))
               if math.gcd(d, params.a2) == 1 and ell(params, d, cache, sieve) == r)


def ell_table(params: LucasParams, sieve: PrimeSieve, x: int,
              cache: Optional[RankTable] = None) -> np.ndarray:
    """ell(d) for every 0 <= d <= x as an int64 array (0 where gcd(d, a2) > 1).

    Prime powers are ranked one by one; composite d are assembled as the lcm
    of ell over their prime-power parts.
    """
    cache = _bind(params, cache)
    held = cache.ell_cache
    if held is not None and held.size > x:
        return held[: x + 1]
    sieve._check(x)
    table = np.zeros(x + 1, dtype=np.int64)
    if x >= 1:
        table[1] = 1
    for q in sieve.primes_upto(x).tolist():
        if params.a2 % q == 0:
            continue
        qh, h = q, 1
        while qh <= x:
            table[qh] = math.lcm(qh, rank_prime_power(params, q, h, cache, sieve))
            qh *= q
            h += 1
    d = np.arange(x + 1, dtype=np.int64)
    spf = sieve.spf[: x + 1].astype(np.int64)
    pp = (d >= 2) & (table == 0)
    # strip the smallest prime power off every composite index until done
    active = np.flatnonzero(pp)
    rest = d[active]
    acc = np.ones(active.size, dtype=np.int64)
    while active.size:
        p = spf[rest]
        part = p.copy()
        r = rest // p
        while True:
            m = r % p == 0
            if not m.any():
                break
            part[m] *= p[m]
            r[m] //= p[m]
        acc = np.lcm(acc, table[part])
        done = r == 1
        table[active[done]] = acc[done]
        keep = ~done
        active, rest, acc = active[keep], r[keep], acc[keep]
    if params.a2 not in (1, -1):
        table[np.gcd(d, abs(params.a2)) != 1] = 0
    table.setflags(write=False)
    cache.ell_cache = table
    return table

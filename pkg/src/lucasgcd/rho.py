"""The weight rho_lambda(n) attached to lcm-representations of n.

For n = q_1^h_1 ... q_s^h_s,

    rho_lambda(n) = lambda! * sum over compositions lambda_1 + ... + lambda_s = lambda
                    (every lambda_i >= 1) of
                    prod_i (h_i^lambda_i - (h_i - 1)^lambda_i) (log q_i)^lambda_i / lambda_i!

with rho_lambda(1) = 0. Equivalently it is the sum, over ordered
lambda-tuples of prime powers whose lcm is n, of log q_1 * ... * log q_lambda;
``rho_oracle`` evaluates that second form by brute force.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import arith
from .arith import FactoredInt, PrimeSieve
from .errors import LambdaTooLargeError, OracleTooLargeError

MAX_LAMBDA = 20
ORACLE_MAX_N = 10**4
ORACLE_MAX_LAMBDA = 4


@dataclass
class RhoContext:
    lam: int
    factorials: Tuple[int, ...] = field(init=False)
    _logs: Dict[int, float] = field(init=False, default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.lam < 1:
            raise ValueError(f"lambda must be >= 1, got {self.lam}")
        if self.lam > MAX_LAMBDA:
            raise LambdaTooLargeError(f"lambda = {self.lam} > {MAX_LAMBDA}")
        self.factorials = tuple(math.factorial(k) for k in range(self.lam + 1))

    def log(self, q: int) -> float:
        v = self._logs.get(q)
        if v is None:
            v = self._logs[q] = math.log(q)
        return v


def rho_all(ctx: RhoContext, f: FactoredInt) -> List[float]:
    """[rho_1(n), ..., rho_lam(n)] from one convolution pass."""
    lam = ctx.lam
    s = len(f.factors)
    out = [0.0] * lam
    if s == 0 or s > lam:
        return out
    fact = ctx.factorials
    # poly[k]: sum over compositions of k among the primes seen so far
    poly = [1.0] + [0.0] * lam
    for i, (q, h) in enumerate(f.factors):
        lq = ctx.log(q)
        terms = [0.0] + [(h**k - (h - 1) ** k) * lq**k / fact[k] for k in range(1, lam + 1)]
        new = [0.0] * (lam + 1)
        # the remaining s - i - 1 primes each need at least one unit
        for k in range(i + 1, lam + 1):
            acc = 0.0
            for a in range(1, k - i + 1):
                acc += poly[k - a] * terms[a]
            new[k] = acc
        poly = new
    for k in range(s, lam + 1):
        out[k - 1] = fact[k] * poly[k]
    return out


def rho(ctx: RhoContext, f: FactoredInt) -> float:
    if len(f.factors) > ctx.lam:
        return 0.0
    return rho_all(ctx, f)[-1]


def rho_value(lam: int, n: int, sieve: Optional[PrimeSieve] = None) -> float:
    return rho(RhoContext(lam), arith.factor_int(n, sieve))


def rho_oracle(lam: int, n: int, sieve: Optional[PrimeSieve] = None,
               prime_powers: Optional[Sequence[Tuple[int, int]]] = None) -> float:
    """Sum over ordered lam-tuples of prime powers with lcm n of prod log q.

    Exponential in lam; limited to n <= 10**4 and lam <= 4. Restricting the
    admissible primes (coprimality to a2) is the caller's job.
    """
    if n > ORACLE_MAX_N or lam > ORACLE_MAX_LAMBDA:
        raise OracleTooLargeError(f"oracle limited to n <= {ORACLE_MAX_N}, lambda <= {ORACLE_MAX_LAMBDA}")
    if prime_powers is None:
        prime_powers = [(q, q**j) for q, h in arith.factor_int(n, sieve).factors
                        for j in range(1, h + 1)]
    terms = []
    for tup in itertools.product(prime_powers, repeat=lam):
        if math.lcm(*(qj for _, qj in tup)) == n:
            terms.append(math.prod(math.log(q) for q, _ in tup))
    return math.fsum(terms)

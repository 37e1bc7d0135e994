"""Arithmetic of g(n) = gcd(n, u_n) for nondegenerate Lucas sequences u."""

from .arith import FactoredInt, PrimeSieve, sieve_build
from .lucas import FIBONACCI, PELL, LucasParams, RankTable, ell, g, new_params, rank

__all__ = [
    "FactoredInt", "PrimeSieve", "sieve_build",
    "FIBONACCI", "PELL", "LucasParams", "RankTable", "ell", "g", "new_params", "rank",
]

"""Command-line front end.

    lucasgcd verify | moments | constants | dist | max | runs | bv

Tables go to stdout (or --out) as CSV with a header row or as a JSON array
of objects with the same keys. Exit codes: 0 success, 1 computation error,
2 invalid usage or parameters.
"""

from __future__ import annotations

import argparse
import contextlib
import logging
import os
import sys
from decimal import Decimal, InvalidOperation
from typing import List, Optional, Sequence

from . import arith, constants, extremes, lucas, moments, report, verify
from .errors import LucasGcdError

log = logging.getLogger("lucasgcd")


class UsageError(Exception):
    pass


def parse_int(text: str) -> int:
    """Integer from '1000', '1e3' or '2.5e4'; rejects non-integral values."""
    try:
        v = Decimal(text.strip())
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if v != v.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(v)


def parse_grid(text: str) -> List[int]:
    return [parse_int(t) for t in text.split(",") if t.strip()]


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--a1", type=int, default=1)
    p.add_argument("--a2", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None, help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lucasgcd",
                                 description="gcd(n, u_n) for Lucas sequences: moments, constants, extremes")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the invariant suite")
    _common(p)

    p = sub.add_parser("moments", help="moment sums of log g and their ratios")
    _common(p)
    p.add_argument("--lambda", dest="lam", type=parse_int, default=1)
    p.add_argument("--grid", type=parse_grid)
    p.add_argument("--x", type=parse_int)
    p.add_argument("--domain", choices=("all", "shifted"), default="shifted")
    p.add_argument("--no-identity", action="store_true",
                   help="skip the identity-side sum (direct sums only)")

    p = sub.add_parser("constants", help="truncated series for M and P")
    _common(p)
    p.add_argument("--lambda", dest="lam", type=parse_grid, default=[1])
    p.add_argument("--N", type=parse_int, default=10**4)
    p.add_argument("--kind", choices=("M", "P", "both"), default="both")
    p.add_argument("--grid", type=parse_grid, help="N grid: emit the partial-sum profile")
    p.add_argument("--growth", action="store_true", help="emit log M, log P against lam log lam")

    p = sub.add_parser("dist", help="counts of p <= x with g(p-1) > y")
    _common(p)
    p.add_argument("--grid", type=parse_grid)
    p.add_argument("--x", type=parse_int)
    p.add_argument("--y", type=parse_grid, required=True)

    p = sub.add_parser("max", help="max of g, or the least-prime tower with --q")
    _common(p)
    p.add_argument("--grid", type=parse_grid)
    p.add_argument("--x", type=parse_int)
    p.add_argument("--domain", choices=("all", "shifted"), default="all")
    p.add_argument("--q", type=parse_int)
    p.add_argument("--kmax", type=parse_int)
    p.add_argument("--limit", type=parse_int, default=10**9)

    p = sub.add_parser("runs", help="runs of consecutive primes with g(p-1) > y")
    _common(p)
    p.add_argument("--m", type=parse_int, default=2)
    p.add_argument("--y", type=parse_int, default=4)
    p.add_argument("--limit", type=parse_int, default=10**6)

    p = sub.add_parser("bv", help="gamma-weighted progression deviation sum")
    _common(p)
    p.add_argument("--x", type=parse_int, required=True)
    p.add_argument("--z", type=parse_int, required=True)
    return ap


def _grid(args) -> List[int]:
    grid = args.grid if args.grid is not None else ([args.x] if args.x is not None else None)
    if not grid:
        raise UsageError("give --x or --grid")
    if any(v < 1 for v in grid):
        raise UsageError("grid values must be positive")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise UsageError("grid must be strictly increasing")
    return grid


def _sieve(limit: int) -> arith.PrimeSieve:
    return arith.sieve_build(max(limit, 2))


def cmd_verify(args, params, out) -> int:
    checks = verify.run_suite(params)
    rows = [{"property": c.name, "status": "PASS" if c.passed else "FAIL", "detail": c.detail}
            for c in checks]
    report.write_rows(rows, ["property", "status", "detail"], args.format, out)
    return 0 if all(c.passed for c in checks) else 1


def cmd_moments(args, params, out) -> int:
    grid = _grid(args)
    if args.lam < 1:
        raise UsageError("--lambda must be >= 1")
    sieve = _sieve(grid[-1])
    rows = moments.moment_table(params, sieve, None, args.lam, grid, moments.Domain(args.domain),
                                identity=not args.no_identity, threads=args.threads)
    report.write_rows(rows, report.field_names(moments.MomentReport), args.format, out)
    return 0


def cmd_constants(args, params, out) -> int:
    kinds = [constants.Kind.M, constants.Kind.P] if args.kind == "both" else [constants.Kind(args.kind)]
    lams = args.lam
    if not lams or any(lam < 1 or lam > 20 for lam in lams):
        raise UsageError("--lambda values must lie in 1..20")
    grid = args.grid
    if grid is not None and (not grid or any(b <= a for a, b in zip(grid, grid[1:]))):
        raise UsageError("--grid must be strictly increasing")
    top = grid[-1] if grid else args.N
    if top < 1:
        raise UsageError("--N must be positive")
    sieve = _sieve(top)
    cache = lucas.RankTable(params)
    if args.growth:
        rows = constants.growth_table(params, sieve, cache, lams, args.N)
        report.write_rows(rows, report.field_names(constants.GrowthRow), args.format, out)
        return 0
    rows = []
    for lam in lams:
        st = constants.series_terms(params, sieve, cache, lam, top)
        for N in (grid or [args.N]):
            for kind in kinds:
                rows.append(constants.estimate_from_terms(st, N, kind))
    report.write_rows(rows, report.field_names(constants.ConstantEstimate), args.format, out)
    return 0


def cmd_dist(args, params, out) -> int:
    grid = _grid(args)
    if any(y <= 1 for y in args.y):
        raise UsageError("--y values must exceed 1")
    sieve = _sieve(grid[-1])
    rows = [extremes.count_exceed(params, sieve, None, x, y, args.threads)
            for x in grid for y in args.y]
    report.write_rows(rows, report.field_names(extremes.ExceedResult), args.format, out)
    return 0


def cmd_max(args, params, out) -> int:
    if args.q is not None:
        if args.kmax is None or args.kmax < 1:
            raise UsageError("--q needs --kmax >= 1")
        rows = extremes.least_prime_tower(params, args.q, args.kmax, args.limit)
        report.write_rows(rows, report.field_names(extremes.TowerRow), args.format, out)
        return 0
    grid = _grid(args)
    if args.domain == "shifted" and grid[0] < 2:
        raise UsageError("shifted-prime scan needs x >= 2")
    sieve = _sieve(grid[-1])
    rows = [extremes.max_g(params, sieve, None, x, moments.Domain(args.domain), args.threads)
            for x in grid]
    report.write_rows(rows, report.field_names(extremes.MaxScanResult), args.format, out)
    return 0


def cmd_runs(args, params, out) -> int:
    if args.m < 2 or args.y < 1 or args.limit < 2:
        raise UsageError("need --m >= 2, --y >= 1, --limit >= 2")
    sieve = _sieve(args.limit)
    rows = extremes.find_runs(params, sieve, None, args.m, args.y, args.limit)
    if not rows:
        log.warning("no run found (m=%d, y=%d, limit=%d)", args.m, args.y, args.limit)
    report.write_rows(rows, report.field_names(extremes.RunWitness), args.format, out)
    return 0


def cmd_bv(args, params, out) -> int:
    if args.z < 1 or args.z * args.z > args.x:
        raise UsageError("need 1 <= z <= sqrt(x)")
    sieve = _sieve(args.x)
    rows = [extremes.bv_diagnostic(params, sieve, None, args.x, args.z)]
    report.write_rows(rows, report.field_names(extremes.BVResult), args.format, out)
    return 0


COMMANDS = {
    "verify": cmd_verify, "moments": cmd_moments, "constants": cmd_constants,
    "dist": cmd_dist, "max": cmd_max, "runs": cmd_runs, "bv": cmd_bv,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        params = lucas.new_params(args.a1, args.a2)
    except (UsageError, LucasGcdError) as exc:
        print(f"lucasgcd: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    with contextlib.ExitStack() as stack:
        out = stack.enter_context(open(args.out, "w", newline="")) if args.out else sys.stdout
        try:
            return COMMANDS[args.command](args, params, out)
        except UsageError as exc:
            print(f"lucasgcd: error: {exc}", file=sys.stderr)
            return 2
        except BrokenPipeError:
            # downstream reader closed early (e.g. piped into head)
            sys.stdout = open(os.devnull, "w")
            return 0
        except (LucasGcdError, RuntimeError, ArithmeticError) as exc:
            print(f"lucasgcd: error: {type(exc).__name__}: {exc}", file=sys.stderr)
            return 1


if __name__ == "__main__":
    sys.exit(main())

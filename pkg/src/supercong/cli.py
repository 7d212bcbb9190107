"""Command-line front end for prime-range scans.

Exit status: 0 when every executed check passes, 1 on any failure, 2 on a
configuration error.
"""
from __future__ import annotations

import argparse
import logging
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .arith import is_prime, primes_between
from .catalog import CANONICAL_PARAMS, DEFAULT_EXACT_BERNOULLI_MAX, scan, select_checks
from .report import RENDERERS

log = logging.getLogger("supercong")

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:/(\d+))?\s*$")
_RANGE = re.compile(r"^\s*(\d+)\.\.(\d+)\s*$")


class ConfigError(ValueError):
    def __init__(self, flag: str, message: str):
        self.flag = flag
        super().__init__(f"{flag}: {message}")


@dataclass
class RunConfig:
    primes: list[int]
    a_values: list[Fraction] = field(default_factory=lambda: list(CANONICAL_PARAMS))
    random_count: int = 0
    seed: int = 0
    check_filter: Optional[list[str]] = None
    expensive: bool = False
    jobs: int = 1
    format: str = "table"
    output_path: Optional[Path] = None
    timings: bool = False
    exact_bernoulli_max: int = DEFAULT_EXACT_BERNOULLI_MAX


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL.match(text)
    if not m or m.group(2) == "0":
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(int(m.group(1)), int(m.group(2) or 1))


def _parse_primes(args) -> list[int]:
    if args.prime_list is not None:
        primes = []
        for item in args.prime_list.split(","):
            try:
                p = int(item)
            except ValueError:
                raise ConfigError("--prime-list", f"not an integer: {item!r}") from None
            if p < 5 or not is_prime(p):
                raise ConfigError("--prime-list", f"{p} is not a prime >= 5")
            primes.append(p)
        return sorted(set(primes))
    m = _RANGE.match(args.primes)
    if not m:
        raise ConfigError("--primes", f"expected lo..hi, got {args.primes!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo < 5:
        raise ConfigError("--primes", f"lower bound {lo} is below 5")
    if hi < lo:
        raise ConfigError("--primes", f"empty range {lo}..{hi}")
    primes = primes_between(lo, hi)
    if not primes:
        raise ConfigError("--primes", f"no primes in {lo}..{hi}")
    return primes


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="supercong",
        description="Verify cataloged congruences over a range of primes.",
    )
    ap.add_argument("--primes", default="5..199", help="inclusive prime range lo..hi (default 5..199)")
    ap.add_argument("--prime-list", help="explicit comma-separated primes; overrides --primes")
    ap.add_argument("--a", dest="a_values", help="parameters n/d[,n/d...] (default: canonical set)")
    ap.add_argument("--random", type=int, default=0, help="random parameters per prime")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--checks", default="all", help="check ids id[,id...] or 'all'")
    ap.add_argument("--expensive", action="store_true", help="include checks gated as expensive")
    ap.add_argument("--exact-bernoulli-max", type=int, default=DEFAULT_EXACT_BERNOULLI_MAX,
                    help="largest p evaluated with exact B_{p^2(p-1)} (default 7)")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--format", choices=sorted(RENDERERS), default="table")
    ap.add_argument("--out", type=Path, help="write the report here instead of stdout")
    ap.add_argument("--timings", action="store_true", help="record per-check microseconds (breaks byte-identical output)")
    ap.add_argument("--list", action="store_true", help="list check ids and exit")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def config_from_args(args) -> RunConfig:
    primes = _parse_primes(args)
    a_values = list(CANONICAL_PARAMS)
    if args.a_values is not None:
        try:
            a_values = [parse_rational(x) for x in args.a_values.split(",")]
        except ValueError as exc:
            raise ConfigError("--a", str(exc)) from None
    if args.random < 0:
        raise ConfigError("--random", "must be >= 0")
    if args.jobs < 1:
        raise ConfigError("--jobs", "must be >= 1")
    if not -(2**63) <= args.seed < 2**64:
        raise ConfigError("--seed", "must fit in 64 bits")
    check_filter = None
    if args.checks.strip() != "all":
        check_filter = [c.strip() for c in args.checks.split(",") if c.strip()]
        try:
            select_checks(check_filter, True)
        except KeyError as exc:
            raise ConfigError("--checks", exc.args[0]) from None
    return RunConfig(
        primes=primes, a_values=a_values, random_count=args.random, seed=args.seed,
        check_filter=check_filter, expensive=args.expensive, jobs=args.jobs, format=args.format,
        output_path=args.out, timings=args.timings, exact_bernoulli_max=args.exact_bernoulli_max,
    )


def run(config: RunConfig) -> int:
    log.info("scanning %d primes (%d..%d)", len(config.primes), config.primes[0], config.primes[-1])
    report = scan(
        config.primes, config.a_values, config.check_filter, expensive=config.expensive,
        random_count=config.random_count, seed=config.seed, jobs=config.jobs,
        exact_bernoulli_max=config.exact_bernoulli_max, timings=config.timings,
    )
    text = RENDERERS[config.format](report)
    if config.output_path is not None:
        config.output_path.write_text(text, encoding="utf-8")
        if config.format != "table":
            sys.stdout.write(RENDERERS["table"](report))
    else:
        sys.stdout.write(text)
    return 0 if report.ok else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.list:
        from .catalog import catalog

        for c in catalog():
            kind = "a" if c.parametric else "fixed"
            print(f"{c.id:18} mod p^{c.k}  {kind:5}  {c.cost:9}  {c.statement}")
        return 0
    try:
        config = config_from_args(args)
    except ConfigError as exc:
        print(f"supercong: error: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())

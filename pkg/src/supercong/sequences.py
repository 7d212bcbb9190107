"""Bernoulli, Euler and U numbers, Pell and S sequences, Legendre symbol.

Tables are generated from the defining recurrences with exact arithmetic and
cached per kind; a request for a longer table extends the cached prefix.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb

from .arith import Residue, check_prime, is_prime

__all__ = [
    "Kind",
    "LucasKind",
    "SequenceTable",
    "LucasValue",
    "build_table",
    "bernoulli",
    "euler",
    "u_number",
    "lucas_value",
    "lucas_mod",
    "legendre",
]


class Kind(str, Enum):
    BERNOULLI = "bernoulli"
    EULER = "euler"
    U = "u"


class LucasKind(str, Enum):
    PELL = "pell"
    S = "s"


@dataclass(frozen=True)
class SequenceTable:
    kind: Kind
    values: tuple

    @property
    def N(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)


def _next_bernoulli(vals: list) -> Fraction:
    n = len(vals)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    # sum_{k=0}^{n} C(n+1, k) B_k = 0, solved for B_n
    s = sum(comb(n + 1, k) * b for k, b in enumerate(vals) if b)
    return -s / (n + 1)


def _next_euler_like(vals: list, scale: int) -> int:
    n = len(vals)
    if n % 2:
        return 0
    return -scale * sum(comb(n, 2 * j) * vals[n - 2 * j] for j in range(1, n // 2 + 1))


_SEEDS = {Kind.BERNOULLI: Fraction(1), Kind.EULER: 1, Kind.U: 1}
_STEPS = {
    Kind.BERNOULLI: _next_bernoulli,
    Kind.EULER: lambda v: _next_euler_like(v, 1),
    Kind.U: lambda v: _next_euler_like(v, 2),
}
_cache: dict[Kind, list] = {}
_lock = threading.Lock()


def build_table(kind, N: int) -> SequenceTable:
    """Exact values of the sequence at indices 0..N.

    >>> build_table(Kind.EULER, 6).values
    (1, 0, -1, 0, 5, 0, -61)
    """
    kind = Kind(kind)
    if N < 0:
        raise ValueError("N must be >= 0")
    with _lock:
        vals = _cache.setdefault(kind, [_SEEDS[kind]])
        step = _STEPS[kind]
        while len(vals) <= N:
            vals.append(step(vals))
        return SequenceTable(kind, tuple(vals[: N + 1]))


def _entry(kind: Kind, n: int):
    vals = _cache.get(kind)
    if vals is None or len(vals) <= n:
        return build_table(kind, n)[n]
    return vals[n]


def bernoulli(n: int) -> Fraction:
    return _entry(Kind.BERNOULLI, n)


def euler(n: int) -> int:
    return _entry(Kind.EULER, n)


def u_number(n: int) -> int:
    return _entry(Kind.U, n)


@dataclass(frozen=True)
class LucasValue:
    kind: LucasKind
    index: int
    value: int


# (P_0, P_1, coefficient of x_n, coefficient of x_{n-1})
_LUCAS = {LucasKind.PELL: (0, 1, 2, 1), LucasKind.S: (0, 1, 4, -1)}


def _iterate(kind, n, mod=None):
    x0, x1, c1, c0 = _LUCAS[LucasKind(kind)]
    if n < 0:
        raise ValueError("n must be >= 0")
    for _ in range(n):
        x0, x1 = x1, c1 * x1 + c0 * x0
        if mod is not None:
            x1 %= mod
    return x0


def lucas_value(kind, n: int) -> LucasValue:
    return LucasValue(LucasKind(kind), n, _iterate(kind, n))


def lucas_mod(kind, n: int, p: int, k: int) -> Residue:
    check_prime(p)
    return Residue.of(_iterate(kind, n, p**k), p, k)


def legendre(c: int, p: int) -> int:
    """Legendre symbol (c/p) by Euler's criterion."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    r = pow(c % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r

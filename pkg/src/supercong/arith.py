"""Exact rationals, residues modulo p^k, and the p-adic split a = <a>_p + p*t.

Rationals are plain :class:`fractions.Fraction` values, which are already kept
in lowest terms with a positive denominator.  Everything a congruence talks
about is reduced to a :class:`Residue` exactly once, through :func:`reduce`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import (
    BaseDivisibleByP,
    DenominatorDivisibleByP,
    ModulusMismatch,
    NonUnitDivisor,
    NotPrime,
    TermDivisibleByP,
)

MAX_EXPONENT = 3

__all__ = [
    "Residue",
    "PadicParam",
    "is_prime",
    "primes_between",
    "check_prime",
    "reduce",
    "decompose",
    "fermat_quotient",
    "harmonic",
    "p_valuation",
]


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Deterministic trial division; callers only ever pass small primes."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    d = 5
    while d * d <= n:
        if n % d == 0 or n % (d + 2) == 0:
            return False
        d += 6
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    return [n for n in range(max(lo, 2), hi + 1) if is_prime(n)]


def check_prime(p: int) -> None:
    if not (isinstance(p, int) and p > 3 and is_prime(p)):
        raise NotPrime(f"expected a prime p > 3, got {p!r}")


def _check_exponent(k: int) -> None:
    if k not in range(1, MAX_EXPONENT + 1):
        raise ValueError(f"exponent k must be in 1..{MAX_EXPONENT}, got {k!r}")


def p_valuation(n: int, p: int) -> int:
    """Exponent of p in the nonzero integer n."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True, slots=True)
class Residue:
    """An element of Z/p^kZ that remembers its modulus.

    Arithmetic with another Residue requires the same (p, k).  Plain ints and
    p-integral Fractions are coerced through :func:`reduce`.
    """

    value: int
    p: int
    k: int

    def __post_init__(self):
        _check_exponent(self.k)
        if not 0 <= self.value < self.p**self.k:
            raise ValueError(f"value {self.value} out of range mod {self.p}^{self.k}")

    @classmethod
    def of(cls, value: int, p: int, k: int) -> "Residue":
        return cls(value % p**k, p, k)

    @property
    def modulus(self) -> int:
        return self.p**self.k

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def _coerce(self, other) -> "Residue":
        if isinstance(other, Residue):
            if (other.p, other.k) != (self.p, self.k):
                raise ModulusMismatch(
                    f"cannot combine residues mod {self.p}^{self.k} and {other.p}^{other.k}"
                )
            return other
        if isinstance(other, (int, Rational)):
            return reduce(other, self.p, self.k)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue((self.value + o.value) % self.modulus, self.p, self.k)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue((self.value - o.value) % self.modulus, self.p, self.k)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return Residue(-self.value % self.modulus, self.p, self.k)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value * o.value % self.modulus, self.p, self.k)

    __rmul__ = __mul__

    def inverse(self) -> "Residue":
        if not self.is_unit():
            raise NonUnitDivisor(f"{self.value} is not a unit mod {self.p}^{self.k}")
        return Residue(pow(self.value, -1, self.modulus), self.p, self.k)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        return Residue(pow(self.value, e, self.modulus), self.p, self.k)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value} mod {self.p}^{self.k})"


def reduce(q, p: int, k: int) -> Residue:
    """Image of a p-integral rational in Z/p^kZ.

    >>> reduce(Fraction(3, 16), 5, 2)
    Residue(8 mod 5^2)
    """
    check_prime(p)
    _check_exponent(k)
    q = Fraction(q)
    m = p**k
    if q.denominator % p == 0:
        raise DenominatorDivisibleByP(q, p)
    return Residue(q.numerator * pow(q.denominator, -1, m) % m, p, k)


@dataclass(frozen=True, slots=True)
class PadicParam:
    """a = frac + p*t with frac in [0, p-1] and t p-integral."""

    a: Fraction
    p: int
    frac: int
    t: Fraction

    @property
    def half(self) -> int:
        return (self.p - 1) // 2

    @property
    def low(self) -> bool:
        """True when <a>_p <= (p-1)/2."""
        return self.frac <= self.half


def decompose(a, p: int) -> PadicParam:
    a = Fraction(a)
    frac = reduce(a, p, 1).value
    return PadicParam(a, p, frac, (a - frac) / p)


def fermat_quotient(c: int, p: int, k: int = 1) -> Residue:
    """(c^(p-1) - 1)/p modulo p^k, via one exponentiation mod p^(k+1)."""
    check_prime(p)
    _check_exponent(k)
    if c % p == 0:
        raise BaseDivisibleByP(f"{p} divides {c}")
    m = p ** (k + 1)
    r = pow(c % m, p - 1, m)
    return Residue.of((r - 1) // p, p, k)


def harmonic(n: int, p: int, k: int, power: int = 1) -> Residue:
    """Sum of 1/m^power for m = 1..n, reduced mod p^k.  harmonic(0, ...) is 0."""
    check_prime(p)
    _check_exponent(k)
    if n < 0:
        raise ValueError("n must be >= 0")
    if n >= p:
        raise TermDivisibleByP(f"H_{n} contains the term 1/{p}")
    mod = p**k
    total = 0
    for m in range(1, n + 1):
        total += pow(m, -power, mod)
    return Residue(total % mod, p, k)

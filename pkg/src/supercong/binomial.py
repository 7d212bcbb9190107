"""Binomial coefficients at rational arguments and the sums built from them.

Every sum has two evaluators:

* ``SumSpec.exact`` adds exact Fractions and is the path congruences use;
* ``SumSpec.residue`` works in Z/p^kZ from the start, carrying each term as
  p^v * unit so that factors like 1/(2k+1) with 2k+1 = p are handled exactly.
  It shares no code with the exact path and exists to cross-check it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb

from .arith import Residue, check_prime
from .errors import DenominatorDivisibleByP

__all__ = [
    "WeightKind",
    "Shape",
    "SumSpec",
    "FAMILY_PARAM",
    "binom",
    "pair_terms",
    "pair_partial",
    "pair_sum",
    "signed_alt_sum",
    "neg2_sum",
    "central_form",
    "central_sum",
]

FAMILY_PARAM = {
    16: Fraction(-1, 2),
    27: Fraction(-1, 3),
    64: Fraction(-1, 4),
    432: Fraction(-1, 6),
}
_PARAM_FAMILY = {v: k for k, v in FAMILY_PARAM.items()}


class WeightKind(str, Enum):
    ONE = "one"
    K = "k"
    INV_K = "inv_k"
    INV_2K_PLUS_1 = "inv_2k_plus_1"
    INV_2K_MINUS_1 = "inv_2k_minus_1"

    def __call__(self, k: int) -> Fraction | None:
        """Weight w(k); None where the sum skips k (only INV_K at k = 0)."""
        if self is WeightKind.ONE:
            return Fraction(1)
        if self is WeightKind.K:
            return Fraction(k)
        if self is WeightKind.INV_K:
            return Fraction(1, k) if k else None
        if self is WeightKind.INV_2K_PLUS_1:
            return Fraction(1, 2 * k + 1)
        return Fraction(1, 2 * k - 1)

    def parts(self, k: int) -> tuple[int, int] | None:
        """Weight as an integer pair (num, den), for the residue path."""
        if self is WeightKind.ONE:
            return 1, 1
        if self is WeightKind.K:
            return k, 1
        if self is WeightKind.INV_K:
            return (1, k) if k else None
        if self is WeightKind.INV_2K_PLUS_1:
            return 1, 2 * k + 1
        return 1, 2 * k - 1


class Shape(str, Enum):
    PAIR_HALF = "pair_half"
    PAIR_FULL = "pair_full"
    SIGNED_ALT = "signed_alt"
    NEG2 = "neg2"
    CENTRAL = "central"


def binom(a, k: int) -> Fraction:
    """a(a-1)...(a-k+1)/k! for rational a."""
    if k < 0:
        return Fraction(0)
    a = Fraction(a)
    c = Fraction(1)
    for j in range(k):
        c = c * (a - j) / (j + 1)
    return c


@lru_cache(maxsize=8192)
def pair_terms(a: Fraction, n: int) -> tuple:
    """C(a,k) * C(-1-a,k) for k = 0..n."""
    out = [Fraction(1)]
    c = Fraction(1)
    for k in range(n):
        # C(a,k+1)C(-1-a,k+1) / C(a,k)C(-1-a,k) = -(a-k)(a+1+k)/(k+1)^2
        c = -c * (a - k) * (a + 1 + k) / (k + 1) ** 2
        out.append(c)
    return tuple(out)


def _weighted(terms, weight: WeightKind, scale) -> Fraction:
    total = Fraction(0)
    for k, term in enumerate(terms):
        w = weight(k)
        if w is not None and term:
            total += w * term
    return total * scale


def pair_partial(a, n: int, weight: WeightKind = WeightKind.ONE) -> Fraction:
    """sum_{k=0}^{n} w(k) C(a,k) C(-1-a,k) for an arbitrary upper limit n."""
    return _weighted(pair_terms(Fraction(a), n), WeightKind(weight), 1)


def pair_sum(a, p: int, weight: WeightKind = WeightKind.ONE, half: bool = True, scale=1) -> Fraction:
    """scale * sum_k w(k) C(a,k) C(-1-a,k), k up to (p-1)/2 (half) or p-1."""
    n = (p - 1) // 2 if half else p - 1
    return _weighted(pair_terms(Fraction(a), n), WeightKind(weight), Fraction(scale))


def signed_alt_sum(a, p: int) -> Fraction:
    """sum_{k=1}^{p-1} (-1)^(k-1) C(a,k)/k."""
    a = Fraction(a)
    total = Fraction(0)
    c = Fraction(1)
    for k in range(1, p):
        c = c * (a - k + 1) / k
        if not c:
            break
        total += (c if k % 2 else -c) / k
    return total


def neg2_sum(b, p: int) -> Fraction:
    """sum_{k=0}^{p-1} C(b,k) (-2)^k."""
    b = Fraction(b)
    total = Fraction(1)
    c = Fraction(1)
    for k in range(1, p):
        c = c * (b - k + 1) * -2 / k
        if not c:
            break
        total += c
    return total


def central_form(family: int, k: int) -> Fraction:
    """The central-binomial product equal to C(a,k)C(-1-a,k) for a = -1/2, -1/3, -1/4, -1/6."""
    if family == 16:
        num = comb(2 * k, k) ** 2
    elif family == 27:
        num = comb(2 * k, k) * comb(3 * k, k)
    elif family == 64:
        num = comb(2 * k, k) * comb(4 * k, 2 * k)
    elif family == 432:
        num = comb(3 * k, k) * comb(6 * k, 3 * k)
    else:
        raise ValueError(f"unknown family {family}")
    return Fraction(num, family**k)


def central_sum(family: int, p: int, weight: WeightKind = WeightKind.ONE, half: bool = True, scale=1) -> Fraction:
    n = (p - 1) // 2 if half else p - 1
    return _weighted((central_form(family, k) for k in range(n + 1)), WeightKind(weight), Fraction(scale))


# residue-native path ------------------------------------------------------


class _Acc:
    """Running product p^v * u (u a unit mod p^k) plus a zero flag."""

    __slots__ = ("p", "mod", "v", "u", "zero")

    def __init__(self, p, mod):
        self.p, self.mod = p, mod
        self.v, self.u, self.zero = 0, 1, False

    def copy(self):
        c = _Acc(self.p, self.mod)
        c.v, c.u, c.zero = self.v, self.u, self.zero
        return c

    def mul(self, num: int, den: int = 1):
        if num == 0:
            self.zero = True
            return self
        p = self.p
        while num % p == 0:
            num //= p
            self.v += 1
        while den % p == 0:
            den //= p
            self.v -= 1
        self.u = self.u * num * pow(den, -1, self.mod) % self.mod
        return self

    def value(self) -> int:
        if self.zero:
            return 0
        if self.v < 0:
            raise DenominatorDivisibleByP(f"p^{self.v}*unit", self.p, "residue path")
        return self.u * pow(self.p, self.v, self.mod) % self.mod


def _residue_sum(ratios, weights, scale: Fraction, p: int, k: int) -> Residue:
    """sum_k scale * w(k) * c_k where c_0 = 1 and c_{k+1} = c_k * ratio(k)."""
    mod = p**k
    acc = _Acc(p, mod)
    total = 0
    for j, (wt, ratio) in enumerate(zip(weights, ratios)):
        if acc.zero:
            break
        if wt is not None:
            term = acc.copy().mul(*wt).mul(scale.numerator, scale.denominator)
            total += term.value()
        if ratio is not None:
            acc.mul(*ratio)
    return Residue(total % mod, p, k)


@dataclass(frozen=True)
class SumSpec:
    """One finite sum a congruence is about.

    For CENTRAL, ``a`` is one of -1/2, -1/3, -1/4, -1/6 and ``half`` selects the
    range; the other shapes fix their range themselves.
    """

    shape: Shape
    a: Fraction
    p: int
    weight: WeightKind = WeightKind.ONE
    scale: Fraction = field(default=Fraction(1))
    half: bool = True

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "scale", Fraction(self.scale))
        object.__setattr__(self, "shape", Shape(self.shape))
        object.__setattr__(self, "weight", WeightKind(self.weight))
        if self.shape is Shape.CENTRAL and self.a not in _PARAM_FAMILY:
            raise ValueError(f"no central family for a = {self.a}")

    @property
    def upper(self) -> int:
        if self.shape is Shape.PAIR_HALF or (self.shape is Shape.CENTRAL and self.half):
            return (self.p - 1) // 2
        return self.p - 1

    def exact(self) -> Fraction:
        s, p = self.shape, self.p
        if s is Shape.PAIR_HALF or s is Shape.PAIR_FULL:
            return pair_sum(self.a, p, self.weight, s is Shape.PAIR_HALF, self.scale)
        if s is Shape.SIGNED_ALT:
            return self.scale * signed_alt_sum(self.a, p)
        if s is Shape.NEG2:
            return self.scale * neg2_sum(self.a, p)
        return central_sum(_PARAM_FAMILY[self.a], p, self.weight, self.half, self.scale)

    def residue(self, k: int) -> Residue:
        check_prime(self.p)
        n, d = self.a.numerator, self.a.denominator
        top = self.upper
        ks = range(top + 1)
        if self.shape is Shape.SIGNED_ALT:
            # C(a,k) ratio (a-k)/(k+1); weight (-1)^(k-1)/k from k = 1
            ratios = [(n - j * d, d * (j + 1)) for j in ks]
            weights = [None] + [((-1) ** (j - 1), j) for j in range(1, top + 1)]
        elif self.shape is Shape.NEG2:
            ratios = [(-2 * (n - j * d), d * (j + 1)) for j in ks]
            weights = [(1, 1)] * (top + 1)
        else:
            ratios = [(-(n - j * d) * (n + d + j * d), d * d * (j + 1) ** 2) for j in ks]
            weights = [self.weight.parts(j) for j in ks]
        return _residue_sum(ratios, weights, self.scale, self.p, k)

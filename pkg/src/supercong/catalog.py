"""Catalog of congruences, a single-check evaluator, and the scan runner.

Each :class:`CongruenceCheck` reduces both sides to a :class:`Residue` at the
same modulus p^k.  A side that is not p-integral raises instead of passing.
Check ids are frozen; reports and goldens key on them.
"""
from __future__ import annotations

import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Optional

from .arith import PadicParam, Residue, check_prime, decompose, fermat_quotient, harmonic, reduce
from .binomial import FAMILY_PARAM, Shape, SumSpec, WeightKind, binom
from .errors import DenominatorDivisibleByP, NotApplicable, SuperCongError
from .polynomials import (
    bernoulli_diff_quotient,
    bernoulli_diff_quotient_mod,
    bernoulli_poly,
    bernoulli_poly_diff,
    euler_poly,
)
from .sequences import LucasKind, euler, legendre, lucas_mod, u_number

__all__ = [
    "CANONICAL_PARAMS",
    "Ctx",
    "CongruenceCheck",
    "CheckResult",
    "Report",
    "catalog",
    "get_check",
    "evaluate",
    "random_params",
    "scan",
]

CANONICAL_PARAMS = tuple(
    Fraction(n, d) for n, d in [(-1, 2), (-1, 3), (-2, 3), (-1, 4), (-3, 4), (-1, 6), (-5, 6)]
)
DEFAULT_EXACT_BERNOULLI_MAX = 7

ONE, K, INV_K = WeightKind.ONE, WeightKind.K, WeightKind.INV_K
INV_2K_PLUS_1, INV_2K_MINUS_1 = WeightKind.INV_2K_PLUS_1, WeightKind.INV_2K_MINUS_1


class Ctx:
    """Everything an evaluator may need at one (p, k, a)."""

    def __init__(self, p: int, k: int, par: Optional[PadicParam] = None,
                 exact_bernoulli_max: int = DEFAULT_EXACT_BERNOULLI_MAX):
        self.p, self.k, self.par = p, k, par
        self.h = (p - 1) // 2
        self.exact_bernoulli_max = exact_bernoulli_max

    @property
    def a(self) -> Fraction:
        return self.par.a

    @property
    def A(self) -> int:
        return self.par.frac

    @property
    def t(self) -> Fraction:
        return self.par.t

    def R(self, x) -> Residue:
        return reduce(x, self.p, self.k)

    def sign(self, e: int) -> int:
        return -1 if e % 2 else 1

    @cached_property
    def q2(self) -> Residue:
        return fermat_quotient(2, self.p, self.k)

    @cached_property
    def q3(self) -> Residue:
        return fermat_quotient(3, self.p, self.k)

    def H(self, n: int) -> Residue:
        return harmonic(n, self.p, self.k)

    def bdiff(self, n: int, x) -> Fraction:
        return bernoulli_poly_diff(n, Fraction(x))

    def big_bernoulli_quotient(self) -> Residue:
        """(B_n(-a) - B_n)/n mod p^k at n = p^2(p-1)."""
        n = self.p**2 * (self.p - 1)
        if self.p <= self.exact_bernoulli_max:
            return self.R(bernoulli_diff_quotient(n, -self.a))
        return bernoulli_diff_quotient_mod(n, -self.a, self.p, self.k)

    def s_over_p(self) -> Residue:
        """S_{p-(3/p)}/p mod p, after checking p divides S_{p-(3/p)}."""
        p = self.p
        s = lucas_mod(LucasKind.S, p - legendre(3, p), p, 2).value
        if s % p:
            raise DenominatorDivisibleByP(Fraction(s, p), p, "S_{p-(3/p)}/p")
        return Residue.of(s // p, p, 1)


@dataclass(frozen=True)
class CongruenceCheck:
    id: str
    description: str
    statement: str
    k: int
    rhs: Callable[[Ctx], Residue]
    lhs: Optional[Callable[[Ctx], Residue]] = None
    sums: Optional[Callable[[Ctx], list]] = None
    fixed_a: Optional[Fraction] = None
    branch: Callable[[Ctx], str] = lambda c: "-"
    extra_applicable: Callable[[int, PadicParam], bool] = lambda p, par: True
    cost: str = "cheap"

    @property
    def parametric(self) -> bool:
        return self.fixed_a is None

    def applicable(self, p: int, par: Optional[PadicParam]) -> bool:
        if p <= 3:
            return False
        if not self.parametric:
            return True
        return par is not None and par.frac != 0 and self.extra_applicable(p, par)

    def lhs_exact(self, ctx: Ctx) -> Fraction:
        return sum((s.exact() for s in self.sums(ctx)), Fraction(0))

    def eval_lhs(self, ctx: Ctx, residue_native: bool = False) -> Residue:
        if self.sums is None:
            return self.lhs(ctx)
        if residue_native:
            return sum((s.residue(ctx.k) for s in self.sums(ctx)), Residue(0, ctx.p, ctx.k))
        return ctx.R(self.lhs_exact(ctx))


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    p: int
    a: Optional[Fraction]
    branch: str
    k: int
    lhs: Optional[Residue]
    rhs: Optional[Residue]
    passed: bool
    error: Optional[str] = None
    micros: Optional[int] = None

    def sort_key(self):
        return (self.check_id, self.p, self.a is not None, self.a or 0)


# -- helpers shared by many entries ------------------------------------------

def _lohi(c: Ctx) -> str:
    return "lo" if c.A <= c.h else "hi"


def _tprime(c: Ctx) -> Fraction:
    """t below the midpoint, t + 1 above it."""
    return c.t if c.A <= c.h else c.t + 1


def _pair(shape, weight=ONE, scale: Callable[[Ctx], Fraction] | None = None):
    def sums(c: Ctx):
        return [SumSpec(shape, c.a, c.p, weight, scale(c) if scale else 1)]
    return sums


def _central(a: Fraction, weight=ONE, half=True):
    def sums(c: Ctx):
        return [SumSpec(Shape.CENTRAL, a, c.p, weight, 1, half)]
    return sums


def _two_a_plus_one(c: Ctx) -> Fraction:
    return 2 * c.a + 1


def _E(c: Ctx, n: int, x) -> Residue:
    return c.R(euler_poly(n, Fraction(x)))


def _B(c: Ctx, n: int, x) -> Residue:
    return c.R(bernoulli_poly(n, Fraction(x)))


def _leg_p3(p: int) -> int:
    return legendre(p, 3)


# -- right-hand sides ----------------------------------------------------------

def _rhs_eq1_4(c):
    p, t = c.p, c.t
    return c.sign(c.A) + p * p * t * (t + 1) * _E(c, p - 3, -c.a)


def _rhs_eq1_5(c):
    p, t, a = c.p, c.t, c.a
    aa = a * (a + 1)
    return c.sign(c.A) * c.R(aa) + p * p * t * (t + 1) * (aa * _E(c, p - 3, -a) - 1)


def _rhs_eq1_6(c):
    p, t, a = c.p, c.t, c.a
    return -(2 * a + 1) * (2 * t + 1) - p * p * t * (t + 1) * (4 + (2 * a + 1) * _B(c, p - 2, -a))


def _rhs_eq1_7(c):
    p, t = c.p, c.t
    return 1 + 2 * t + p * p * t * (t + 1) * _B(c, p - 2, -c.a)


def _rhs_eq1_8(c):
    p, t = c.p, c.t
    return Fraction(-2, 3) * p * p * t * (t + 1) * _B(c, p - 3, -c.a) - 2 * c.big_bernoulli_quotient()


def _rhs_eq1_9(c):
    return c.sign(c.A) - c.p * c.t * _E(c, c.p - 2, -c.a)


def _rhs_eq1_10(c):
    return c.big_bernoulli_quotient() - (c.a - c.A) / 2 * _B(c, c.p - 2, -c.a)


def _rhs_thm2_2i(c):
    p, q = c.p, c.q2
    return 6 * q - p * (3 * q * q + 2 * c.sign(c.h) * euler(p - 3))


def _rhs_thm2_2ii(c):
    p, q = c.p, c.q3
    return 3 * q - p * (Fraction(3, 2) * q * q + 2 * _leg_p3(p) * u_number(p - 3))


def _rhs_thm2_2iii(c):
    p, q2, q3 = c.p, c.q2, c.q3
    return 4 * q2 + 3 * q3 - p * (2 * q2 * q2 + Fraction(3, 2) * q3 * q3 + 5 * _leg_p3(p) * u_number(p - 3))


def _rhs_thm3_2(c):
    p = c.p
    pell = lucas_mod(LucasKind.PELL, p - legendre(2, p), p, c.k)
    return c.sign(p // 4) * (1 + pell)


def _lhs_lem2_1(c):
    return c.R(binom(c.a - 1, c.h) * binom(-c.a - 1, c.h))


def _rhs_lem2_1(c):
    p, r, t = c.p, c.A, c.t
    q = c.q2
    if r < p / 2:
        return p * t / r + p * p * t / r * (2 * q + c.H(c.h - r)) - Fraction(p * p) * t * t / (r * r)
    return (p * (t + 1) / r + p * p * (t + 1) / r * (2 * q + c.H(r - (p + 1) // 2))
            - Fraction(p * p) * t * (t + 1) / (r * r))


def _rhs_thm2_1a(c):
    if c.A <= c.h:
        return c.R(0)
    return c.p * _B(c, c.p - 2, -c.a)


def _rhs_thm2_1b(c):
    p, a = c.p, c.a
    return (-c.bdiff(2 * p - 2, -a) / (2 * p - 2) + 2 * c.bdiff(p - 1, -a) / (p - 1)
            - (a - c.A) / 2 * _B(c, p - 2, -a))


def _rhs_lem3_1(c):
    p, A, t = c.p, c.A, c.t
    tail = c.R(0)
    for j in range(A):
        delta = 1 if A - j > c.h else 0
        tail += c.sign(j) * (t + delta) / (A - j)
    return c.sign(A) * (1 - p * t * c.H(c.h)) + 2 * p * tail


def _branch_thm3_1(c):
    if c.A <= c.h:
        return "lo"
    return "hi_t_zero" if c.t.numerator % c.p == 0 else "hi_t_unit"


def _rhs_thm3_1(c):
    b = _branch_thm3_1(c)
    if b == "lo":
        return c.R(_neg2(c, c.a))
    if b == "hi_t_unit":
        t = c.t
        return c.R((1 + 1 / t) * _neg2(c, c.a) - c.sign(c.A) / t)
    return c.sign(c.A) - c.p * _E(c, c.p - 2, -c.a)


def _neg2(c, b) -> Fraction:
    return SumSpec(Shape.NEG2, b, c.p).exact()


def _rhs_eq3_1(c):
    return c.sign(c.A) - c.p * _tprime(c) * _E(c, c.p - 2, -c.a)


def _rhs_thm3_3(c):
    p = c.p
    s = lucas_mod(LucasKind.S, p - legendre(3, p), p, c.k)
    return c.sign(c.h) * (1 + legendre(3, p) * s)


def _rhs_thm3_4(c):
    p, a = c.p, c.a
    aa = a * (a + 1)
    return (c.sign(c.A) * c.R(aa)
            - Fraction(1, 2) * p * _tprime(c) * (2 * aa * _E(c, p - 2, -a) + 2 * a + 1))


def _rhs_thm3_5(c):
    p = c.p
    return -_leg_p3(p) * (4 - 3 * p + c.R(2) ** (p + 2)) / 54


def _rhs_lem4_1(c):
    p, A, t = c.p, c.A, c.t
    upper = c.R(0)
    for r in range(c.h + 1, A + 1):
        upper += Fraction(1, r)
    return 1 + 2 * t + 4 * p * t * c.q2 + 2 * p * t * c.H(A) + 2 * p * upper


def _rhs_thm4_1(c):
    p, tp = c.p, _tprime(c)
    return 1 + 2 * c.t + 4 * p * tp * c.q2 - 2 * p * tp * c.R(c.bdiff(p - 1, -c.a))


def _rhs_cor4_1(c):
    p, two, three = c.p, c.R(2), c.R(3)
    return _leg_p3(p) * (2 - two ** (p + 1) + three**p)


def _rhs_thm4_2(c):
    p, a, A = c.p, c.a, c.A
    tail = 1 + (2 * a + 1) * _E(c, p - 2, -2 * a)
    if A < p / 2:
        return -(2 * a + 1) + 2 * (a - A) * tail
    return 2 * a + 1 + 2 * (p + a - A) * tail


def _rhs_thm4_3i(c):
    p = c.p
    return c.sign((p + 1) // 2) * Fraction(p + 1, 2)


def _rhs_thm4_3ii(c):
    p = c.p
    return Fraction(_leg_p3(p), 9) * (c.R(2) ** (p + 1) - 7 - 6 * p)


def _rhs_thm4_3iii(c):
    p = c.p
    return -Fraction(_leg_p3(p), 9) * (c.R(2) ** (p + 1) + 2 + 3 * p)


def _branch_thm4_4(c):
    if c.A < c.p / 2:
        return "lo"
    return "hi_t_half" if (2 * c.t + 1).numerator % c.p == 0 else "hi"


def _rhs_thm4_4(c):
    p, a, t = c.p, c.a, c.t
    b = _branch_thm4_4(c)
    if b == "hi_t_half":
        return 2 * a + 1 + p * (1 + (2 * a + 1) * _E(c, p - 2, -2 * a))
    n2 = _neg2(c, 2 * a)
    if b == "lo":
        return c.R(2 * p * t - (2 * a + 1) * n2)
    u = 2 * t + 1
    return c.R(2 * p * (t + 1) - (2 * a + 1) / u - (2 * a + 1) * (1 + 1 / u) * n2)


def _fixed_bdiff(x):
    return lambda c: c.R(c.bdiff(c.p - 1, Fraction(x)))


def _lhs_aux4_3(c):
    return _E(c, c.p - 2, -2 * c.a)


def _rhs_aux4_3(c):
    a = c.a
    return c.R(c.bdiff(c.p - 1, -a) - c.bdiff(c.p - 1, Fraction(1, 2) - a))


def _lhs_sq(c):
    return harmonic(c.h, c.p, c.k, power=2)


# -- the catalog -----------------------------------------------------------------

_Q = Fraction
_CATALOG: tuple[CongruenceCheck, ...] | None = None


def _build() -> tuple[CongruenceCheck, ...]:
    m2, m3, m4, m6 = _Q(-1, 2), _Q(-1, 3), _Q(-1, 4), _Q(-1, 6)
    full = dict(half=False)
    checks = [
        # full-range central sums
        CongruenceCheck("eq1.2a", "full central sum, family 16", "sum_{k<p} C(2k,k)^2/16^k = (-1/p)", 2,
                        rhs=lambda c: c.R(legendre(-1, c.p)), sums=_central(m2, **full), fixed_a=m2),
        CongruenceCheck("eq1.2b", "full central sum, family 27", "sum_{k<p} C(2k,k)C(3k,k)/27^k = (-3/p)", 2,
                        rhs=lambda c: c.R(legendre(-3, c.p)), sums=_central(m3, **full), fixed_a=m3),
        CongruenceCheck("eq1.3a", "full central sum, family 64", "sum_{k<p} C(2k,k)C(4k,2k)/64^k = (-2/p)", 2,
                        rhs=lambda c: c.R(legendre(-2, c.p)), sums=_central(m4, **full), fixed_a=m4),
        CongruenceCheck("eq1.3b", "full central sum, family 432", "sum_{k<p} C(3k,k)C(6k,3k)/432^k = (-1/p)", 2,
                        rhs=lambda c: c.R(legendre(-1, c.p)), sums=_central(m6, **full), fixed_a=m6),
        # full-range pair sums mod p^3
        CongruenceCheck("eq1.4", "full pair sum", "sum_{k<p} C(a,k)C(-1-a,k) = (-1)^<a> + p^2 t(t+1) E_{p-3}(-a)", 3,
                        rhs=_rhs_eq1_4, sums=_pair(Shape.PAIR_FULL)),
        CongruenceCheck("eq1.5", "full k-weighted pair sum",
                        "sum_{k<p} k C(a,k)C(-1-a,k) = (-1)^<a> a(a+1) + p^2 t(t+1)(a(a+1)E_{p-3}(-a) - 1)", 3,
                        rhs=_rhs_eq1_5, sums=_pair(Shape.PAIR_FULL, K)),
        CongruenceCheck("eq1.6", "full 1/(2k-1) pair sum",
                        "sum_{k<p} C(a,k)C(-1-a,k)/(2k-1) = -(2a+1)(2t+1) - p^2 t(t+1)(4 + (2a+1)B_{p-2}(-a))", 3,
                        rhs=_rhs_eq1_6, sums=_pair(Shape.PAIR_FULL, INV_2K_MINUS_1)),
        CongruenceCheck("eq1.7", "full (2a+1)/(2k+1) pair sum",
                        "sum_{k<p} C(a,k)C(-1-a,k)(2a+1)/(2k+1) = 1 + 2t + p^2 t(t+1) B_{p-2}(-a)", 3,
                        rhs=_rhs_eq1_7, sums=_pair(Shape.PAIR_FULL, INV_2K_PLUS_1, _two_a_plus_one)),
        CongruenceCheck("eq1.8", "full 1/k pair sum",
                        "sum_{0<k<p} C(a,k)C(-1-a,k)/k = -2/3 p^2 t(t+1) B_{p-3}(-a) - 2 (B_n(-a)-B_n)/n, n = p^2(p-1)", 3,
                        rhs=_rhs_eq1_8, sums=_pair(Shape.PAIR_FULL, INV_K), cost="expensive",
                        branch=lambda c: "exact" if c.p <= c.exact_bernoulli_max else "padic"),
        CongruenceCheck("eq1.9", "(-2)^k binomial sum", "sum_{k<p} C(a,k)(-2)^k = (-1)^<a> - p t E_{p-2}(-a)", 2,
                        rhs=_rhs_eq1_9, sums=lambda c: [SumSpec(Shape.NEG2, c.a, c.p)]),
        CongruenceCheck("eq1.10", "alternating 1/k binomial sum",
                        "sum_{0<k<p} (-1)^(k-1) C(a,k)/k = (B_n(-a)-B_n)/n - (a-<a>)/2 B_{p-2}(-a), n = p^2(p-1)", 2,
                        rhs=_rhs_eq1_10, sums=lambda c: [SumSpec(Shape.SIGNED_ALT, c.a, c.p)], cost="expensive",
                        branch=lambda c: "exact" if c.p <= c.exact_bernoulli_max else "padic"),
        # three fixed-a examples
        CongruenceCheck("eq1.12", "half central sum over 2k-1, family 64",
                        "sum_{k<=(p-1)/2} C(2k,k)C(4k,2k)/((2k-1)64^k) = (-1)^((p+1)/2) (p+1)/2", 2,
                        rhs=_rhs_thm4_3i, sums=_central(m4, INV_2K_MINUS_1), fixed_a=m4),
        CongruenceCheck("eq1.13", "half central sum over k, family 64",
                        "sum_{0<k<=(p-1)/2} C(2k,k)C(4k,2k)/(k 64^k) = 6q - p(3q^2 + 2(-1)^((p-1)/2) E_{p-3}), q = q_p(2)", 2,
                        rhs=_rhs_thm2_2i, sums=_central(m4, INV_K), fixed_a=m4),
        CongruenceCheck("eq1.14", "half central sum, family 64",
                        "sum_{k<=(p-1)/2} C(2k,k)C(4k,2k)/64^k = (-1)^[p/4] (1 + P_{p-(2/p)})", 2,
                        rhs=_rhs_thm3_2, sums=_central(m4), fixed_a=m4),
        # product and half sums with 1/k
        CongruenceCheck("lem2.1", "product C(a-1,(p-1)/2) C(-a-1,(p-1)/2), a = pt + r",
                        "r < p/2: pt/r + p^2 t/r (2q_p(2) + H_{(p-1)/2-r}) - p^2t^2/r^2; "
                        "r > p/2: p(t+1)/r + p^2(t+1)/r (2q_p(2) + H_{r-(p+1)/2}) - p^2 t(t+1)/r^2", 3,
                        rhs=_rhs_lem2_1, lhs=_lhs_lem2_1, branch=lambda c: "lo" if c.A < c.p / 2 else "hi"),
        CongruenceCheck("thm2.1a", "half 1/k pair sum plus twice the alternating sum",
                        "S_{(p-1)/2}(a) + 2 sum_{0<k<p} (-1)^(k-1) C(a,k)/k = 0 (<a> <= (p-1)/2) or p B_{p-2}(-a)", 2,
                        rhs=_rhs_thm2_1a, branch=_lohi,
                        sums=lambda c: [SumSpec(Shape.PAIR_HALF, c.a, c.p, INV_K),
                                        SumSpec(Shape.SIGNED_ALT, c.a, c.p, scale=2)]),
        CongruenceCheck("thm2.1b", "alternating 1/k sum via Bernoulli differences",
                        "sum_{0<k<p} (-1)^(k-1) C(a,k)/k = -(B_{2p-2}(-a)-B_{2p-2})/(2p-2) "
                        "+ 2(B_{p-1}(-a)-B_{p-1})/(p-1) - (a-<a>)/2 B_{p-2}(-a)", 2,
                        rhs=_rhs_thm2_1b, sums=lambda c: [SumSpec(Shape.SIGNED_ALT, c.a, c.p)]),
        CongruenceCheck("thm2.2i", "half central 1/k sum, family 64",
                        "sum C(2k,k)C(4k,2k)/(k 64^k) = 6q_p(2) - p(3q_p(2)^2 + 2(-1)^((p-1)/2) E_{p-3})", 2,
                        rhs=_rhs_thm2_2i, sums=_central(m4, INV_K), fixed_a=m4),
        CongruenceCheck("thm2.2ii", "half central 1/k sum, family 27",
                        "sum C(2k,k)C(3k,k)/(k 27^k) = 3q_p(3) - p(3/2 q_p(3)^2 + 2(p/3) U_{p-3})", 2,
                        rhs=_rhs_thm2_2ii, sums=_central(m3, INV_K), fixed_a=m3),
        CongruenceCheck("thm2.2iii", "half central 1/k sum, family 432",
                        "sum C(3k,k)C(6k,3k)/(k 432^k) = 4q_p(2) + 3q_p(3) - p(2q_p(2)^2 + 3/2 q_p(3)^2 + 5(p/3) U_{p-3})", 2,
                        rhs=_rhs_thm2_2iii, sums=_central(m6, INV_K), fixed_a=m6),
        # half sums, unweighted and k-weighted
        CongruenceCheck("lem3.1", "half pair sum with the delta correction",
                        "sum_{k<=(p-1)/2} C(a,k)C(-1-a,k) = (-1)^<a>(1 - p t H_{(p-1)/2}) "
                        "+ 2p sum_{j<<a>} (-1)^j (t + d_j)/(<a>-j), d_j = [<a>-j > (p-1)/2]", 2,
                        rhs=_rhs_lem3_1, sums=_pair(Shape.PAIR_HALF), branch=_lohi),
        CongruenceCheck("thm3.1", "half pair sum against the (-2)^k sum",
                        "lo: N; hi, t unit: (1+1/t)N - (-1)^<a>/t; hi, p|t: (-1)^<a> - p E_{p-2}(-a); "
                        "N = sum_{k<p} C(a,k)(-2)^k", 2,
                        rhs=_rhs_thm3_1, sums=_pair(Shape.PAIR_HALF), branch=_branch_thm3_1),
        CongruenceCheck("eq3.1", "half pair sum via E_{p-2}",
                        "sum_{k<=(p-1)/2} C(a,k)C(-1-a,k) = (-1)^<a> - p t' E_{p-2}(-a), t' = t or t+1", 2,
                        rhs=_rhs_eq3_1, sums=_pair(Shape.PAIR_HALF), branch=_lohi),
        CongruenceCheck("thm3.2", "half central sum, family 64, Pell",
                        "sum C(2k,k)C(4k,2k)/64^k = (-1)^[p/4] (1 + P_{p-(2/p)})", 2,
                        rhs=_rhs_thm3_2, sums=_central(m4), fixed_a=m4),
        CongruenceCheck("thm3.3", "half central sum, family 432, S sequence",
                        "sum C(3k,k)C(6k,3k)/432^k = (-1)^((p-1)/2) (1 + (3/p) S_{p-(3/p)})", 2,
                        rhs=_rhs_thm3_3, sums=_central(m6), fixed_a=m6),
        CongruenceCheck("thm3.4", "half k-weighted pair sum",
                        "sum k C(a,k)C(-1-a,k) = (-1)^<a> a(a+1) - 1/2 p t'(2a(a+1)E_{p-2}(-a) + 2a + 1)", 2,
                        rhs=_rhs_thm3_4, sums=_pair(Shape.PAIR_HALF, K), branch=_lohi),
        CongruenceCheck("thm3.5", "half central k-weighted sum, family 27",
                        "sum k C(2k,k)C(3k,k)/27^k = -(p/3)(4 - 3p + 2^(p+2))/54", 2,
                        rhs=_rhs_thm3_5, sums=_central(m3, K), fixed_a=m3),
        # 1/(2k+1) and 1/(2k-1) weights
        CongruenceCheck("lem4.1", "half (2a+1)/(2k+1) pair sum via harmonic numbers",
                        "= 1 + 2t + 4pt q_p(2) + 2pt H_<a> + 2p sum_{(p-1)/2 < r <= <a>} 1/r", 2,
                        rhs=_rhs_lem4_1, sums=_pair(Shape.PAIR_HALF, INV_2K_PLUS_1, _two_a_plus_one), branch=_lohi),
        CongruenceCheck("thm4.1", "half (2a+1)/(2k+1) pair sum via Bernoulli differences",
                        "= 1 + 2t + 4p t' q_p(2) - 2p t'(B_{p-1}(-a) - B_{p-1})", 2,
                        rhs=_rhs_thm4_1, sums=_pair(Shape.PAIR_HALF, INV_2K_PLUS_1, _two_a_plus_one), branch=_lohi),
        CongruenceCheck("cor4.1", "half central 1/(2k+1) sum, family 27",
                        "sum C(2k,k)C(3k,k)/((2k+1)27^k) = (p/3)(2 - 2^(p+1) + 3^p)", 2,
                        rhs=_rhs_cor4_1, sums=_central(m3, INV_2K_PLUS_1), fixed_a=m3),
        CongruenceCheck("thm4.2", "half 1/(2k-1) pair sum",
                        "<a> < p/2: -(2a+1) + 2(a-<a>)(1 + (2a+1)E_{p-2}(-2a)); "
                        "<a> > p/2: 2a+1 + 2(p+a-<a>)(1 + (2a+1)E_{p-2}(-2a))", 2,
                        rhs=_rhs_thm4_2, sums=_pair(Shape.PAIR_HALF, INV_2K_MINUS_1),
                        branch=lambda c: "lo" if c.A < c.p / 2 else "hi"),
        CongruenceCheck("thm4.3i", "half central 1/(2k-1) sum, family 64",
                        "sum C(2k,k)C(4k,2k)/((2k-1)64^k) = (-1)^((p+1)/2)(p+1)/2", 2,
                        rhs=_rhs_thm4_3i, sums=_central(m4, INV_2K_MINUS_1), fixed_a=m4),
        CongruenceCheck("thm4.3ii", "half central 1/(2k-1) sum, family 27",
                        "sum C(2k,k)C(3k,k)/((2k-1)27^k) = (p/3)(2^(p+1) - 7 - 6p)/9", 2,
                        rhs=_rhs_thm4_3ii, sums=_central(m3, INV_2K_MINUS_1), fixed_a=m3),
        CongruenceCheck("thm4.3iii", "half central 1/(2k-1) sum, family 432",
                        "sum C(3k,k)C(6k,3k)/((2k-1)432^k) = -(p/3)(2^(p+1) + 2 + 3p)/9", 2,
                        rhs=_rhs_thm4_3iii, sums=_central(m6, INV_2K_MINUS_1), fixed_a=m6),
        CongruenceCheck("thm4.4", "half 1/(2k-1) pair sum against the (-2)^k sum at 2a",
                        "lo: 2pt - (2a+1)N; hi: 2p(t+1) - (2a+1)/(2t+1) - (2a+1)(1 + 1/(2t+1))N; "
                        "hi, 2t+1 = 0 mod p: 2a+1 + p(1 + (2a+1)E_{p-2}(-2a)); N = sum_{k<p} C(2a,k)(-2)^k", 2,
                        rhs=_rhs_thm4_4, sums=_pair(Shape.PAIR_HALF, INV_2K_MINUS_1), branch=_branch_thm4_4),
        # auxiliary facts mod p
        CongruenceCheck("aux3.3a", "B_{p-1}(1/2) - B_{p-1}", "= 2 q_p(2) mod p", 1,
                        lhs=_fixed_bdiff(_Q(1, 2)), rhs=lambda c: 2 * c.q2, fixed_a=_Q(1, 2)),
        CongruenceCheck("aux3.3b", "B_{p-1}(1/3) - B_{p-1}", "= 3/2 q_p(3) mod p", 1,
                        lhs=_fixed_bdiff(_Q(1, 3)), rhs=lambda c: Fraction(3, 2) * c.q3, fixed_a=_Q(1, 3)),
        CongruenceCheck("aux3.4", "B_{p-1}(1/4) - B_{p-1}", "= 3 q_p(2) mod p", 1,
                        lhs=_fixed_bdiff(_Q(1, 4)), rhs=lambda c: 3 * c.q2, fixed_a=_Q(1, 4)),
        CongruenceCheck("aux3.5", "B_{p-1}(1/6) - B_{p-1}", "= 2 q_p(2) + 3/2 q_p(3) mod p", 1,
                        lhs=_fixed_bdiff(_Q(1, 6)), rhs=lambda c: 2 * c.q2 + Fraction(3, 2) * c.q3, fixed_a=_Q(1, 6)),
        CongruenceCheck("aux3.6", "B_{p-1}(1/12) - B_{p-1}", "= 3 S_{p-(3/p)}/p + 3 q_p(2) + 3/2 q_p(3) mod p", 1,
                        lhs=_fixed_bdiff(_Q(1, 12)),
                        rhs=lambda c: 3 * c.s_over_p() + 3 * c.q2 + Fraction(3, 2) * c.q3, fixed_a=_Q(1, 12)),
        CongruenceCheck("aux3.9", "E_{p-2}(1/6)", "= 6 S_{p-(3/p)}/p mod p", 1,
                        lhs=lambda c: _E(c, c.p - 2, _Q(1, 6)), rhs=lambda c: 6 * c.s_over_p(), fixed_a=_Q(1, 6)),
        CongruenceCheck("aux3.10", "E_{p-2}(1/3)", "= 2 q_p(2) mod p", 1,
                        lhs=lambda c: _E(c, c.p - 2, _Q(1, 3)), rhs=lambda c: 2 * c.q2, fixed_a=_Q(1, 3)),
        CongruenceCheck("aux4.1", "H_<a> against a Bernoulli difference", "H_<a> = -(B_{p-1}(-a) - B_{p-1}) mod p", 1,
                        lhs=lambda c: c.H(c.A), rhs=lambda c: -c.R(c.bdiff(c.p - 1, -c.a)), branch=_lohi),
        CongruenceCheck("aux4.3", "E_{p-2}(-2a) as a Bernoulli difference",
                        "E_{p-2}(-2a) = B_{p-1}(-a) - B_{p-1}(1/2 - a) mod p", 1,
                        lhs=_lhs_aux4_3, rhs=_rhs_aux4_3, branch=_lohi),
        CongruenceCheck("auxE", "E_{p-3} via B_{p-2}(1/4)", "E_{p-3} = B_{p-2}(1/4)/8 mod p", 1,
                        lhs=lambda c: c.R(euler(c.p - 3)), rhs=lambda c: _B(c, c.p - 2, _Q(1, 4)) / 8, fixed_a=_Q(1, 4)),
        CongruenceCheck("auxU3", "B_{p-2}(1/3) via U", "B_{p-2}(1/3) = 6 U_{p-3} mod p", 1,
                        lhs=lambda c: _B(c, c.p - 2, _Q(1, 3)), rhs=lambda c: c.R(6 * u_number(c.p - 3)), fixed_a=_Q(1, 3)),
        CongruenceCheck("auxU6", "B_{p-2}(1/6) via U", "B_{p-2}(1/6) = 30 U_{p-3} mod p", 1,
                        lhs=lambda c: _B(c, c.p - 2, _Q(1, 6)), rhs=lambda c: c.R(30 * u_number(c.p - 3)), fixed_a=_Q(1, 6)),
        CongruenceCheck("auxH.half", "H_{(p-1)/2}", "= -2 q_p(2) mod p", 1,
                        lhs=lambda c: c.H(c.h), rhs=lambda c: -2 * c.q2, fixed_a=_Q(0)),
        CongruenceCheck("auxH.quarter", "H_[p/4]", "= -3 q_p(2) mod p", 1,
                        lhs=lambda c: c.H(c.p // 4), rhs=lambda c: -3 * c.q2, fixed_a=_Q(0)),
        CongruenceCheck("auxH.wolstenholme", "H_{p-1}", "= 0 mod p^2", 2,
                        lhs=lambda c: c.H(c.p - 1), rhs=lambda c: c.R(0), fixed_a=_Q(0)),
        CongruenceCheck("auxH.squares", "sum_{m<=(p-1)/2} 1/m^2", "= 0 mod p", 1,
                        lhs=_lhs_sq, rhs=lambda c: c.R(0), fixed_a=_Q(0)),
    ]
    ids = [c.id for c in checks]
    assert len(ids) == len(set(ids))
    return tuple(checks)


def catalog() -> list[CongruenceCheck]:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build()
    return list(_CATALOG)


def get_check(check_id: str) -> CongruenceCheck:
    for c in catalog():
        if c.id == check_id:
            return c
    raise KeyError(check_id)


def evaluate(check, p: int, a=None, *, residue_native: bool = False,
             exact_bernoulli_max: int = DEFAULT_EXACT_BERNOULLI_MAX,
             timed: bool = False) -> CheckResult:
    """Evaluate both sides of one check at p (and a, for parametric checks)."""
    if isinstance(check, str):
        check = get_check(check)
    check_prime(p)
    par = None
    if check.parametric:
        if a is None:
            raise NotApplicable(f"{check.id} needs a parameter a")
        try:
            par = decompose(a, p)
        except DenominatorDivisibleByP as exc:
            raise NotApplicable(f"{check.id}: a = {a} is not {p}-integral") from exc
    if not check.applicable(p, par):
        raise NotApplicable(f"{check.id} does not apply at p = {p}, a = {a}")
    if not check.parametric:
        par = decompose(check.fixed_a, p)
    ctx = Ctx(p, check.k, par, exact_bernoulli_max)
    start = time.perf_counter()
    try:
        lhs = check.eval_lhs(ctx, residue_native)
        rhs = check.rhs(ctx)
        if not isinstance(rhs, Residue):
            rhs = ctx.R(rhs)
    except DenominatorDivisibleByP as exc:
        raise DenominatorDivisibleByP(exc.value, exc.p, f"{check.id} at p={p}, a={a}") from exc
    micros = int((time.perf_counter() - start) * 1e6) if timed else None
    return CheckResult(
        check.id, p, Fraction(a) if check.parametric else None, check.branch(ctx), check.k,
        lhs, rhs, lhs == rhs, None, micros,
    )


# -- scanning ----------------------------------------------------------------------

def _small_rational(rng: random.Random, p: int, span: int = 30) -> Fraction:
    while True:
        den = rng.randint(1, span)
        if den % p:
            return Fraction(rng.randint(-span, span), den)


def random_params(p: int, count: int, seed: int) -> list[Fraction]:
    """Random p-integral a = frac + p*t for one prime, deterministic in (seed, p).

    Four forced values hit t = 0 and t = -1/2 mod p on both sides of (p-1)/2;
    the remaining fracs cycle through 1..p-1 in shuffled order.
    """
    rng = random.Random(f"supercong:{seed}:{p}")
    h = (p - 1) // 2
    out = []
    for frac in (rng.randint(1, h), rng.randint(h + 1, p - 1)):
        out.append(frac + p * (p * _small_rational(rng, p, 5)))
        out.append(frac + p * (Fraction(-1, 2) + p * _small_rational(rng, p, 5)))
    fracs = list(range(1, p))
    rng.shuffle(fracs)
    for i in range(count):
        out.append(fracs[i % (p - 1)] + p * _small_rational(rng, p))
    return list(dict.fromkeys(out))


@dataclass
class Report:
    config: dict
    results: list[CheckResult] = field(default_factory=list)

    def summary(self) -> dict:
        per = {}
        for r in self.results:
            row = per.setdefault(r.check_id, Counter(passed=0, failed=0))
            row["passed" if r.passed else "failed"] += 1
        return {
            "total": len(self.results),
            "passed": sum(r.passed for r in self.results),
            "failed": sum(not r.passed for r in self.results),
            "per_check": {cid: dict(c) for cid, c in sorted(per.items())},
        }

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)


def select_checks(ids: Optional[Iterable[str]] = None, expensive: bool = False) -> list[CongruenceCheck]:
    all_checks = catalog()
    if ids is None:
        chosen = all_checks
    else:
        ids = set(ids)
        unknown = ids - {c.id for c in all_checks}
        if unknown:
            raise KeyError(f"unknown check ids: {', '.join(sorted(unknown))}")
        chosen = [c for c in all_checks if c.id in ids]
    return [c for c in chosen if expensive or c.cost == "cheap"]


def _scan_prime(p, params, random_count, seed, ids, expensive, exact_bernoulli_max, timings,
                residue_native=False):
    checks = select_checks(ids, expensive)
    a_values = [Fraction(x) for x in params]
    if random_count:
        a_values += random_params(p, random_count, seed)
    a_values = list(dict.fromkeys(a_values))
    out = []
    for check in checks:
        targets = a_values if check.parametric else [None]
        for a in targets:
            try:
                res = evaluate(check, p, a, residue_native=residue_native,
                               exact_bernoulli_max=exact_bernoulli_max, timed=timings)
            except NotApplicable:
                continue
            except (SuperCongError, ArithmeticError, ValueError) as exc:
                res = CheckResult(check.id, p, a, "-", check.k, None, None, False, f"{type(exc).__name__}: {exc}")
            out.append(res)
    return out


def scan(primes: Iterable[int], params: Iterable = CANONICAL_PARAMS, ids: Optional[Iterable[str]] = None,
         expensive: bool = False, random_count: int = 0, seed: int = 0, jobs: int = 1,
         exact_bernoulli_max: int = DEFAULT_EXACT_BERNOULLI_MAX, timings: bool = False,
         residue_native: bool = False) -> Report:
    """Run every selected check at every prime and applicable a; results sorted by (id, p, a)."""
    primes = list(primes)
    for p in primes:
        check_prime(p)
    params = [Fraction(x) for x in params]
    ids = None if ids is None else sorted(set(ids))
    select_checks(ids, expensive)  # validate ids up front
    config = {
        "primes": primes,
        "a_values": [str(x) for x in params],
        "random_count": random_count,
        "seed": seed,
        "checks": ids if ids is not None else "all",
        "expensive": expensive,
        "exact_bernoulli_max": exact_bernoulli_max,
    }
    job_args = [(p, params, random_count, seed, ids, expensive, exact_bernoulli_max, timings, residue_native)
                for p in primes]
    results = []
    if jobs > 1 and len(primes) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for chunk in pool.map(_scan_prime, *zip(*job_args)):
                results.extend(chunk)
    else:
        for args in job_args:
            results.extend(_scan_prime(*args))
    results.sort(key=CheckResult.sort_key)
    return Report(config, results)

"""Bernoulli and Euler polynomials at rational arguments.

Everything is evaluated exactly from the defining sums and reduced afterwards.
B_{p-1} and B_{2p-2} carry p in their denominators, so congruences use the
difference B_n(x) - B_n, whose sum simply omits the k = n term.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

from .arith import Residue, check_prime, reduce
from .sequences import Kind, build_table

__all__ = [
    "bernoulli_poly_terms",
    "bernoulli_poly",
    "bernoulli_poly_diff",
    "euler_poly",
    "euler_via_bernoulli",
    "bernoulli_diff_quotient",
    "bernoulli_diff_quotient_mod",
    "unit_harmonic_mod",
]


def bernoulli_poly_terms(n: int, x, upto: int | None = None):
    """Yield (k, C(n,k) B_k x^(n-k)) for the nonzero terms with k <= upto."""
    x = Fraction(x)
    upto = n if upto is None else upto
    B = build_table(Kind.BERNOULLI, n)
    for k in range(upto + 1):
        if B[k]:
            yield k, comb(n, k) * B[k] * x ** (n - k)


@lru_cache(maxsize=65536)
def bernoulli_poly(n: int, x) -> Fraction:
    if n < 0:
        raise ValueError("n must be >= 0")
    return sum((term for _, term in bernoulli_poly_terms(n, x)), Fraction(0))


@lru_cache(maxsize=65536)
def bernoulli_poly_diff(n: int, x) -> Fraction:
    """B_n(x) - B_n, never materializing the k = n term."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return sum((term for _, term in bernoulli_poly_terms(n, x, n - 1)), Fraction(0))


@lru_cache(maxsize=65536)
def euler_poly(n: int, x) -> Fraction:
    """E_n(x) = 2^-n sum_r C(n,r) (2x-1)^(n-r) E_r."""
    if n < 0:
        raise ValueError("n must be >= 0")
    y = 2 * Fraction(x) - 1
    E = build_table(Kind.EULER, n)
    s = sum(comb(n, r) * E[r] * y ** (n - r) for r in range(0, n + 1) if E[r])
    return Fraction(s) / 2**n


def euler_via_bernoulli(n: int, x, form: str = "A") -> Fraction:
    """E_n(x) expressed through B_{n+1}; form A uses x and x/2, form B uses (x+1)/2 and x/2."""
    x = Fraction(x)
    m = n + 1
    if form == "A":
        return Fraction(2, m) * (bernoulli_poly(m, x) - 2**m * bernoulli_poly(m, x / 2))
    if form == "B":
        return Fraction(2**m, m) * (bernoulli_poly(m, (x + 1) / 2) - bernoulli_poly(m, x / 2))
    raise ValueError(f"unknown form {form!r}")


def bernoulli_diff_quotient(n: int, x) -> Fraction:
    """(B_n(x) - B_n)/n, exactly."""
    return bernoulli_poly_diff(n, Fraction(x)) / n


@lru_cache(maxsize=1024)
def _inverse_power_sums(p: int, k: int, e: int) -> tuple:
    """Prefix sums of s^-e mod p^k for s = 0..p-1 (entry r covers s < r)."""
    m = p**k
    out = [0, 0]
    acc = 0
    for s in range(1, p):
        acc = (acc + pow(s, -e, m)) % m
        out.append(acc)
    return tuple(out)


def unit_harmonic_mod(m: int, p: int, k: int) -> Residue:
    """Sum of 1/j over 1 <= j < m with p not dividing j, mod p^k.

    Uses j = i*p + s and 1/(ip + s) = sum_e (-ip)^e / s^(e+1), truncated at
    e < k, so the cost is O(p) whatever the size of m.
    """
    check_prime(p)
    mod = p**k
    Q, R = divmod(m, p)
    # sum_{i<Q} i^e for e = 0, 1, 2
    block_sums = (Q, Q * (Q - 1) // 2, (Q - 1) * Q * (2 * Q - 1) // 6)
    total = 0
    for e in range(k):
        sums = _inverse_power_sums(p, k, e + 1)
        coeff = (-p) ** e
        total += coeff * block_sums[e] * sums[p]
        total += coeff * Q**e * sums[R]
    return Residue(total % mod, p, k)


def bernoulli_diff_quotient_mod(n: int, x, p: int, k: int) -> Residue:
    """(B_n(x) - B_n)/n mod p^k for n a multiple of p^(k-1)(p-1), n > k.

    For a positive integer m, B_n(m) - B_n = n * sum_{j<m} j^(n-1).  The map
    x -> (B_n(x) - B_n)/n is constant mod p^k on classes mod p^(k+1), and
    j^(n-1) is 1/j or 0 mod p^k, so the value is a partial sum of unit
    reciprocals.  Never touches B_n itself.
    """
    if n % (p ** (k - 1) * (p - 1)) or n <= k:
        raise ValueError(f"n={n} is not a multiple of phi({p}^{k}) exceeding {k}")
    m = reduce(x, p, k).value
    return unit_harmonic_mod(m, p, k)

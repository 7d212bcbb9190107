from fractions import Fraction
from math import comb

import pytest

from supercong.arith import Residue, primes_between, reduce
from supercong.sequences import (
    Kind,
    LucasKind,
    bernoulli,
    build_table,
    legendre,
    lucas_mod,
    lucas_value,
)


def akiyama_tanigawa(n):
    """Independent oracle; yields B_1 = +1/2, other values agree."""
    out, A = [], [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        A[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            A[j - 1] = j * (A[j - 1] - A[j])
        out.append(A[0])
    return out


def test_table_examples():
    assert build_table(Kind.BERNOULLI, 6).values == tuple(
        Fraction(x) for x in ["1", "-1/2", "1/6", "0", "-1/30", "0", "1/42"]
    )
    assert build_table(Kind.EULER, 6).values == (1, 0, -1, 0, 5, 0, -61)
    assert build_table(Kind.U, 4).values == (1, 0, -2, 0, 22)


def test_bernoulli_against_akiyama_tanigawa():
    at = akiyama_tanigawa(120)
    B = build_table(Kind.BERNOULLI, 120)
    assert B[1] == -at[1]
    assert [B[n] for n in range(2, 121)] == at[2:]


def test_recurrences_hold():
    N = 80
    B = build_table(Kind.BERNOULLI, N)
    E = build_table(Kind.EULER, N)
    U = build_table(Kind.U, N)
    assert B[0] == E[0] == U[0] == 1
    for n in range(2, N + 1):
        assert sum(comb(n, k) * B[k] for k in range(n)) == 0
    for n in range(1, N + 1):
        assert E[n] == -sum(comb(n, 2 * k) * E[n - 2 * k] for k in range(1, n // 2 + 1))
        assert U[n] == -2 * sum(comb(n, 2 * k) * U[n - 2 * k] for k in range(1, n // 2 + 1))


def test_odd_vanishing_and_integrality():
    N = 200
    B = build_table(Kind.BERNOULLI, N)
    E = build_table(Kind.EULER, N)
    U = build_table(Kind.U, N)
    for m in range(1, N // 2):
        assert B[2 * m + 1] == 0
        assert E[2 * m - 1] == 0
        assert U[2 * m - 1] == 0
    assert all(isinstance(v, int) for v in E.values + U.values)


def test_table_prefix_is_stable():
    short = build_table(Kind.BERNOULLI, 10)
    long = build_table(Kind.BERNOULLI, 30)
    assert long.values[:11] == short.values
    assert build_table(Kind.BERNOULLI, 10) == short


@pytest.mark.parametrize("m", range(1, 31))
def test_von_staudt_clausen_denominators(m):
    expected = 1
    for q in primes_between(2, 2 * m + 1):
        if (2 * m) % (q - 1) == 0:
            expected *= q
    assert bernoulli(2 * m).denominator == expected


def test_lucas_examples():
    assert [lucas_value(LucasKind.PELL, n).value for n in range(7)] == [0, 1, 2, 5, 12, 29, 70]
    assert [lucas_value(LucasKind.S, n).value for n in range(6)] == [0, 1, 4, 15, 56, 209]
    assert lucas_mod(LucasKind.PELL, 6, 5, 2) == Residue(20, 5, 2)


@pytest.mark.parametrize("kind", list(LucasKind))
@pytest.mark.parametrize("p,k", [(5, 1), (5, 3), (7, 2), (13, 3), (199, 2)])
def test_lucas_mod_matches_reduce(kind, p, k):
    for n in range(0, 501, 7):
        assert lucas_mod(kind, n, p, k) == reduce(lucas_value(kind, n).value, p, k)


def test_legendre_examples():
    assert legendre(2, 5) == -1
    for p in (5, 7, 11, 199):
        assert legendre(0, p) == 0
        assert legendre(1, p) == 1
        assert legendre(p, 3) == (1 if p % 3 == 1 else -1)


@pytest.mark.parametrize("p", primes_between(3, 101))
def test_legendre_brute_force_and_multiplicative(p):
    squares = {x * x % p for x in range(1, p)}
    for c in range(-p, 2 * p):
        expected = 0 if c % p == 0 else (1 if c % p in squares else -1)
        assert legendre(c, p) == expected
    for c in range(1, 15):
        for d in range(1, 15):
            assert legendre(c * d, p) == legendre(c, p) * legendre(d, p)

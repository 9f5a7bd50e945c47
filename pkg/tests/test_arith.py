"""Tests for the integer/modular primitives.

Every routine is checked against an independent brute-force oracle on a
small range (exhaustive scans, Euler's criterion, direct reconstruction)
plus frozen single values computed by hand.
"""

from __future__ import annotations

import math
import random

import pytest

from sqavoid import arith
from sqavoid.arith import (
    BadPrime,
    DomainError,
    NotCoprime,
    NotInvertible,
    factorize,
    iroot,
    is_perfect_square,
    is_prime,
    jacobi,
    least_qnr,
    mod_inverse,
    sqrt_mod,
    squarefree_kernel,
)


# ---------------------------------------------------------------- oracles


def oracle_inverse(a: int, m: int) -> int | None:
    for x in range(m):
        if (a * x) % m == 1 % m:
            return x
    return None


def oracle_kernel(q: int) -> int:
    s = 1
    while not is_perfect_square(s * q):
        s += 1
    return s


def oracle_squares_mod(m: int) -> set[int]:
    return {x * x % m for x in range(m)}


def oracle_is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % f for f in range(2, math.isqrt(n) + 1))


def oracle_sqrt_mod(a: int, m: int) -> int | None:
    for c in range(m):
        if c * c % m == a % m:
            return c
    return None


# ----------------------------------------------------------- frozen values


def test_mod_inverse_frozen():
    assert mod_inverse(3, 13) == 9
    assert (3 * 9) % 13 == 1
    assert mod_inverse(1, 1) == 0
    assert mod_inverse(0, 1) == 0


def test_mod_inverse_errors():
    with pytest.raises(NotInvertible):
        mod_inverse(2, 4)
    with pytest.raises(NotInvertible):
        mod_inverse(0, 5)
    with pytest.raises(DomainError):
        mod_inverse(1, 0)


def test_kernel_frozen():
    # 360 = 2^3 * 3^2 * 5 -> odd-exponent primes are 2 and 5.
    assert squarefree_kernel(360) == 10
    assert squarefree_kernel(1) == 1
    assert squarefree_kernel(4) == 1
    assert squarefree_kernel(12) == 3
    with pytest.raises(DomainError):
        squarefree_kernel(0)


def test_jacobi_frozen():
    assert jacobi(2, 15) == 1
    # ... yet 2 is not a square modulo 15 (Jacobi = 1 does not imply residue).
    assert 2 not in oracle_squares_mod(15)
    assert jacobi(0, 3) == 0
    assert jacobi(1, 1) == 1
    assert jacobi(-1, 5) == 1
    assert jacobi(-1, 7) == -1
    with pytest.raises(DomainError):
        jacobi(3, 4)
    with pytest.raises(DomainError):
        jacobi(3, -5)


def test_least_qnr_frozen():
    assert least_qnr(17) == 3
    assert 2 in oracle_squares_mod(17)  # 6^2 = 36 = 2 (mod 17)
    assert least_qnr(3) == 2
    assert least_qnr(13) == 2
    with pytest.raises(BadPrime):
        least_qnr(15)
    with pytest.raises(BadPrime):
        least_qnr(2)


def test_sqrt_mod_frozen():
    assert sqrt_mod(2, 7) == 3  # 3^2 = 9 = 2; the other root 4 is larger
    assert sqrt_mod(4, 15) == 2  # roots are {2, 7, 8, 13}
    assert sqrt_mod(0, 1) == 0
    assert sqrt_mod(5, 7) is None
    with pytest.raises(NotCoprime):
        sqrt_mod(3, 9)


def test_is_prime_frozen():
    assert is_prime(2) and is_prime(3) and not is_prime(1) and not is_prime(0)
    # Mersenne prime 2^61 - 1.
    assert is_prime(2305843009213693951)
    # 2^67 - 1 = 193707721 * 761838257287 (composite).
    assert not is_prime(147573952589676412927)
    # Strong pseudoprime to bases 2,3,5,7 -- must still be rejected.
    assert not is_prime(3215031751)
    with pytest.raises(DomainError):
        is_prime(arith._MR_VALID_BELOW)


# ------------------------------------------------------- oracle sweeps


def test_mod_inverse_matches_scan():
    for m in range(1, 40):
        for a in range(m):
            want = oracle_inverse(a, m)
            if want is None:
                with pytest.raises(NotInvertible):
                    mod_inverse(a, m)
            else:
                assert mod_inverse(a, m) == want


def test_is_perfect_square_scan():
    squares = {x * x for x in range(200)}
    for n in range(-50, 40000):
        assert is_perfect_square(n) == (n in squares)


def test_iroot_exact():
    rng = random.Random(20260814)
    for _ in range(500):
        k = rng.randint(1, 20)
        n = rng.randint(0, 10**30)
        r = iroot(n, k)
        assert r**k <= n < (r + 1) ** k
    assert iroot(10**18, 2) == 10**9
    assert iroot(2**160 - 1, 16) == 2**10 - 1
    with pytest.raises(DomainError):
        iroot(-1, 2)
    with pytest.raises(DomainError):
        iroot(5, 0)


def test_kernel_matches_scan():
    for q in range(1, 500):
        s = oracle_kernel(q)
        assert squarefree_kernel(q) == s
        assert is_perfect_square(s * q)


def test_jacobi_euler_criterion():
    # On odd primes the Jacobi symbol is the Legendre symbol, which Euler's
    # criterion computes as a^((p-1)/2) mod p.
    for p in [3, 5, 7, 11, 13, 17, 19, 23, 97, 101, 199]:
        for a in range(0, p):
            e = pow(a, (p - 1) // 2, p)
            want = 0 if e == 0 else (1 if e == 1 else -1)
            assert jacobi(a, p) == want


def test_jacobi_multiplicative():
    rng = random.Random(7)
    for _ in range(300):
        m = rng.randrange(1, 200, 2)
        n = rng.randrange(1, 200, 2)
        a = rng.randint(-100, 100)
        assert jacobi(a, m * n) == jacobi(a, m) * jacobi(a, n)
        b = rng.randint(-100, 100)
        assert jacobi(a * b, m) == jacobi(a, m) * jacobi(b, m)


def test_is_prime_matches_trial_division():
    for n in range(0, 5000):
        assert is_prime(n) == oracle_is_prime(n)
    # Straddle the internal trial-division/Miller-Rabin switch.
    for n in range(999_980, 1_000_120):
        assert is_prime(n) == oracle_is_prime(n)


def test_least_qnr_matches_scan():
    for p in range(3, 300):
        if not oracle_is_prime(p):
            continue
        squares = oracle_squares_mod(p)
        want = next(n for n in range(2, p) if n not in squares)
        assert least_qnr(p) == want
        # Classical bound: the least non-residue is below sqrt(p) + 1.
        assert (want - 1) ** 2 < p


def test_sqrt_mod_matches_scan():
    for m in range(1, 120):
        for a in range(m):
            if math.gcd(a, m) != 1:
                continue
            want = oracle_sqrt_mod(a, m)
            got = sqrt_mod(a, m)
            assert got == want, (a, m, got, want)


def test_sqrt_mod_random_moduli():
    rng = random.Random(99)
    for _ in range(200):
        m = rng.randint(2, 5000)
        a = rng.randint(1, m - 1)
        if math.gcd(a, m) != 1:
            continue
        got = sqrt_mod(a, m)
        if got is None:
            # Cross-check absence on a subsample of candidate roots.
            assert oracle_sqrt_mod(a, m) is None
        else:
            assert got * got % m == a
            # Canonical: no smaller root exists.
            assert all(c * c % m != a for c in range(got))


def test_factorize_reconstructs():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 10**9)
        f = factorize(n)
        prod = 1
        for p, e in f.items():
            assert is_prime(p)
            prod *= p**e
        assert prod == n
    # A semiprime beyond the trial-division bound exercises Brent's method.
    p, q = 1_000_003, 1_000_033
    assert factorize(p * q) == {p: 1, q: 1}

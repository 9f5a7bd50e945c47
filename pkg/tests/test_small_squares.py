"""Tests for cover heights, convergents, and the constructive representation."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from sqavoid.arith import DomainError, TooLarge, sqrt_mod
from sqavoid.progression import SquareWitness
from sqavoid.small_squares import (
    SmallSquareTrace,
    _canonical_sqrt,
    _sqrt_table,
    balanced_n,
    brute_force_small_square,
    construct_small_square,
    convergent_denominators,
    small_square_survey,
    square_cover_height,
)


# ---------------------------------------------------------------- oracles


def oracle_cover_height(k: int) -> int:
    """Direct two-loop definition of the cover height (tiny k only)."""
    if k <= 2:
        return 1
    units = [x for x in range(1, k) if math.gcd(x, k) == 1]
    for h in range(1, k + 1):
        good = True
        for x in units:
            if not any(
                (x - y * z * z) % k == 0
                for y in range(-h, h + 1)
                if y != 0
                for z in range(k)
            ):
                good = False
                break
        if good:
            return h
    raise AssertionError(f"no cover height below {k}")


def oracle_convergents(num: int, den: int) -> list[Fraction]:
    """Convergents rebuilt from the textbook a-sequence with Fractions."""
    a, b = num, den
    terms = []
    while b:
        q = a // b
        terms.append(q)
        a, b = b, a - q * b
    convs = []
    for i in range(len(terms)):
        # Evaluate [a0; a1, ..., ai] bottom-up exactly.
        val = Fraction(terms[i])
        for t in reversed(terms[:i]):
            val = t + (1 / val if val else Fraction(0))
        convs.append(val)
    return convs


def oracle_minimal_representation(q1: int, q2: int, n_cap: int):
    box = q2 * q2
    best = None
    for x1 in range(-box, box + 1):
        for x2 in range(-box, box + 1):
            v = x1 * q1 + x2 * q2
            if v < 1:
                continue
            n = math.isqrt(v)
            if n * n == v and n <= n_cap:
                key = (max(abs(x1), abs(x2)), n, abs(x1), x1 < 0, abs(x2), x2 < 0)
                if best is None or key < best[0]:
                    best = (key, SquareWitness(x1, x2, n))
    return None if best is None else best[1]


# ------------------------------------------------------------ cover height


def test_cover_height_frozen():
    assert square_cover_height(1) == 1
    assert square_cover_height(2) == 1
    assert square_cover_height(5) == 2
    assert square_cover_height(7) == 1
    assert square_cover_height(8) == 3


def test_cover_height_matches_oracle():
    for k in range(1, 42):
        assert square_cover_height(k) == oracle_cover_height(k), k


def test_cover_height_guard():
    with pytest.raises(TooLarge):
        square_cover_height(200_000)
    with pytest.raises(DomainError):
        square_cover_height(0)


def test_cover_height_envelope():
    # Informational envelope: H(k) stays far below 64 * k^(1/4) * log(k+2),
    # checked on the integer side via fourth powers.
    for k in range(1, 800):
        h = square_cover_height(k)
        log_bound = math.log(k + 2)
        assert h**4 <= 64**4 * k * math.ceil(log_bound) ** 4, k


# ------------------------------------------------------------- convergents


def test_convergent_denominators_frozen():
    assert convergent_denominators(3, 5) == [1, 1, 2, 5]
    assert convergent_denominators(0, 1) == [1]
    assert convergent_denominators(1, 1) == [1]
    # pi-like: 355/113's predecessor structure
    assert convergent_denominators(355, 113)[-1] == 113


def test_convergents_match_fraction_oracle():
    rng = random.Random(42)
    for _ in range(300):
        den = rng.randint(1, 10**6)
        num = rng.randint(0, den)
        denoms = convergent_denominators(num, den)
        convs = oracle_convergents(num, den)
        assert [c.denominator for c in convs] == [
            d // math.gcd(d, 1) for d in denoms
        ] or len(convs) == len(denoms)
        # The final convergent is the fraction itself in lowest terms.
        g = math.gcd(num, den) if num else den
        assert denoms[-1] == den // g
        # Denominators ascend (weakly at the first step, strictly after).
        assert all(a <= b for a, b in zip(denoms, denoms[1:]))


def test_dirichlet_guarantee():
    # The largest convergent denominator <= N approximates within 1/N.
    rng = random.Random(1)
    for _ in range(400):
        den = rng.randint(2, 5000)
        num = rng.randint(0, den - 1)
        cap = rng.randint(1, den + 10)
        n = 1
        for h in convergent_denominators(num, den):
            if h > cap:
                break
            n = h
        # dist(n * num/den) <= 1/cap  <=>  min residue * cap <= den
        r = n * num % den
        assert min(r, den - r) * cap <= den, (num, den, cap)


# ------------------------------------------------------------ construction


def test_construct_frozen_5_7():
    tr = construct_small_square(5, 7, 3)
    assert (tr.b, tr.c, tr.c_bar) == (2, 2, 3)
    assert (tr.n, tr.m, tr.approx_d) == (2, -1, 1)
    assert tr.witness == SquareWitness(-2, 2, 2)
    assert -2 * 5 + 2 * 7 == 4


def test_construct_degenerate_step_one():
    tr = construct_small_square(1, 7, 1)
    assert tr.witness == SquareWitness(1, 0, 1)
    assert (tr.b, tr.c, tr.c_bar, tr.n, tr.approx_d) == (1, 0, 0, 1, 0)


def test_construct_large_cap_hits_exact_multiple():
    # Once the cap admits the full denominator q1, the construction can use
    # n = q1 and a zero displacement.
    tr = construct_small_square(12, 35, 100)
    tr.validate(check_cover=True)
    assert 1 <= tr.n <= 100
    assert tr.witness.x1 * 12 + tr.witness.x2 * 35 == tr.n**2


def test_construct_errors():
    with pytest.raises(DomainError):
        construct_small_square(6, 10, 5)
    with pytest.raises(DomainError):
        construct_small_square(5, 7, 0)
    with pytest.raises(DomainError):
        construct_small_square(0, 7, 1)


def test_construct_invariants_random():
    rng = random.Random(20260814)
    count = 0
    while count < 300:
        q1 = rng.randint(1, 300)
        q2 = rng.randint(1, 300)
        if math.gcd(q1, q2) != 1:
            continue
        count += 1
        cap = rng.randint(1, 40)
        tr = construct_small_square(q1, q2, cap)
        tr.validate(check_cover=True)
        w = tr.witness
        assert w.x1 * q1 + w.x2 * q2 == tr.n * tr.n
        assert 1 <= tr.n <= cap
        assert abs(tr.approx_d) * cap <= q1
        # Coefficient envelope: |x2| = |b| * approx_d^2 <= H(q1) * (q1/cap)^2.
        h = square_cover_height(q1)
        assert abs(w.x2) * cap * cap <= h * q1 * q1


def test_canonical_sqrt_routes_agree():
    # Table route vs factored route on every unit of every small modulus.
    for m in range(1, 300):
        for a in range(m):
            if math.gcd(a, m) != 1:
                continue
            assert _canonical_sqrt(a, m) == sqrt_mod(a, m), (a, m)
    _sqrt_table.cache_clear()


# --------------------------------------------------- brute-force existence


def test_brute_force_small_square_frozen():
    w = brute_force_small_square(3, 5, 5)
    assert w == SquareWitness(2, -1, 1)
    assert max(abs(w.x1), abs(w.x2)) == 2


def test_brute_force_small_square_matches_oracle():
    for q1 in range(1, 7):
        for q2 in range(1, 7):
            if math.gcd(q1, q2) != 1:
                continue
            want = oracle_minimal_representation(q1, q2, 5)
            assert brute_force_small_square(q1, q2, 5) == want, (q1, q2)


def test_construction_dominated_by_minimal():
    # The constructive witness can never beat the exhaustive minimizer.
    rng = random.Random(3)
    for _ in range(50):
        q1 = rng.randint(2, 12)
        q2 = rng.randint(2, 12)
        if math.gcd(q1, q2) != 1:
            continue
        cap = rng.randint(2, 10)
        tr = construct_small_square(q1, q2, cap)
        best = brute_force_small_square(q1, q2, cap)
        assert max(abs(best.x1), abs(best.x2)) <= max(
            abs(tr.witness.x1), abs(tr.witness.x2)
        )


# ------------------------------------------------------------- balanced cap


def test_balanced_n_frozen():
    assert balanced_n(16, 16) == 10
    assert balanced_n(1, 1) == 1
    assert balanced_n(4, 9) == 4


def test_balanced_n_is_exact_ceiling():
    rng = random.Random(8)
    for _ in range(300):
        q1 = rng.randint(1, 10**6)
        q2 = rng.randint(1, 10**6)
        n = balanced_n(q1, q2)
        assert n**16 >= q1**9 * q2**4
        assert (n - 1) ** 16 < q1**9 * q2**4


# ------------------------------------------------------------------ survey


def test_survey_small_grid():
    rows = []
    rep = small_square_survey(40, on_row=rows.append)
    want_pairs = sum(
        1
        for q1 in range(2, 41)
        for q2 in range(q1, 41)
        if math.gcd(q1, q2) == 1
    )
    assert rep.pairs == want_pairs == len(rows)
    assert rep.all_ok
    assert rep.max_ratio_x2 < 64.0
    assert rep.max_ratio_x1 < 64.0

"""Tests for the exponent calculus, size windows, and cutoff checks."""

from __future__ import annotations

import math
import random
from fractions import Fraction as F

import pytest

from sqavoid.arith import DomainError, is_perfect_square
from sqavoid.bounds import (
    CaseReport,
    CutoffVerdict,
    ExponentPoint,
    case_exponent,
    cutoff_check,
    exponent_supremum,
    interval_caps,
    n_window,
    n_window_conditions,
    one_d_bound,
)
from sqavoid.progression import SquareWitness


# ---------------------------------------------------------------- oracles


def oracle_one_d(q: int, t: int) -> int:
    """Scan x = 1, 2, ... for the first square multiple of q inside [1, t]."""
    for x in range(1, t // q + 1):
        if is_perfect_square(x * q):
            return x - 1
    return t // q


# ------------------------------------------------------------- 1-d bounds


def test_one_d_bound_frozen():
    assert one_d_bound(12, 1000) == 2  # 3*12 = 36 = 6^2 kills x = 3
    assert one_d_bound(1, 100) == 0
    assert one_d_bound(9973, 10**6) == 100
    with pytest.raises(DomainError):
        one_d_bound(0, 10)


def test_one_d_bound_matches_scan():
    for q in range(1, 300):
        assert one_d_bound(q, 10**4) == oracle_one_d(q, 10**4), q


def test_one_d_bound_below_sqrt():
    rng = random.Random(2)
    for _ in range(500):
        q = rng.randint(1, 10**6)
        t = rng.randint(0, 10**9)
        assert one_d_bound(q, t) <= math.isqrt(t)


def test_interval_caps():
    assert interval_caps(3, 7, 100) == (F(100, 3), F(100, 7))
    with pytest.raises(DomainError):
        interval_caps(3, 7, -1)


# --------------------------------------------------------- case exponents


def test_case_exponent_frozen_supremum_point():
    rep = case_exponent(ExponentPoint(F(16, 27), F(2, 3)))
    assert rep.exponent == F(20, 27)
    assert rep.case_label == "2A1"
    assert rep.case1 == F(2, 3)
    assert rep.case2 == F(20, 27)


def test_case_exponent_frozen_samples():
    rep = case_exponent(ExponentPoint(F(1, 2), F(3, 5)))
    assert rep.case1 == F(7, 10)
    assert rep.case2 == F(20, 27)
    assert rep.exponent == F(20, 27)
    assert rep.case_label == "2B1"

    rep = case_exponent(ExponentPoint(1, 1))
    assert rep.exponent == F(1, 2)
    assert rep.case_label == "1B"
    assert rep.case2 == 0 and rep.case2_label == "2A2"

    rep = case_exponent(ExponentPoint(0, F(4, 7)))
    assert rep.case1 == F(5, 7) and rep.case1_label == "1A"
    assert rep.exponent == F(20, 27)

    # Far corner: everything capped by the interval bounds.
    rep = case_exponent(ExponentPoint(F(9, 10), 1))
    assert rep.case2 == 2 - F(9, 10) - 1 == F(1, 10)


def test_case_exponent_case1_continuous_at_cutoff():
    at = case_exponent(ExponentPoint(F(1, 2), F(4, 7)))
    just_above = case_exponent(ExponentPoint(F(1, 2), F(4, 7) + F(1, 10**6)))
    assert at.case1 == F(5, 7)
    assert abs(just_above.case1 - F(5, 7)) < F(1, 10**5)


def test_exponent_point_validation():
    with pytest.raises(DomainError):
        ExponentPoint(F(2, 3), F(1, 3))  # a > b
    with pytest.raises(DomainError):
        ExponentPoint(F(-1, 3), F(1, 3))


def test_supremum_overall():
    sup, points = exponent_supremum(54)
    assert sup == F(20, 27)
    assert ExponentPoint(F(16, 27), F(2, 3)) in points
    # Resolution-independence: the boundary vertices carry the supremum.
    for res in (27, 28, 31, 108):
        s, pts = exponent_supremum(res)
        assert s == F(20, 27)
        assert ExponentPoint(F(16, 27), F(2, 3)) in pts


def test_supremum_restricted_case1():
    sup, _ = exponent_supremum(54, b_max=F(4, 7), component="case1")
    assert sup == F(5, 7)
    # The other case never exceeds the global supremum on that strip.
    sup2, _ = exponent_supremum(54, b_max=F(4, 7), component="case2")
    assert sup2 == F(20, 27)


def test_supremum_matches_dense_scan():
    # Independent certification on a fine grid: no value above 20/27 and the
    # maximum is attained.
    best = F(0)
    r = 101
    for j in range(r + 1):
        for i in range(j + 1):
            v = case_exponent(ExponentPoint(F(i, r), F(j, r))).exponent
            assert v <= F(20, 27)
            best = max(best, v)
    assert best == F(20, 27)


# ------------------------------------------------------------ size window


def test_n_window_frozen():
    # q1 = q2 = 1: the window reduces to T^(7/54) <= N <= T^(10/27).
    lo, hi = n_window(1, 1, 10**6)
    assert lo == 6  # ceil(10^(42/54)) = ceil(5.995...)
    assert hi == 166  # floor(10^(20/9) / 1) = floor(sqrt(27825.6...))
    assert n_window_conditions(1, 1, 10**6, F(0), lo) == (True, True, True)
    assert n_window_conditions(1, 1, 10**6, F(0), hi) == (True, True, True)
    assert not all(n_window_conditions(1, 1, 10**6, F(0), lo - 1))
    assert not all(n_window_conditions(1, 1, 10**6, F(0), hi + 1))


def test_n_window_membership_exact():
    rng = random.Random(17)
    for _ in range(60):
        t = rng.randint(10**5, 10**8)
        q1 = rng.randint(1, 30)
        q2 = rng.randint(q1, 200)
        win = n_window(q1, q2, t)
        if win is None:
            continue
        lo, hi = win
        assert 1 <= lo <= hi
        for n in {lo, hi, (lo + hi) // 2}:
            assert all(n_window_conditions(q1, q2, t, F(0), n)), (q1, q2, t, n)


def test_n_window_nonempty_in_compatible_region():
    # Points with a + 2b comfortably below 52/27 and b <= 2/3 give room for
    # an integer cap once T is large.
    t = 10**8
    rng = random.Random(23)
    for _ in range(40):
        b = F(rng.randint(0, 60), 100)  # b <= 3/5 < 2/3
        a = F(rng.randint(0, int(min(b * 100, (F(52, 27) - 2 * b - F(1, 5)) * 100))), 100)
        q1 = max(1, int(t ** float(a)))
        q2 = max(q1, int(t ** float(b)))
        assert n_window(q1, q2, t) is not None, (a, b)


def test_n_window_domain():
    with pytest.raises(DomainError):
        n_window(5, 3, 100)
    with pytest.raises(DomainError):
        n_window(1, 1, 10, F(-1, 2))


# ---------------------------------------------------------- cutoff checks


def test_cutoff_check_small_box_vacuous():
    v = cutoff_check(3, 5, 2, 100)
    assert v == CutoffVerdict(True, "cutoff-holds", None)


def test_cutoff_check_witness_in_box_frozen():
    v = cutoff_check(3, 5, 100, 100)
    assert v.ok and v.reason == "witness-in-box"
    assert v.witness == SquareWitness(3, 0, 3)


def test_cutoff_check_survey():
    # Survey over a band of coprime pairs with boxes just above the cutoff;
    # flags are counted and reported, not asserted away.
    flags = 0
    total = 0
    rng = random.Random(31)
    for _ in range(200):
        q1 = rng.randint(2, 200)
        q2 = rng.randint(q1, 200)
        if math.gcd(q1, q2) != 1:
            continue
        total += 1
        big = 9 * math.isqrt(q2) + 9
        v = cutoff_check(q1, q2, big, big)
        assert v.ok == (v.reason != "witness-escapes-box")
        if not v.ok:
            flags += 1
        if v.witness is not None:
            w = v.witness
            assert w.x1 * q1 + w.x2 * q2 == w.n * w.n
    print(f"cutoff survey: {flags} flags out of {total}")
    assert total > 100

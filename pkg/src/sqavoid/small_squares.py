"""Constructive small-square representations x1*q1 + x2*q2 = n^2.

Given coprime steps q1, q2 and a size cap N, the construction produces a
square value with controlled coefficients:

1. scan b = 1, -1, 2, -2, ... coprime to q1 until b*q2 is a quadratic
   residue modulo q1; let c be the canonical (smallest) square root;
2. invert: c_bar = c^{-1} (mod q1);
3. Dirichlet step: among the continued-fraction convergents of c_bar/q1,
   take the largest denominator n <= N; then the nearest-integer residue
   approx_d = n*c_bar + m*q1 satisfies |approx_d| <= q1/N;
4. output x2 = b*approx_d^2 and x1 = (n^2 - b*q2*approx_d^2)/q1, which is
   an exact integer because b*q2*approx_d^2 = (n*c*approx_d... ) = n^2
   modulo q1 by construction.

The scan in step 1 terminates within the *cover height* H(q1): the
smallest h such that every unit modulo q1 is y*z^2 with |y| <= h.  The
resulting coefficients obey |x2| <= |b|*(q1/N)^2 and a matching bound for
x1, which is what makes the representation "small".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .arith import DomainError, NotFound, TooLarge, iroot, mod_inverse, sqrt_mod
from .formats import enc_int
from .progression import SquareWitness

COVER_HEIGHT_GUARD = 100_000
# Below this modulus a cached table of canonical square roots is used;
# above it each root is computed by factoring the modulus.
_SQRT_TABLE_BOUND = 50_000


def square_cover_height(k: int, guard: int = COVER_HEIGHT_GUARD) -> int:
    """Smallest h such that every x coprime to k is y*z^2 (mod k), |y| <= h.

    Only units y and z can contribute to covering a unit x, so the scan
    marks +/- y * (unit squares) for y = 1, 2, ... until all units are
    covered.  By convention the degenerate moduli 1 and 2 give height 1.
    """
    if k < 1:
        raise DomainError(f"modulus must be positive, got {k}")
    if k > guard:
        raise TooLarge(f"cover height guard is {guard}, got modulus {k}")
    if k <= 2:
        return 1
    is_unit = bytearray(k)
    units = 0
    for x in range(1, k):
        if math.gcd(x, k) == 1:
            is_unit[x] = 1
            units += 1
    unit_squares = sorted({z * z % k for z in range(1, k) if is_unit[z]})
    covered = bytearray(k)
    remaining = units
    for h in range(1, k):
        if math.gcd(h, k) != 1:
            continue
        for s in unit_squares:
            for v in (h * s % k, -h * s % k):
                if not covered[v]:
                    covered[v] = 1
                    remaining -= 1
        if remaining == 0:
            return h
    raise NotFound(f"cover scan exhausted for modulus {k}")  # pragma: no cover


@lru_cache(maxsize=4)
def _sqrt_table(m: int) -> dict[int, int]:
    """Canonical square roots modulo m: {z*z % m: smallest such z}."""
    table: dict[int, int] = {}
    for z in range(m):
        table.setdefault(z * z % m, z)
    return table


def _canonical_sqrt(a: int, m: int) -> int | None:
    if m <= _SQRT_TABLE_BOUND:
        return _sqrt_table(m).get(a % m)
    return sqrt_mod(a, m)


def convergent_denominators(num: int, den: int) -> list[int]:
    """Denominators of the continued-fraction convergents of num/den >= 0."""
    if den < 1 or num < 0:
        raise DomainError(f"need num >= 0 and den >= 1, got {num}/{den}")
    denoms: list[int] = []
    h_prev, h = 1, 0  # denominators of the two virtual convergents before a0
    a, b = num, den
    while b:
        q = a // b
        a, b = b, a - q * b
        h_prev, h = h, q * h + h_prev
        denoms.append(h)
    return denoms or [1]


@dataclass(frozen=True)
class SmallSquareTrace:
    """Full audit trail of one constructive representation."""

    q1: int
    q2: int
    n_cap: int
    b: int
    c: int
    c_bar: int
    n: int
    m: int
    approx_d: int
    witness: SquareWitness

    def validate(self, check_cover: bool = False) -> None:
        """Assert every structural invariant of the trace.

        The cover-height bound |b| <= H(q1) is mathematically guaranteed
        but costs O(q1 * H) to confirm, so it is only checked on demand.
        """
        q1, q2, w = self.q1, self.q2, self.witness
        assert math.gcd(self.b, q1) == 1
        assert (self.b * q2 - self.c * self.c) % q1 == 0
        assert 0 <= self.c < max(q1, 1)
        assert (self.c * self.c_bar - 1) % q1 == 0
        assert 1 <= self.n <= self.n_cap
        assert self.approx_d == self.n * self.c_bar + self.m * q1
        assert abs(self.approx_d) * self.n_cap <= q1
        assert w.n == self.n
        assert w.x2 == self.b * self.approx_d**2
        assert w.x1 * q1 + w.x2 * q2 == self.n * self.n
        if check_cover:
            assert abs(self.b) <= square_cover_height(q1)

    def to_json(self) -> dict:
        return {
            "q1": enc_int(self.q1),
            "q2": enc_int(self.q2),
            "n_cap": enc_int(self.n_cap),
            "b": enc_int(self.b),
            "c": enc_int(self.c),
            "c_bar": enc_int(self.c_bar),
            "n": enc_int(self.n),
            "m": enc_int(self.m),
            "approx_d": enc_int(self.approx_d),
            "witness": self.witness.to_json(),
        }


def _scan_b(q1: int, q2: int) -> tuple[int, int]:
    """First b (order 1, -1, 2, -2, ...) with b*q2 a square mod q1, and its root."""
    for mag in range(1, q1 + 2):
        if math.gcd(mag, q1) != 1:
            continue
        for b in (mag, -mag):
            c = _canonical_sqrt(b * q2 % q1, q1)
            if c is not None:
                return b, c
    raise NotFound(f"no admissible b for ({q1}, {q2})")  # pragma: no cover


def construct_small_square(q1: int, q2: int, n_cap: int) -> SmallSquareTrace:
    """Constructive representation with 1 <= n <= n_cap; see module docstring.

    Requires gcd(q1, q2) = 1 and n_cap >= 1.  Every trace invariant is
    asserted before returning.
    """
    if q1 < 1 or q2 < 1:
        raise DomainError(f"steps must be positive, got ({q1}, {q2})")
    if math.gcd(q1, q2) != 1:
        raise DomainError(f"steps must be coprime, got ({q1}, {q2})")
    if n_cap < 1:
        raise DomainError(f"size cap must be positive, got {n_cap}")
    b, c = _scan_b(q1, q2)
    c_bar = mod_inverse(c, q1) if q1 > 1 else 0
    denoms = convergent_denominators(c_bar, q1)
    n = 1
    for h in denoms:
        if h > n_cap:
            break
        n = h
    t = n * c_bar
    q, r = divmod(t, q1)
    m = -q - (1 if 2 * r > q1 else 0)
    approx_d = t + m * q1
    x2 = b * approx_d * approx_d
    num = n * n - b * q2 * approx_d * approx_d
    x1, rem = divmod(num, q1)
    assert rem == 0, "construction must land on a multiple of q1"
    trace = SmallSquareTrace(
        q1, q2, n_cap, b, c, c_bar, n, m, approx_d, SquareWitness(x1, x2, n)
    )
    trace.validate()
    return trace


def brute_force_small_square(q1: int, q2: int, n_cap: int) -> SquareWitness:
    """Minimal-coefficient representation by exhaustive search.

    Minimizes max(|x1|, |x2|) over all x1*q1 + x2*q2 = n^2 with n <= n_cap
    and |x1|, |x2| <= q2**2; ties broken by (n, |x1|, sign, |x2|, sign).
    Independent of the constructive route; intended as a test oracle for
    small inputs.  Raises NotFound if the box contains no representation.
    """
    if math.gcd(q1, q2) != 1:
        raise DomainError(f"steps must be coprime, got ({q1}, {q2})")
    box = q2 * q2
    inv = mod_inverse(q1 % q2, q2) if q2 > 1 else 0
    best: tuple[tuple, SquareWitness] | None = None
    for n in range(1, n_cap + 1):
        nn = n * n
        x0 = (nn % q2) * inv % q2 if q2 > 1 else 0
        first = x0 - q2 * ((x0 + box) // q2)
        for x1 in range(first, box + 1, max(q2, 1)):
            x2 = (nn - x1 * q1) // q2
            if abs(x2) > box:
                continue
            key = (max(abs(x1), abs(x2)), n, abs(x1), x1 < 0, abs(x2), x2 < 0)
            if best is None or key < best[0]:
                best = (key, SquareWitness(x1, x2, n))
    if best is None:
        raise NotFound(f"no representation inside the {box} box for ({q1}, {q2})")
    return best[1]


def balanced_n(q1: int, q2: int) -> int:
    """Smallest N with N**16 >= q1**9 * q2**4, i.e. ceil(q1^(9/16) * q2^(1/4)).

    This choice of size cap balances the two coefficient bounds of the
    construction so that |x2| stays near q1^(1/4) and |x1| near N^2/q1.
    """
    if q1 < 1 or q2 < 1:
        raise DomainError(f"steps must be positive, got ({q1}, {q2})")
    target = q1**9 * q2**4
    r = iroot(target, 16)
    return r if r**16 == target else r + 1


@dataclass
class SurveyReport:
    """Aggregate outcome of a coprime-pair construction survey."""

    pairs: int = 0
    n_in_range: int = 0
    x1_ratio_ok: int = 0
    x2_ratio_ok: int = 0
    max_ratio_x1: float = 0.0
    max_ratio_x2: float = 0.0
    argmax_x1: tuple[int, int] | None = None
    argmax_x2: tuple[int, int] | None = None

    @property
    def all_ok(self) -> bool:
        return self.pairs == self.n_in_range == self.x1_ratio_ok == self.x2_ratio_ok


def _x2_ratio_ok(x2: int, q1: int, n_cap: int, ceiling: int) -> bool:
    # |x2| * N^2 / q1^(9/4) < ceiling, decided by fourth powers.
    return (abs(x2) * n_cap * n_cap) ** 4 < ceiling**4 * q1**9


def _x1_ratio_ok(x1: int, q1: int, q2: int, n_cap: int, ceiling: int) -> bool:
    # |x1| < ceiling * (N^2/q1 + q1^(5/4)*q2/N^2).  Clear q1*N^2, move the
    # rational term left and decide the irrational comparison by 4th powers.
    lhs = abs(x1) * q1 * n_cap * n_cap - ceiling * n_cap**4
    if lhs < 0:
        return True
    return lhs**4 < ceiling**4 * q1**9 * q2**4


def small_square_survey(
    q_max: int,
    *,
    q_min: int = 2,
    ratio_ceiling: int = 64,
    on_row=None,
) -> SurveyReport:
    """Run the construction over every coprime pair q_min <= q1 <= q2 <= q_max.

    Each pair uses the balanced size cap N = balanced_n(q1, q2).  The report
    counts pairs whose n stays within N and whose coefficients stay below
    `ratio_ceiling` times the theoretical envelopes (decided exactly); the
    float ratio fields are display-only.  `on_row` receives
    (q1, q2, N, b, n, x1, x2, ratio_x1, ratio_x2) per pair when given.
    """
    report = SurveyReport()
    for q1 in range(q_min, q_max + 1):
        for q2 in range(q1, q_max + 1):
            if math.gcd(q1, q2) != 1:
                continue
            cap = balanced_n(q1, q2)
            tr = construct_small_square(q1, q2, cap)
            w = tr.witness
            report.pairs += 1
            if 1 <= tr.n <= cap:
                report.n_in_range += 1
            r1 = abs(w.x1) / (cap * cap / q1 + q1**1.25 * q2 / (cap * cap))
            r2 = abs(w.x2) * cap * cap / q1**2.25
            if _x1_ratio_ok(w.x1, q1, q2, cap, ratio_ceiling):
                report.x1_ratio_ok += 1
            if _x2_ratio_ok(w.x2, q1, cap, ratio_ceiling):
                report.x2_ratio_ok += 1
            if r1 > report.max_ratio_x1:
                report.max_ratio_x1, report.argmax_x1 = r1, (q1, q2)
            if r2 > report.max_ratio_x2:
                report.max_ratio_x2, report.argmax_x2 = r2, (q1, q2)
            if on_row is not None:
                on_row((q1, q2, cap, tr.b, tr.n, w.x1, w.x2, r1, r2))
    return report

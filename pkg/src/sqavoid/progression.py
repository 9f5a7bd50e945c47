"""Two-dimensional arithmetic progressions and square witnesses.

A progression is the set of integers x1*q1 + x2*q2 with |x1| <= X1 and
|x2| <= X2, where the steps q1, q2 are positive integers and the radii
X1, X2 are exact non-negative rationals (only their floors matter for
membership).  The central questions are whether such a set is *proper*
(all (x1, x2) pairs give distinct values) and whether it avoids all
non-zero perfect squares up to an ambient bound T.

Witness search runs two independent routes:

* `find_square_witness` walks n = 1, 2, ... and solves the congruence
  x1*q1 = n^2 (mod q2) in the reduced modulus, touching only candidates
  in the admissible residue class;
* `brute_force_witness` enumerates the whole coefficient box.

Both apply the same deterministic tie-break (smallest n, then smallest
|x1|, positive x1 before negative), so their results are comparable
object-for-object.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import DomainError, TooLarge, isqrt, mod_inverse
from .formats import dec_int, dec_rat, enc_int, enc_rat

BRUTE_FORCE_GUARD = 100_000_000
# Values below 2^52 are exactly representable in float64, so the vectorized
# square detector (floor-sqrt plus one-step correction) is exact there.
_NUMPY_VALUE_LIMIT = 1 << 52


@dataclass(frozen=True)
class TwoDAP:
    """Progression {x1*q1 + x2*q2 : |x1| <= x1bound, |x2| <= x2bound}."""

    q1: int
    q2: int
    x1bound: Fraction
    x2bound: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "x1bound", Fraction(self.x1bound))
        object.__setattr__(self, "x2bound", Fraction(self.x2bound))
        if self.q1 < 1 or self.q2 < 1:
            raise DomainError(f"steps must be positive, got ({self.q1}, {self.q2})")
        if self.x1bound < 0 or self.x2bound < 0:
            raise DomainError("radii must be non-negative")

    @property
    def b1(self) -> int:
        """Effective integer radius along q1."""
        return int(self.x1bound)

    @property
    def b2(self) -> int:
        """Effective integer radius along q2."""
        return int(self.x2bound)

    def value_bound(self) -> int:
        """Largest attainable |value|."""
        return self.b1 * self.q1 + self.b2 * self.q2

    def to_json(self) -> dict:
        return {
            "q1": enc_int(self.q1),
            "q2": enc_int(self.q2),
            "x1bound": enc_rat(self.x1bound),
            "x2bound": enc_rat(self.x2bound),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TwoDAP":
        return cls(
            dec_int(obj["q1"]),
            dec_int(obj["q2"]),
            dec_rat(obj["x1bound"]),
            dec_rat(obj["x2bound"]),
        )


@dataclass(frozen=True)
class SquareWitness:
    """Coefficients with x1*q1 + x2*q2 = n^2 for some n >= 1."""

    x1: int
    x2: int
    n: int

    def to_json(self) -> dict:
        return {"x1": enc_int(self.x1), "x2": enc_int(self.x2), "n": enc_int(self.n)}

    @classmethod
    def from_json(cls, obj: dict) -> "SquareWitness":
        return cls(dec_int(obj["x1"]), dec_int(obj["x2"]), dec_int(obj["n"]))


@dataclass(frozen=True)
class Certificate:
    """Outcome of an exhaustive square scan up to n_max."""

    kind: str  # "square_free" or "witness"
    witness: SquareWitness | None
    n_max: int

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "witness": None if self.witness is None else self.witness.to_json(),
            "n_max": enc_int(self.n_max),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Certificate":
        w = obj.get("witness")
        return cls(
            obj["kind"],
            None if w is None else SquareWitness.from_json(w),
            dec_int(obj["n_max"]),
        )


def cardinality(a: TwoDAP) -> int:
    """Number of coefficient pairs, (2*floor(X1)+1) * (2*floor(X2)+1)."""
    return (2 * a.b1 + 1) * (2 * a.b2 + 1)


def is_proper(a: TwoDAP) -> bool:
    """True iff distinct coefficient pairs give distinct values.

    A collision x1*q1 + x2*q2 = y1*q1 + y2*q2 exists iff the minimal
    non-trivial relation (q2/d, -q1/d), d = gcd(q1, q2), fits inside the
    difference box |dx1| <= 2*floor(X1), |dx2| <= 2*floor(X2).
    """
    d = math.gcd(a.q1, a.q2)
    return not (a.q2 // d <= 2 * a.b1 and a.q1 // d <= 2 * a.b2)


def _witness_key(x1: int) -> tuple[int, bool]:
    return (abs(x1), x1 < 0)


def find_square_witness(a: TwoDAP, t: int) -> SquareWitness | None:
    """Smallest-square witness in a, with n^2 <= min(t, value bound).

    Walks n upward; for each n, the admissible x1 form one residue class
    modulo q2/gcd(q1,q2), so only ~2*X1*d/q2 + 1 candidates are touched.
    Tie-break for fixed n: smallest |x1|, then positive x1 first.
    """
    if t < 0:
        raise DomainError(f"ambient bound must be non-negative, got {t}")
    cap = min(t, a.value_bound())
    if cap < 1:
        return None
    q1, q2, b1, b2 = a.q1, a.q2, a.b1, a.b2
    d = math.gcd(q1, q2)
    q1d, q2d = q1 // d, q2 // d
    inv = mod_inverse(q1d % q2d, q2d) if q2d > 1 else 0
    for n in range(1, isqrt(cap) + 1):
        nn = n * n
        if nn % d:
            continue
        k = nn // d
        x0 = (k % q2d) * inv % q2d
        first = x0 - q2d * ((x0 + b1) // q2d)
        best: tuple[tuple[int, bool], int, int] | None = None
        for x1 in range(first, b1 + 1, q2d):
            x2 = (k - x1 * q1d) // q2d
            if -b2 <= x2 <= b2:
                key = _witness_key(x1)
                if best is None or key < best[0]:
                    best = (key, x1, x2)
        if best is not None:
            return SquareWitness(best[1], best[2], n)
    return None


def certify_square_free(a: TwoDAP, t: int) -> Certificate:
    """Exhaustive verdict: a witness, or square-freeness up to min(t, bound)."""
    if t < 0:
        raise DomainError(f"ambient bound must be non-negative, got {t}")
    cap = min(t, a.value_bound())
    n_max = isqrt(cap) if cap >= 0 else 0
    w = find_square_witness(a, t)
    if w is None:
        return Certificate("square_free", None, n_max)
    return Certificate("witness", w, n_max)


def _brute_force_numpy(a: TwoDAP, cap: int) -> SquareWitness | None:
    x1 = np.arange(-a.b1, a.b1 + 1, dtype=np.int64)
    x2 = np.arange(-a.b2, a.b2 + 1, dtype=np.int64)
    vals = x1[:, None] * a.q1 + x2[None, :] * a.q2
    in_range = (vals >= 1) & (vals <= cap)
    safe = np.where(in_range, vals, 1)
    s = np.floor(np.sqrt(safe.astype(np.float64))).astype(np.int64)
    s = np.where((s + 1) * (s + 1) <= safe, s + 1, s)
    s = np.where(s * s > safe, s - 1, s)
    hits = in_range & (s * s == safe)
    if not hits.any():
        return None
    i, j = np.nonzero(hits)
    nvals = s[i, j]
    x1v = x1[i]
    order = np.lexsort((x1v < 0, np.abs(x1v), nvals))
    k = order[0]
    return SquareWitness(int(x1v[k]), int(x2[j][k]), int(nvals[k]))


def brute_force_witness(
    a: TwoDAP, t: int | None = None, guard: int = BRUTE_FORCE_GUARD
) -> SquareWitness | None:
    """Independent oracle: enumerate the whole box and pick the minimal witness.

    Applies the same tie-break as `find_square_witness` ((n, |x1|, sign of
    x1)).  If t is omitted the full value bound is searched.  Refuses boxes
    with more than `guard` coefficient pairs.
    """
    if cardinality(a) > guard:
        raise TooLarge(f"box has {cardinality(a)} pairs, guard is {guard}")
    cap = a.value_bound() if t is None else min(t, a.value_bound())
    if cap < 1:
        return None
    if cap < _NUMPY_VALUE_LIMIT and cardinality(a) >= 512:
        return _brute_force_numpy(a, cap)
    best: tuple[tuple[int, int, bool], SquareWitness] | None = None
    for x1 in range(-a.b1, a.b1 + 1):
        for x2 in range(-a.b2, a.b2 + 1):
            v = x1 * a.q1 + x2 * a.q2
            if 1 <= v <= cap:
                r = isqrt(v)
                if r * r == v:
                    key = (r, abs(x1), x1 < 0)
                    if best is None or key < best[0]:
                        best = (key, SquareWitness(x1, x2, r))
    return None if best is None else best[1]

"""Congruence lattices and gcd-driven reduction of progressions.

When d = gcd(q1, q2) >= 2, square values x1*q1 + x2*q2 = n^2 force d | n,
so the progression collapses onto the sublattice

    L = {(x1, x2) : x1*(q1/d) + x2*(q2/d) = 0 (mod d)},   det L = d.

Stretching coordinates by the box aspect ratio U = X2/X1 turns the box
into a square; the successive minima lambda1 <= lambda2 of the gauge

    g(x) = max(|x1| * U^(1/2), |x2| * U^(-1/2))

then produce a basis u, v of L whose integer combinations a1*u + a2*v
with |a_i| <= Xt_i := X1*U^(1/2)/(2*lambda_i) stay inside the original
box.  Values transform as d^2 * (a1*p1 + a2*p2) with p_i = (u_i . qt)/d,
giving a smaller progression with ambient bound T/d^2.

All gauge comparisons are decided on the squared, denominator-cleared
side: with U = un/ud, the integer quantity max(x1^2*un^2, x2^2*ud^2)
equals un*ud*g(x)^2, so verdicts never touch irrational numbers.  The
second Minkowski theorem pins d/2 <= lambda1*lambda2 <= d exactly (the
gauge ball has volume 4), which is asserted on every computation.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .arith import DomainError, TooLarge, isqrt
from .formats import enc_int, enc_rat
from .progression import (
    TwoDAP,
    brute_force_witness,
    is_proper,
)

F = Fraction

_ENUM_GUARD = 2_000_000


@dataclass(frozen=True)
class Lattice2:
    """Rank-2 integer lattice from a congruence, with HNF basis rows."""

    d: int
    qt1: int
    qt2: int
    rows: tuple[tuple[int, int], tuple[int, int]]

    def contains(self, x1: int, x2: int) -> bool:
        return (x1 * self.qt1 + x2 * self.qt2) % self.d == 0


def _hnf_from_generators(
    gens: list[tuple[int, int]]
) -> tuple[tuple[int, int], tuple[int, int]]:
    """Upper-triangular HNF rows (h11, h12), (0, h22) of the generated lattice."""
    # Combine generators to realize gcd of first coordinates.
    g, vec = 0, (0, 0)
    for a, b in gens:
        if a == 0:
            continue
        gg, x, y = _xgcd(g, a)
        vec = (x * vec[0] + y * a, x * vec[1] + y * b)
        g = gg
    h11 = abs(g)
    if g < 0:
        vec = (-vec[0], -vec[1])
    # Eliminate first coordinates; collect what remains in the second.
    seconds = []
    for a, b in gens:
        if h11:
            k = a // h11
            a, b = a - k * vec[0], b - k * vec[1]
        assert a == 0
        if b:
            seconds.append(abs(b))
    h22 = math.gcd(*seconds) if seconds else 0
    if h11 == 0 or h22 == 0:
        raise DomainError("generators do not span a rank-2 lattice")
    h12 = vec[1] % h22
    return ((h11, h12), (0, h22))


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def congruence_lattice(d: int, qt1: int, qt2: int) -> Lattice2:
    """The lattice {x : x1*qt1 + x2*qt2 = 0 (mod d)}; has determinant d.

    Requires d >= 1 and gcd(qt1, qt2, d) = 1 (so the congruence map is
    surjective and the index is exactly d).
    """
    if d < 1:
        raise DomainError(f"modulus must be positive, got {d}")
    if math.gcd(qt1, qt2, d) != 1:
        raise DomainError(
            f"need gcd(qt1, qt2, d) = 1, got gcd({qt1}, {qt2}, {d}) > 1"
        )
    rows = _hnf_from_generators([(d, 0), (0, d), (qt2, -qt1)])
    lat = Lattice2(d, qt1, qt2, rows)
    assert rows[0][0] * rows[1][1] == d, "HNF determinant must equal d"
    assert lat.contains(*rows[0]) and lat.contains(*rows[1])
    return lat


# ------------------------------------------------------------ gauge minima


def _normalize_sign(x1: int, x2: int) -> tuple[int, int]:
    """Flip the vector so its first non-zero coordinate is positive."""
    if x1 < 0 or (x1 == 0 and x2 < 0):
        return -x1, -x2
    return x1, x2


def _candidate_key(x1: int, x2: int, un: int, ud: int) -> tuple:
    gsq = max(x1 * x1 * un * un, x2 * x2 * ud * ud)
    return (gsq, abs(x1), abs(x2), x2 < 0)


def _gauss_reduce(
    rows: tuple[tuple[int, int], tuple[int, int]], un: int, ud: int
) -> tuple[tuple[int, int], tuple[int, int]]:
    """Lagrange reduction under the quadratic form un^2*x1^2 + ud^2*x2^2."""

    def q(v):
        return un * un * v[0] * v[0] + ud * ud * v[1] * v[1]

    def ip(v, w):
        return un * un * v[0] * w[0] + ud * ud * v[1] * w[1]

    b1, b2 = rows
    if q(b1) > q(b2):
        b1, b2 = b2, b1
    while True:
        mu = round(F(ip(b1, b2), q(b1)))
        b2 = (b2[0] - mu * b1[0], b2[1] - mu * b1[1])
        if q(b2) < q(b1):
            b1, b2 = b2, b1
        else:
            return b1, b2


def box_minima(
    lat: Lattice2, u_ratio: Fraction
) -> tuple[tuple[Fraction, tuple[int, int]], tuple[Fraction, tuple[int, int]]]:
    """Successive minima of the U-scaled box gauge over lat, with attainers.

    Returns ((lambda1^2, u), (lambda2^2, v)): the squared gauges are exact
    rationals, u attains the first minimum, and v the second (minimal over
    vectors independent of u).  Attainers are sign-normalized and chosen by
    the deterministic key (g^2, |x1|, |x2|, sign of x2).
    """
    u_ratio = F(u_ratio)
    if u_ratio <= 0:
        raise DomainError(f"aspect ratio must be positive, got {u_ratio}")
    un, ud = u_ratio.numerator, u_ratio.denominator
    (h11, h12), (_, h22) = lat.rows
    b1, b2 = _gauss_reduce(lat.rows, un, ud)
    cap = max(
        _candidate_key(*b1, un, ud)[0], _candidate_key(*b2, un, ud)[0]
    )  # >= scaled lambda2^2, so every minima attainer lies below it

    cands: list[tuple[tuple, tuple[int, int]]] = []
    s = 0
    while True:
        x1 = s * h11
        if s and x1 * x1 * un * un > cap:
            break
        if s == 0:
            pts = [(0, h22)]
        else:
            t0 = (-s * h12) // h22
            pts = [
                _normalize_sign(x1, s * h12 + t * h22)
                for t in (t0 - 1, t0, t0 + 1, t0 + 2)
            ]
        for p in pts:
            if p != (0, 0):
                cands.append((_candidate_key(*p, un, ud), p))
        s += 1
        if s > 10_000_000:  # pragma: no cover
            raise TooLarge("minima search exploded; malformed lattice?")
    cands.sort()
    key1, u = cands[0]
    v = None
    key2 = None
    for key, p in cands[1:]:
        if u[0] * p[1] - u[1] * p[0] != 0:
            key2, v = key, p
            break
    assert v is not None and key2 is not None, "lattice must contain 2 minima"
    scale = un * ud
    lam1_sq, lam2_sq = F(key1[0], scale), F(key2[0], scale)
    # Second Minkowski theorem for the volume-4 gauge ball, both sides.
    prod_sq = lam1_sq * lam2_sq
    assert 4 * prod_sq >= lat.d * lat.d, "Minkowski lower bound violated"
    assert prod_sq <= lat.d * lat.d, "Minkowski upper bound violated"
    return (lam1_sq, u), (lam2_sq, v)


def enumerate_gauge_ball(
    lat: Lattice2, u_ratio: Fraction, gsq_bound: Fraction
) -> list[tuple[int, int]]:
    """All non-zero lattice points with g(x)^2 <= gsq_bound, sign-normalized,
    sorted by the minima key.  Independent certification route for
    `box_minima`; guarded against oversized balls.
    """
    u_ratio = F(u_ratio)
    un, ud = u_ratio.numerator, u_ratio.denominator
    bound_scaled = F(gsq_bound) * un * ud
    (h11, h12), (_, h22) = lat.rows
    out = []
    s = 0
    while True:
        x1 = s * h11
        if x1 * x1 * un * un > bound_scaled:
            break
        # |x2| <= sqrt(bound_scaled)/ud, over the class x2 = s*h12 (mod h22).
        x2cap_num = int(bound_scaled / (ud * ud))
        x2cap = isqrt(x2cap_num)
        while (x2cap + 1) ** 2 * ud * ud <= bound_scaled:
            x2cap += 1
        t_lo = -(x2cap + s * h12) // h22
        t_hi = (x2cap - s * h12) // h22
        if t_hi - t_lo > _ENUM_GUARD or len(out) > _ENUM_GUARD:
            raise TooLarge("gauge ball enumeration exceeds guard")
        for t in range(t_lo, t_hi + 1):
            p = _normalize_sign(x1, s * h12 + t * h22)
            if p == (0, 0):
                continue
            if max(p[0] ** 2 * un * un, p[1] ** 2 * ud * ud) <= bound_scaled:
                out.append(p)
        s += 1
    out = sorted(set(out), key=lambda p: _candidate_key(*p, un, ud))
    return out


# ---------------------------------------------------------- reduction step


@dataclass(frozen=True)
class ReductionStep:
    """One reduction event: a gcd divide-out or a full lattice step.

    All quantities live in the post-swap frame where x1bound <= x2bound
    (`swapped` records whether the incoming coordinates were exchanged).
    For mode "divide_out" the substitution is x_i = d*a_i, so u, v are the
    scaled unit vectors and the lambda fields are None.
    """

    mode: str  # "lattice" | "divide_out"
    swapped: bool
    d: int
    qt1: int
    qt2: int
    u_ratio: Fraction
    lam1_sq: Fraction | None
    lam2_sq: Fraction | None
    u: tuple[int, int]
    v: tuple[int, int]
    p1: int
    p2: int
    xt1_sq: Fraction
    xt2_sq: Fraction
    xt1_floor: int
    xt2_floor: int

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "swapped": self.swapped,
            "d": enc_int(self.d),
            "qt1": enc_int(self.qt1),
            "qt2": enc_int(self.qt2),
            "u_ratio": enc_rat(self.u_ratio),
            "lam1_sq": None if self.lam1_sq is None else enc_rat(self.lam1_sq),
            "lam2_sq": None if self.lam2_sq is None else enc_rat(self.lam2_sq),
            "u": [enc_int(self.u[0]), enc_int(self.u[1])],
            "v": [enc_int(self.v[0]), enc_int(self.v[1])],
            "p1": enc_int(self.p1),
            "p2": enc_int(self.p2),
            "xt1_sq": enc_rat(self.xt1_sq),
            "xt2_sq": enc_rat(self.xt2_sq),
            "xt1_floor": enc_int(self.xt1_floor),
            "xt2_floor": enc_int(self.xt2_floor),
        }


def _floor_sqrt_fraction(x: Fraction) -> int:
    """Largest integer k >= 0 with k*k <= x."""
    if x < 0:
        raise DomainError("negative value has no real square root")
    k = isqrt(x.numerator // x.denominator)
    while F((k + 1) * (k + 1)) <= x:
        k += 1
    while k > 0 and F(k * k) > x:
        k -= 1
    return k


def reduce_step(
    q1: int, q2: int, x1bound: Fraction, x2bound: Fraction
) -> ReductionStep:
    """Full lattice reduction of a progression with d = gcd(q1, q2) >= 2.

    Requires both radii >= 1.  Coordinates are swapped if needed so the
    aspect ratio U = X2/X1 is >= 1; the returned step records the swap.
    """
    x1b, x2b = F(x1bound), F(x2bound)
    if q1 < 1 or q2 < 1:
        raise DomainError(f"steps must be positive, got ({q1}, {q2})")
    d = math.gcd(q1, q2)
    if d < 2:
        raise DomainError(f"lattice step needs gcd >= 2, got {d}")
    if x1b < 1 or x2b < 1:
        raise DomainError("lattice step needs both radii >= 1")
    swapped = x1b > x2b
    if swapped:
        q1, q2, x1b, x2b = q2, q1, x2b, x1b
    qt1, qt2 = q1 // d, q2 // d
    u_ratio = x2b / x1b
    lat = congruence_lattice(d, qt1, qt2)
    (lam1_sq, u), (lam2_sq, v) = box_minima(lat, u_ratio)
    p1, r1 = divmod(u[0] * qt1 + u[1] * qt2, d)
    p2, r2 = divmod(v[0] * qt1 + v[1] * qt2, d)
    assert r1 == 0 and r2 == 0, "attainers must satisfy the congruence"
    # Xt_i^2 = (X1 * X2) / (4 * lambda_i^2), an exact rational.
    area = x1b * x2b
    xt1_sq = area / (4 * lam1_sq)
    xt2_sq = area / (4 * lam2_sq)
    return ReductionStep(
        "lattice",
        swapped,
        d,
        qt1,
        qt2,
        u_ratio,
        lam1_sq,
        lam2_sq,
        u,
        v,
        p1,
        p2,
        xt1_sq,
        xt2_sq,
        _floor_sqrt_fraction(xt1_sq),
        _floor_sqrt_fraction(xt2_sq),
    )


def divide_out_step(
    q1: int, q2: int, x1bound: Fraction, x2bound: Fraction
) -> ReductionStep:
    """Crude reduction x_i = d*a_i for small d: steps q_i/d, radii X_i/d."""
    x1b, x2b = F(x1bound), F(x2bound)
    d = math.gcd(q1, q2)
    if d < 2:
        raise DomainError(f"divide-out needs gcd >= 2, got {d}")
    if x1b < d or x2b < d:
        raise DomainError("divide-out needs both radii >= d")
    qt1, qt2 = q1 // d, q2 // d
    xt1, xt2 = x1b / d, x2b / d
    return ReductionStep(
        "divide_out",
        False,
        d,
        qt1,
        qt2,
        x2b / x1b,
        None,
        None,
        (d, 0),
        (0, d),
        qt1,
        qt2,
        xt1 * xt1,
        xt2 * xt2,
        int(xt1),
        int(xt2),
    )


def _exact_sqrt_fraction(x: Fraction) -> Fraction:
    r = F(isqrt(x.numerator), isqrt(x.denominator))
    assert r * r == x, "expected an exact square of a rational"
    return r


def derived_instance(step: ReductionStep) -> tuple[TwoDAP, int]:
    """Progression reachable after the step, and the value scale d^2.

    Values of the derived progression, multiplied by d^2, are values of
    the original.  Divide-out steps keep exact (possibly fractional)
    radii; lattice steps use the integer coefficient box, i.e. the
    floors.  A zero p_i (possible on improper inputs) contributes nothing
    to the value set, so that axis is normalized to step 1 with radius 0.
    """
    if step.mode == "divide_out":
        return (
            TwoDAP(
                step.qt1,
                step.qt2,
                _exact_sqrt_fraction(step.xt1_sq),
                _exact_sqrt_fraction(step.xt2_sq),
            ),
            step.d * step.d,
        )
    p1, p2 = abs(step.p1), abs(step.p2)
    b1 = step.xt1_floor if p1 else 0
    b2 = step.xt2_floor if p2 else 0
    return TwoDAP(max(p1, 1), max(p2, 1), b1, b2), step.d * step.d


@dataclass(frozen=True)
class ReductionVerdict:
    ok: bool
    checks: tuple[tuple[str, bool, str], ...]


def verify_reduction(
    step: ReductionStep,
    a: TwoDAP,
    t: int,
    rng: random.Random | None = None,
) -> ReductionVerdict:
    """Independent replay of every claim a ReductionStep makes about a.

    Checks structural consistency, re-certifies the minima by exhaustive
    gauge-ball enumeration, confirms the Minkowski window, verifies the
    embedding on all corners plus 100 seeded interior points, and confirms
    that properness and square-avoidance (within brute-force guards)
    transfer to the derived instance.
    """
    rng = rng or random.Random(0)
    checks: list[tuple[str, bool, str]] = []

    def record(name: str, ok: bool, detail: str = "") -> None:
        checks.append((name, ok, detail))

    d = math.gcd(a.q1, a.q2)
    q1, q2, x1b, x2b = a.q1, a.q2, a.x1bound, a.x2bound
    if step.swapped:
        q1, q2, x1b, x2b = q2, q1, x2b, x1b
    record(
        "frame",
        x1b > 0 and d == step.d and (q1 // d, q2 // d) == (step.qt1, step.qt2)
        and step.u_ratio == x2b / x1b and d >= 2,
        f"d={d}",
    )
    okc = (step.u[0] * step.qt1 + step.u[1] * step.qt2) % step.d == 0
    okc &= (step.v[0] * step.qt1 + step.v[1] * step.qt2) % step.d == 0
    okc &= step.u[0] * step.v[1] - step.u[1] * step.v[0] != 0
    okc &= step.p1 * step.d == step.u[0] * step.qt1 + step.u[1] * step.qt2
    okc &= step.p2 * step.d == step.v[0] * step.qt1 + step.v[1] * step.qt2
    record("attainers-in-lattice", okc)

    if step.mode == "lattice":
        lat = congruence_lattice(step.d, step.qt1, step.qt2)
        ball = enumerate_gauge_ball(lat, step.u_ratio, step.lam2_sq)
        un, ud = step.u_ratio.numerator, step.u_ratio.denominator
        ok_min = bool(ball) and ball[0] == step.u
        gsq = {p: F(max(p[0] ** 2 * un * un, p[1] ** 2 * ud * ud), un * ud) for p in ball}
        ok_min &= all(g >= step.lam1_sq for g in gsq.values())
        indep = [p for p in ball if step.u[0] * p[1] - step.u[1] * p[0] != 0]
        ok_min &= bool(indep) and indep[0] == step.v
        ok_min &= all(gsq[p] >= step.lam2_sq for p in indep)
        record("minima-certified", ok_min, f"ball={len(ball)}")
        prod = step.lam1_sq * step.lam2_sq
        record(
            "minkowski-window",
            4 * prod >= step.d**2 and prod <= step.d**2,
            f"lam1^2*lam2^2={prod}",
        )
        record(
            "radii-formula",
            step.xt1_sq * 4 * step.lam1_sq == x1b * x2b
            and step.xt2_sq * 4 * step.lam2_sq == x1b * x2b,
        )
    else:
        record(
            "divide-out-shape",
            step.u == (step.d, 0) and step.v == (0, step.d)
            and (step.p1, step.p2) == (step.qt1, step.qt2)
            and step.xt1_sq == (x1b / step.d) ** 2
            and step.xt2_sq == (x2b / step.d) ** 2,
        )
    ok_fl = (
        step.xt1_floor**2 <= step.xt1_sq < (step.xt1_floor + 1) ** 2
        and step.xt2_floor**2 <= step.xt2_sq < (step.xt2_floor + 1) ** 2
    )
    record("floors", ok_fl)

    # Embedding: corners and seeded interior points of the derived box.
    b1t, b2t = step.xt1_floor, step.xt2_floor
    pts = {(s1 * b1t, s2 * b2t) for s1 in (-1, 0, 1) for s2 in (-1, 0, 1)}
    for _ in range(100):
        pts.add((rng.randint(-b1t, b1t), rng.randint(-b2t, b2t)))
    ok_emb = True
    for a1, a2 in pts:
        y1 = a1 * step.u[0] + a2 * step.v[0]
        y2 = a1 * step.u[1] + a2 * step.v[1]
        if abs(y1) > x1b or abs(y2) > x2b:
            ok_emb = False
            break
        if y1 * q1 + y2 * q2 != step.d**2 * (a1 * step.p1 + a2 * step.p2):
            ok_emb = False
            break
    record("embedding", ok_emb, f"{len(pts)} points")

    derived, scale = derived_instance(step)
    if is_proper(a):
        record("properness-transfer", is_proper(derived))
    else:
        record("properness-transfer", True, "input improper; vacuous")

    try:
        w = brute_force_witness(a, t)
        if w is not None:
            record("square-transfer", True, "input has a square; vacuous")
        else:
            wd = brute_force_witness(derived, t // (step.d**2))
            record(
                "square-transfer",
                wd is None,
                "" if wd is None else f"derived witness {wd}",
            )
    except TooLarge:
        record("square-transfer", True, "box beyond brute-force guard; skipped")

    return ReductionVerdict(all(ok for _, ok, _ in checks), tuple(checks))


# ------------------------------------------------------------- recursion


@dataclass(frozen=True)
class ReductionChain:
    """Sequence of reduction steps with the terminal instance and reason."""

    steps: tuple[ReductionStep, ...]
    termination: str  # "coprime" | "large-gcd" | "small-box" | "one-dimensional"
    final_q1: int
    final_q2: int
    final_x1bound: Fraction
    final_x2bound: Fraction
    final_t: int

    def __iter__(self):
        return iter(self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __getitem__(self, i):
        return self.steps[i]


def _ceil_sqrt(t: int) -> int:
    r = isqrt(t)
    return r if r * r == t else r + 1


def reduce_recursive(
    q1: int,
    q2: int,
    x1bound: Fraction,
    x2bound: Fraction,
    t: int,
    *,
    c0: int = 16,
) -> ReductionChain:
    """Drive the reduction until the gcd is gone or a terminal case is hit.

    Case analysis on d = gcd(q1, q2) at each stage:

    * d = 1: stop ("coprime"); no reduction applies.
    * d <= c0 (small): divide out d when both radii reach d, else stop
      ("small-box": the box is so flat the one-dimensional bound applies).
    * d >= ceil(sqrt(T)): stop ("large-gcd"): for proper inputs one radius
      is already below the complementary reduced step.
    * otherwise: a full lattice step, recursing on the derived instance
      with ambient bound T // d^2.

    The ambient bound shrinks by d^2 >= 4 per step, so the chain is finite.
    """
    if t < 0:
        raise DomainError(f"ambient bound must be non-negative, got {t}")
    x1b, x2b = F(x1bound), F(x2bound)
    steps: list[ReductionStep] = []
    while True:
        d = math.gcd(q1, q2)
        if d == 1:
            term = "coprime"
            break
        if d <= c0:
            if x1b >= d and x2b >= d:
                step = divide_out_step(q1, q2, x1b, x2b)
                steps.append(step)
                q1, q2 = step.qt1, step.qt2
                x1b, x2b = x1b / d, x2b / d
                t //= d * d
                continue
            term = "small-box"
            break
        if d >= _ceil_sqrt(t):
            term = "large-gcd"
            break
        if x1b < 1 or x2b < 1:
            term = "one-dimensional"
            break
        step = reduce_step(q1, q2, x1b, x2b)
        steps.append(step)
        derived, _ = derived_instance(step)
        q1, q2 = derived.q1, derived.q2
        x1b, x2b = derived.x1bound, derived.x2bound
        t //= d * d
    return ReductionChain(tuple(steps), term, q1, q2, x1b, x2b, t)

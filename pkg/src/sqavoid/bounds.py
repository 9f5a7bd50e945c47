"""Exponent calculus for the size of square-avoiding progressions.

Write q1 = T^a and q2 = T^b with 0 <= a <= b <= 1.  For each exponent
point (a, b) the product X1*X2 of admissible radii is bounded by T^e for
a piecewise-linear exponent e(a, b) assembled from five elementary
mechanisms:

* interval-cap        X_i <= T / q_i (the set lives in [-T, T]);
* one-dim-square      a one-dimensional progression avoiding squares
                      has radius below sqrt(T) (see `one_d_bound`);
* small-side-cutoff   X1 <= sqrt(q2) or X2 <= sqrt(q2), else the
                      constructive representation lands in the box;
* rep-window          the constructive small-square family, optimized
                      over the admissible window of size caps N;
* tuned-rep-product   the same family at the balanced cap
                      N ~ q1^(9/16) * q2^(1/4).

The two top-level cases condition on which side the cutoff kills; the
final exponent is the max of the two case bounds, with global supremum
exactly 20/27 attained at (a, b) = (16/27, 2/3).  All values are exact
`fractions.Fraction`s; the suprema are certified by evaluating on a grid
together with every pairwise intersection of the boundary lines, which
covers all vertices of the linearity regions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import DomainError, iroot
from .small_squares import SmallSquareTrace, balanced_n, construct_small_square
from .progression import SquareWitness

F = Fraction


def one_d_bound(q: int, t: int) -> int:
    """Largest radius B such that {x*q : 1 <= x <= B} avoids squares in [1, t].

    The first square multiple of q is s(q)*q where s(q) is the squarefree
    kernel, so B = min(floor(t/q), s(q) - 1).
    """
    if q < 1:
        raise DomainError(f"step must be positive, got {q}")
    if t < 0:
        raise DomainError(f"ambient bound must be non-negative, got {t}")
    from .arith import squarefree_kernel

    return min(t // q, squarefree_kernel(q) - 1)


def interval_caps(q1: int, q2: int, t: int) -> tuple[Fraction, Fraction]:
    """Trivial radii caps (T/q1, T/q2) for a progression inside [-T, T]."""
    if q1 < 1 or q2 < 1:
        raise DomainError(f"steps must be positive, got ({q1}, {q2})")
    if t < 0:
        raise DomainError(f"ambient bound must be non-negative, got {t}")
    return (F(t, q1), F(t, q2))


@dataclass(frozen=True)
class ExponentPoint:
    """Normalized step sizes (a, b) = (log_T q1, log_T q2), 0 <= a <= b <= 1."""

    a: Fraction
    b: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", F(self.a))
        object.__setattr__(self, "b", F(self.b))
        if not (0 <= self.a <= self.b <= 1):
            raise DomainError(f"need 0 <= a <= b <= 1, got ({self.a}, {self.b})")


@dataclass(frozen=True)
class CaseReport:
    """Exponent bound at one point, with both case values and their labels."""

    point: ExponentPoint
    case1: Fraction
    case1_label: str
    case2: Fraction
    case2_label: str
    exponent: Fraction
    case_label: str
    constituents: tuple[str, ...]


_CONSTITUENTS = {
    "1A": ("small-side-cutoff", "rep-window-swapped", "interval-cap"),
    "1B": ("small-side-cutoff", "interval-cap"),
    "2A1": ("small-side-cutoff", "tuned-rep-product"),
    "2A2": ("interval-cap", "interval-cap"),
    "2B1": ("small-side-cutoff", "rep-window", "interval-cap"),
    "2B2": ("small-side-cutoff", "interval-cap"),
}


def case_exponent(point: ExponentPoint) -> CaseReport:
    """Piecewise-linear exponent bound at (a, b); all arithmetic exact.

    Case 1 assumes the cutoff bounds X1; Case 2 assumes it bounds X2; the
    worst case (max) governs.  Ties inside the Case-2 min go to the tuned
    product ("2A1"); ties between the cases go to Case 1.
    """
    a, b = point.a, point.b
    # Case 1: X1 below the cutoff.
    if b <= F(4, 7):
        case1, lab1 = F(5, 7), "1A"
    else:
        case1, lab1 = 1 - b / 2, "1B"
    # Case 2: X2 below the cutoff.
    if b >= F(2, 3):
        t1 = 1 + a / 8 - b / 2
        t2 = 2 - a - b
        if t1 <= t2:
            case2, lab2 = t1, "2A1"
        else:
            case2, lab2 = t2, "2A2"
    elif a + 2 * b <= F(52, 27):
        case2, lab2 = F(20, 27), "2B1"
    else:
        case2, lab2 = 1 - a + b / 2, "2B2"
    if case2 > case1:
        exponent, label = case2, lab2
    else:
        exponent, label = case1, lab1
    return CaseReport(
        point, case1, lab1, case2, lab2, exponent, label, _CONSTITUENTS[label]
    )


# Boundary lines of the linearity regions, as A*a + B*b = C.
_BOUNDARY_LINES: tuple[tuple[Fraction, Fraction, Fraction], ...] = (
    (F(0), F(1), F(4, 7)),   # cutoff switch of case 1
    (F(0), F(1), F(2, 3)),   # cutoff switch of case 2
    (F(1), F(0), F(16, 27)), # tuned-product crossover at b = 2/3
    (F(1), F(2), F(52, 27)), # window-compatibility boundary
    (F(9), F(4), F(8)),      # tuned product = double interval-cap
    (F(1), F(-1), F(0)),     # simplex edge a = b
    (F(1), F(0), F(0)),      # simplex edge a = 0
    (F(0), F(1), F(1)),      # simplex edge b = 1
)


def _boundary_vertices() -> list[ExponentPoint]:
    pts = []
    lines = _BOUNDARY_LINES
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            a1, b1, c1 = lines[i]
            a2, b2, c2 = lines[j]
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            a = (c1 * b2 - c2 * b1) / det
            b = (a1 * c2 - a2 * c1) / det
            if 0 <= a <= b <= 1:
                pts.append(ExponentPoint(a, b))
    return pts


def exponent_supremum(
    resolution: int,
    *,
    b_max: Fraction | None = None,
    component: str = "overall",
) -> tuple[Fraction, list[ExponentPoint]]:
    """Exact supremum of the exponent over the simplex 0 <= a <= b <= 1.

    Evaluates on the grid {(i/r, j/r)} joined with every pairwise
    intersection of the boundary lines; since the bound is linear on each
    region cut out by those lines, the supremum over this finite set equals
    the supremum over the full simplex.  `b_max` restricts to b <= b_max;
    `component` selects "overall", "case1", or "case2".  Returns the
    supremum and the sorted list of evaluated points attaining it.
    """
    if resolution < 1:
        raise DomainError(f"resolution must be positive, got {resolution}")
    if component not in ("overall", "case1", "case2"):
        raise DomainError(f"unknown component {component!r}")
    pts: set[ExponentPoint] = set()
    for j in range(resolution + 1):
        for i in range(j + 1):
            pts.add(ExponentPoint(F(i, resolution), F(j, resolution)))
    pts.update(_boundary_vertices())
    if b_max is not None:
        pts = {p for p in pts if p.b <= b_max}
    best: Fraction | None = None
    attaining: list[ExponentPoint] = []
    for p in sorted(pts, key=lambda p: (p.a, p.b)):
        rep = case_exponent(p)
        val = {"overall": rep.exponent, "case1": rep.case1, "case2": rep.case2}[
            component
        ]
        if best is None or val > best:
            best, attaining = val, [p]
        elif val == best:
            attaining.append(p)
    assert best is not None
    return best, attaining


# ------------------------------------------------------------ size windows


def _power_product(pairs: list[tuple[int, Fraction]]) -> tuple[int, int, int]:
    """Represent prod base^exp as (A, B, K) with the value equal to (A/B)^(1/K)."""
    k = math.lcm(*(F(e).denominator for _, e in pairs)) if pairs else 1
    num = den = 1
    for base, e in pairs:
        e = F(e)
        power = abs(e.numerator) * (k // e.denominator)
        if e >= 0:
            num *= base**power
        else:
            den *= base**power
    return num, den, k


def _floor_root_ratio(a: int, b: int, k: int) -> int:
    """Largest integer r >= 0 with r**k * b <= a."""
    r = iroot(a // b, k)
    while (r + 1) ** k * b <= a:
        r += 1
    while r > 0 and r**k * b > a:
        r -= 1
    return r


def _ceil_root_ratio(a: int, b: int, k: int) -> int:
    """Smallest integer r >= 0 with r**k * b >= a."""
    r = iroot(a // b, k)
    while r**k * b < a:
        r += 1
    while r > 0 and (r - 1) ** k * b >= a:
        r -= 1
    return r


def _window_terms(q1: int, q2: int, t: int, eps: Fraction):
    eps = F(eps)
    upper = [(q1, F(1)), (q2, -(F(1, 2) + eps)), (t, F(20, 27) + 2 * eps)]
    lower1 = [(q1, F(5, 4) + eps), (q2, F(3, 2) + eps), (t, -(F(20, 27) + eps))]
    lower2 = [(q1, F(5, 4) + eps), (t, F(7, 27))]
    return upper, lower1, lower2


def n_window(
    q1: int, q2: int, t: int, eps: Fraction = F(0)
) -> tuple[int, int] | None:
    """Integer window [N_lo, N_hi] of size caps compatible with all three
    feasibility inequalities, or None when the window is empty.

    The inequalities compare N^2 against products of fractional powers of
    q1, q2, T; each is decided exactly by clearing denominators of the
    exponents and comparing huge integers.  Requires 1 <= q1 <= q2 <= t
    and eps >= 0.
    """
    if not (1 <= q1 <= q2 <= t):
        raise DomainError(f"need 1 <= q1 <= q2 <= T, got ({q1}, {q2}, {t})")
    if F(eps) < 0:
        raise DomainError(f"eps must be non-negative, got {eps}")
    upper, lower1, lower2 = _window_terms(q1, q2, t, eps)
    a, b, k = _power_product(upper)
    n_hi = _floor_root_ratio(a, b, 2 * k)
    lo = 1
    for terms in (lower1, lower2):
        a, b, k = _power_product(terms)
        lo = max(lo, _ceil_root_ratio(a, b, 2 * k))
    if lo > n_hi:
        return None
    return lo, n_hi


def n_window_conditions(
    q1: int, q2: int, t: int, eps: Fraction, n: int
) -> tuple[bool, bool, bool]:
    """Exact truth values of (upper, lower1, lower2) at size cap n."""
    upper, lower1, lower2 = _window_terms(q1, q2, t, eps)
    out = []
    for terms, is_upper in ((upper, True), (lower1, False), (lower2, False)):
        a, b, k = _power_product(terms)
        lhs = n ** (2 * k) * b
        out.append(lhs <= a if is_upper else lhs >= a)
    return tuple(out)  # type: ignore[return-value]


# --------------------------------------------------------- cutoff checking


@dataclass(frozen=True)
class CutoffVerdict:
    """Outcome of the small-side cutoff check on one box."""

    ok: bool
    reason: str  # "cutoff-holds" | "witness-in-box" | "witness-escapes-box"
    witness: SquareWitness | None
    trace: SmallSquareTrace | None = None


def cutoff_check(
    q1: int,
    q2: int,
    x1bound: Fraction,
    x2bound: Fraction,
    ceiling: int = 8,
) -> CutoffVerdict:
    """Check the dichotomy: either one radius is below ceiling*sqrt(q2), or
    the constructive representation (at cap N = ceil(q2^(3/4))) produces a
    square value inside the box.

    A False verdict flags a box where the constructed witness escapes; such
    flags are reported for survey purposes, never asserted, because the
    construction is only guaranteed up to constants.
    """
    if math.gcd(q1, q2) != 1:
        raise DomainError(f"steps must be coprime, got ({q1}, {q2})")
    x1b, x2b = F(x1bound), F(x2bound)
    big1 = x1b * x1b > ceiling * ceiling * q2
    big2 = x2b * x2b > ceiling * ceiling * q2
    if not (big1 and big2):
        return CutoffVerdict(True, "cutoff-holds", None)
    cap = _ceil_root_ratio(q2**3, 1, 4)  # ceil(q2^(3/4))
    trace = construct_small_square(q1, q2, cap)
    w = trace.witness
    if abs(w.x1) <= x1b and abs(w.x2) <= x2b:
        return CutoffVerdict(True, "witness-in-box", w, trace)
    return CutoffVerdict(False, "witness-escapes-box", w, trace)

"""Constructing a square with provably small coefficients.

For coprime steps q1 < q2 one can always write n^2 = x1*q1 + x2*q2 with n
below a balanced cap and coefficients far smaller than brute force would
suggest: |x2| stays under a constant times q1^(3/4)/q2^(1/2) (times n_cap
factors), because x2 is steered by a continued-fraction convergent of q2/q1.

This demo walks one construction in detail, then surveys a whole range.
"""

from __future__ import annotations

from sqavoid import (
    balanced_n,
    brute_force_small_square,
    construct_small_square,
    convergent_denominators,
    small_square_survey,
    square_cover_height,
)

q1, q2 = 120, 1963
n_cap = balanced_n(q1, q2)
print(f"steps q1 = {q1}, q2 = {q2}; balanced root cap = {n_cap}")

trace = construct_small_square(q1, q2, n_cap)
w = trace.witness
print(f"\nchosen multiplier b = {trace.b} (b*q2 is a residue mod q1)")
print(f"square roots of b*q2 mod q1: {trace.c}, {trace.c_bar}")
print(f"convergent denominators of {trace.c_bar}/{q1}: "
      f"{convergent_denominators(trace.c_bar, q1)}")
print(f"root n = {trace.n}, recentering shift m = {trace.m}")
print(f"steering denominator = {trace.approx_d}")
print(f"result: ({w.x1})*{q1} + ({w.x2})*{q2} = {trace.n}^2 = {trace.n ** 2}")

# Independent route: smallest-coefficient square by exhaustive search.
best = brute_force_small_square(q1, q2, n_cap)
print(f"exhaustive smallest-|x2| witness: {best}")
print(f"construction used |x2| = {abs(w.x2)}, exhaustive best |x2| = {abs(best.x2)}")

# How many roots can a single square "cover"?  The cover height bounds the
# number of n <= H sharing one value of x2 during the scan.
for k in (1, 2, 3, 10):
    print(f"cover height H({k}) = {square_cover_height(k)}")

# Survey every coprime pair 2 <= q1 <= q2 <= 300: each construction is
# verified and its coefficient ratios compared to the theoretical ceilings.
report = small_square_survey(300)
print(f"\nsurvey up to 300: {report.pairs} coprime pairs, all verified: {report.all_ok}")
print(f"  max |x1| ratio {report.max_ratio_x1:.3f} at {report.argmax_x1}")
print(f"  max |x2| ratio {report.max_ratio_x2:.3f} at {report.argmax_x2}")

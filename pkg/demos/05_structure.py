"""
Upper boundaries and near-extremal structure
============================================

The upper boundary, the Type 1 / Type 2 split, the size bounds attached to
each type and the continuous optimum behind them.
"""

import itertools
from fractions import Fraction

from sumfree import cameron_optimal, make_grid_set
from sumfree.structure import (
    classify_type,
    f_eta_closed_form,
    f_eta_numeric,
    failing_conditions,
    lagrange_optimum,
    min_gamma,
    stripe_containment,
    type_bound,
    upper_boundary,
)
from sumfree.trials import type_bound_trials

# Cameron's set: the top edge x+y = 2u-1 is the whole upper boundary
S = cameron_optimal(10)
ub = upper_boundary(S)
print("boundary:", ub.points)
print("lines:", [(str(l.m), str(l.c)) for l in ub.lines])

w = classify_type(S)
print(w.kind, "via", w.line.p1, w.line.p2, "bound", type_bound(S, w), "size", S.size)

# a steeper boundary, cut off by y <= -2x + 21
steep = make_grid_set(10, 2, [(x, y) for x, y in itertools.product(range(1, 11), repeat=2) if y <= -2 * x + 21])
w = classify_type(steep)
print(steep.size, w.kind, w.p1, w.p2)

# two points on a very steep line fail the intercept condition
w = classify_type(make_grid_set(10, 2, [(6, 8), (7, 5)]))
print(w.kind, failing_conditions(w))

# how far outside 4n/5 <= x+y < 8n/5 a set reaches
for n in (10, 100, 1000):
    C = cameron_optimal(n)
    g = min_gamma(C)
    print(n, "min gamma", g, "n*gamma", g * n, stripe_containment(C, g + Fraction(1, 10 * n))["contained"])

# random near-extremal sets respect the bound of their type
run = type_bound_trials(100)
print("type-bound trials:", run.trials, "violations:", run.violations, run.extra["kinds"])

# The continuous problem: with c = 8/5 + eta the saddle value is
# 8/5 + eta - sqrt(1 + 2 eta + 5 eta^2 / 4), largest at eta = 0
print("\n eta   closed   numeric    m*")
for eta in (-0.5, -0.1, 0.0, 0.1, 0.5, 1.0):
    num = f_eta_numeric(eta)
    print(f"{eta:+.1f}  {f_eta_closed_form(eta):.6f}  {num.value:.6f}  {lagrange_optimum(eta).m_star:+.5f}")

"""
Lattice points and exclusion bounds
===================================

Counting lattice points in convex polygons and checking the pairing and
translate bounds on random maximal sum-free sets.
"""

from fractions import Fraction

from sumfree import cameron_optimal, random_maximal_sum_free
from sumfree.geometry import (
    ConvexPolygon,
    boundary_lattice_count,
    check_pairing_bound,
    check_translate_bound,
    discrepancy_profile,
    lattice_count,
    polygon_area,
    rectangle_pairing,
)
from sumfree.trials import run_all

# Pick: interior + boundary/2 - 1 = area, an independent check on the scanline count
P = ConvexPolygon([(0, 0), (7, 2), (5, 9), (-1, 4)])
A, B, L = polygon_area(P), boundary_lattice_count(P), lattice_count(P)
print(f"area {A}, boundary {B}, lattice count {L}, pick {A + Fraction(B, 2) + 1}")

# The normalised extremal stripe 4/5 <= x+y <= 8/5 in the unit square.  The
# count minus the area, divided by t, is the quantity that should vanish.
# For this polygon the leftover is boundary-sized, so the ratio levels off.
stripe = ConvexPolygon([(Fraction(4, 5), 0), (1, 0), (1, Fraction(3, 5)),
                        (Fraction(3, 5), 1), (0, 1), (0, Fraction(4, 5))])
for row in discrepancy_profile(stripe, [10, 100, 1000, 5000]):
    print(f"t={int(row['t']):5d}  |count-area|/t={float(row['ratio']):.4f}  worst translate {float(row['max_ratio']):.4f}")

# A pairing rectangle [0,x1] x [0,y1] around a member a: x and a-x cannot
# both be in S, so S holds at most half of its lattice points.
S = cameron_optimal(12)
a = (9, 10)
print(check_pairing_bound(S, a, rectangle_pairing(a)))

# t and a+t cannot both be in S, since a+t is the sum of two members
T = [(x, y) for x in range(1, 5) for y in range(1, 5)]
print(check_translate_bound(S, a, T, "+"))

# random maximal sets give far less structured inputs
R = random_maximal_sum_free(15, 2, seed=3)
print("random set size", R.size)

for run in run_all(trials=100):
    print(f"{run.name:12s} checks={run.trials} violations={run.violations}")

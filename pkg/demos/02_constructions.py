"""
Extremal constructions
======================

Diagonal stripes, their densities and the leading-term bounds.
"""

from fractions import Fraction

from sumfree import SchurParams, cameron_optimal, is_sum_free, one_d_extremal, pq_stripe, theorem2_bound
from sumfree.constructions import cameron_u, conjecture_bound

# In one dimension the odd numbers, the upper half and the shifted upper half
# all reach ceil(n/2).
for v in ("odds", "upper_half", "shifted"):
    print(v, list(one_d_extremal(10, v)))

# Cameron's stripe u <= x+y <= 2u-1: two sums of members are at least 2u,
# just above the top of the stripe.  Density tends to 3/5.
print("\n   n   u   size  density-0.6")
for n in (10, 50, 100, 500, 2000):
    S = cameron_optimal(n)
    d = Fraction(S.size, n * n)
    print(f"{n:4d} {cameron_u(n):4d} {S.size:7d}  {float(d - Fraction(3, 5)):+.5f}")

# Strict stripes a < x+y < (p+q)a are (p,q)-sum-free for any a > 0.  With the
# default a the size tracks (1 - 2/((p+q)^2+1)) n^2 up to O(n).
print("\n p q    n    size   bound   residual/n")
for p, q in [(1, 1), (2, 2), (3, 3), (1, 2)]:
    for n in (17, 100, 1000):
        S = pq_stripe(n, SchurParams(p, q))
        assert is_sum_free(S, SchurParams(p, q))
        b = conjecture_bound(n, SchurParams(p, q))
        print(f" {p} {q} {n:4d} {S.size:7d} {float(b):9.1f}  {float((S.size - b) / n):+.3f}")

# n = 17, p = 2 lands exactly on the bound
print("\n(17, p=2):", pq_stripe(17, SchurParams(2, 2)).size, theorem2_bound(17, 2))

"""
Sum-free sets on the grid
=========================

Building point sets, listing forbidden triples and finding violations.
"""

from sumfree import SchurParams, enumerate_triples, find_violation, is_sum_free, make_grid_set

# A (p,q)-sum-free set has no x, y, z with p*x + q*y = z (x = y allowed).
# On [2]^2 with p = q = 1 only one triple fits inside the grid.
print(enumerate_triples(2, 2, SchurParams(1, 1)))

# (1,1) doubles to (2,2), so this pair is not sum-free
S = make_grid_set(2, 2, [(1, 1), (2, 2)])
print("violation:", find_violation(S))

# the anti-diagonal of [3]^2 is fine, its only sum (3,3) is missing
T = make_grid_set(3, 2, [(1, 2), (2, 1)])
print("anti-diagonal sum-free:", is_sum_free(T))

# with unequal coefficients the roles of x and y differ; each order
# finds its own witness
U = make_grid_set(6, 1, [1, 2, 5])
for pq in [(1, 2), (2, 1)]:
    print(pq, find_violation(U, SchurParams(*pq)))

# the number of triples grows like n^4 / 4 in two dimensions
for n in (3, 5, 10, 20):
    print(n, len(enumerate_triples(n, 2, SchurParams(1, 1))))

"""
Exact maxima by branch and bound
================================

Small-grid optima, an oracle cross-check and checkpointed runs.
"""

import os
import tempfile
import time
from fractions import Fraction

from sumfree import SchurParams, brute_force_max, cameron_optimal, enumerate_optima, max_sum_free
from sumfree.solver import resume

# exhaustive search and branch and bound must agree wherever both run
for n in range(1, 6):
    bf = brute_force_max(n, 2)
    bb = max_sum_free(n, 2)
    print(f"n={n}  oracle={bf.optimum}  b&b={bb.optimum}  nodes={bb.nodes}")

# beyond the oracle the solver keeps proving optimality for a while;
# the density drifts down towards 3/5
print("\n n  opt  cameron  density")
for n in range(2, 9):
    t = time.perf_counter()
    res = max_sum_free(n, 2)
    print(f"{n:2d} {res.optimum:4d} {cameron_optimal(n).size:8d}  {float(res.density):.4f}"
          f"  proven={res.proven}  {time.perf_counter() - t:.2f}s")

# the maximum sets themselves, for n = 3
for S in enumerate_optima(3, 2):
    print(S.points())

# other coefficients
for pq in [(2, 2), (1, 2)]:
    print(pq, [max_sum_free(n, 2, SchurParams(*pq)).optimum for n in range(2, 5)])

# A run that hits its time limit still returns a valid lower bound and can
# park its open subproblems in a checkpoint file.
path = os.path.join(tempfile.mkdtemp(), "n8.ckpt")
first = max_sum_free(8, 2, time_limit=0.05, checkpoint=path)
print(f"\nafter 0.05s: size {first.optimum}, proven={first.proven}, open={len(first.open_prefixes)}")
done = resume(path)
print(f"resumed: size {done.optimum}, proven={done.proven}, density {Fraction(done.optimum, 64)}")

# worker processes split the tree; the optimum does not depend on how many
print("threads=2:", max_sum_free(7, 2, threads=2).optimum)

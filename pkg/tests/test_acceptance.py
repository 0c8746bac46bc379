"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Under pytest the verdict lines are collected and printed in an
"acceptance criteria" section of the terminal summary.  Running the file
directly prints them as each criterion finishes.
"""

import itertools
import math
import sys
import time
from fractions import Fraction

import numpy as np

from sumfree import (
    GridSet,
    SchurParams,
    brute_force_max,
    cameron_optimal,
    enumerate_optima,
    is_sum_free,
    max_sum_free,
    mu_1d,
    pq_stripe,
    random_maximal_sum_free,
)
from sumfree.geometry import (
    ConvexPolygon,
    boundary_lattice_count,
    convex_hull,
    discrepancy_profile,
    lattice_count,
    polygon_area,
)
from sumfree.structure import (
    constrained_gradient,
    f_eta_closed_form,
    f_eta_numeric,
    lagrange_optimum,
    min_gamma,
    top_right_corner,
    upper_boundary,
    upper_boundary_bruteforce,
)
from sumfree.trials import DEFAULT_SEED, run_all, type_bound_trials

# frozen oracle output: min_gamma of every maximum sum-free set in [n]^2
MIN_GAMMA_FIXTURE = {
    2: [Fraction(0), Fraction(2, 5)],
    3: [Fraction(1, 15), Fraction(2, 5), Fraction(2, 5)],
    4: [Fraction(3, 20)],
    5: [Fraction(1, 5)],
}

_LINES = []


def _emit(k, ok, detail, seconds):
    line = f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  ({seconds:.1f}s)  {detail}"
    _LINES.append(line)
    if __name__ == "__main__":
        print(line, flush=True)


class _Criterion:
    def __init__(self, k):
        self.k = k
        self.detail = ""

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        dt = time.perf_counter() - self.t0
        ok = exc_type is None
        detail = self.detail if ok else f"{self.detail} | {exc_type.__name__}: {exc}"
        _emit(self.k, ok, detail, dt)
        return False


def test_criterion_01_one_d_exactness():
    with _Criterion(1) as c:
        bad = []
        for n in range(2, 31):
            res = max_sum_free(n, 1)
            if not (res.proven and res.optimum == math.ceil(n / 2) and res.density == mu_1d(n)):
                bad.append(n)
        elapsed = time.perf_counter() - c.t0
        c.detail = f"n=2..30, mismatches={bad}, runtime limit 60s"
        assert not bad
        assert elapsed < 60


def test_criterion_02_two_d_oracle_equivalence():
    with _Criterion(2) as c:
        rows = []
        for n in range(2, 6):
            bf = brute_force_max(n, 2, SchurParams(1, 1))
            bb = max_sum_free(n, 2, SchurParams(1, 1))
            ok = (bb.optimum == bf.optimum and bb.proven and is_sum_free(bb.witness) and is_sum_free(bf.witness))
            rows.append((n, bf.optimum, bb.optimum, ok))
        elapsed = time.perf_counter() - c.t0
        c.detail = "n,oracle,b&b: " + " ".join(f"{n}:{a}/{b}" for n, a, b, _ in rows)
        assert all(r[3] for r in rows)
        assert elapsed < 600


def test_criterion_03_cameron_density():
    with _Criterion(3) as c:
        devs = {}
        for n in (10, 50, 100, 500, 2000):
            S = cameron_optimal(n)
            devs[n] = abs(Fraction(S.size, n * n) - Fraction(3, 5))
        c.detail = "max |d-0.6|*n = " + str(max(d * n for n, d in devs.items())) + " (limit 3)"
        assert all(d <= Fraction(3, n) for n, d in devs.items())


def test_criterion_04_pp_construction():
    with _Criterion(4) as c:
        worst = 0
        for p in (1, 2, 3):
            params = SchurParams(p, p)
            for n in (4 * p * p + 1, 100, 1000):
                S = pq_stripe(n, params)
                assert is_sum_free(S, params), (p, n)
                resid = abs(S.size - (1 - Fraction(2, 4 * p * p + 1)) * n * n)
                worst = max(worst, resid / n)
                assert resid <= 4 * n, (p, n, resid)
        S = pq_stripe(17, SchurParams(2, 2))
        # independent count of 8 < x+y < 32 in [17]^2
        direct = sum(1 for x, y in itertools.product(range(1, 18), repeat=2) if 8 < x + y < 32)
        c.detail = f"max residual/n = {float(worst):.3f} (limit 4); n=17,p=2 size={S.size}, direct={direct}"
        assert S.size == 255 == direct


def test_criterion_05_lemma_property_suites():
    with _Criterion(5) as c:
        runs = run_all(200, DEFAULT_SEED)
        elapsed = time.perf_counter() - c.t0
        c.detail = ", ".join(f"{r.name}: {r.trials} checks/{r.violations} violations" for r in runs)
        for r in runs:
            assert r.violations == 0, r.failures[:3]
        assert all(r.trials >= 200 for r in runs)
        assert elapsed < 120


def _criterion6_sets(rng):
    """100 sets with n <= 30: random maximal sum-free sets, random masks and sparse scatters."""
    out = []
    for i in range(100):
        n = int(rng.integers(1, 31))
        kind = i % 3
        if kind == 0:
            S = random_maximal_sum_free(n, 2, seed=int(rng.integers(2**31)))
        elif kind == 1:
            mask = rng.random((n, n)) < rng.uniform(0.05, 0.7)
            S = GridSet(n, 2, mask)
        else:
            k = int(rng.integers(1, 5))
            mask = np.zeros((n, n), dtype=bool)
            mask[rng.integers(0, n, k), rng.integers(0, n, k)] = True
            S = GridSet(n, 2, mask)
        if S.size == 0:
            S = S.with_point((1, 1))
        out.append(S)
    return out


def test_criterion_06_upper_boundary_oracle():
    with _Criterion(6) as c:
        rng = np.random.default_rng(DEFAULT_SEED + 6)
        mismatches = empty = corner_fail = 0
        for S in _criterion6_sets(rng):
            hull = set(upper_boundary(S).points)
            if hull != upper_boundary_bruteforce(S):
                mismatches += 1
            if not hull:
                empty += 1
                if top_right_corner(S) is None:
                    corner_fail += 1
        c.detail = f"100 sets, mismatches={mismatches}, empty boundaries={empty}, missing corners={corner_fail}"
        assert mismatches == 0 and corner_fail == 0 and empty > 0


def test_criterion_07_lagrange_validation():
    with _Criterion(7) as c:
        worst_rel = worst_grad = 0.0
        for eta in (-0.5, -0.1, 0.1, 0.5, 1.0):
            num = f_eta_numeric(eta)
            exact = f_eta_closed_form(eta)
            rel = abs(num.value - exact) / abs(exact)
            L = lagrange_optimum(eta)
            grad = math.hypot(*constrained_gradient(eta, L.x_star, L.m_star, h=1e-5))
            worst_rel = max(worst_rel, rel)
            worst_grad = max(worst_grad, grad)
        elapsed = time.perf_counter() - c.t0
        c.detail = f"max rel err {worst_rel:.2e} (limit 1e-4), max |grad| {worst_grad:.2e} (limit 1e-6)"
        assert worst_rel < 1e-4 and worst_grad < 1e-6 and elapsed < 60


def _random_lattice_polygon(rng, span=15):
    while True:
        k = int(rng.integers(3, 10))
        pts = [tuple(int(v) for v in rng.integers(-span, span + 1, size=2)) for _ in range(k)]
        hull = convex_hull(pts)
        if len(hull) >= 3:
            return ConvexPolygon(hull)


EXTREMAL_STRIPE = ConvexPolygon([
    (Fraction(4, 5), 0), (1, 0), (1, Fraction(3, 5)),
    (Fraction(3, 5), 1), (0, 1), (0, Fraction(4, 5)),
])


def test_criterion_08_lattice_count_oracle():
    with _Criterion(8) as c:
        rng = np.random.default_rng(DEFAULT_SEED + 8)
        pick_fail = 0
        for _ in range(100):
            P = _random_lattice_polygon(rng)
            if lattice_count(P) != polygon_area(P) + Fraction(boundary_lattice_count(P), 2) + 1:
                pick_fail += 1
        rows = discrepancy_profile(EXTREMAL_STRIPE, [10, 100, 1000])
        ratios = [r["ratio"] for r in rows]
        c.detail = (f"Pick mismatches={pick_fail}/100; stripe ratio t=10,100,1000: "
                    + ", ".join(f"{float(x):.4f}" for x in ratios)
                    + "; sampled-translate max ratio: "
                    + ", ".join(f"{float(r['max_ratio']):.4f}" for r in rows))
        assert pick_fail == 0
        assert ratios[-1] < ratios[0]


def test_criterion_09_structure_desk_check():
    with _Criterion(9) as c:
        over = [n for n in range(5, 2001) if min_gamma(cameron_optimal(n)) > Fraction(3, n)]
        report = {}
        for n in range(2, 6):
            opt = enumerate_optima(n, 2, SchurParams(1, 1))
            assert not opt.truncated and opt.optimum == brute_force_max(n, 2).optimum
            report[n] = sorted(min_gamma(S) for S in opt.sets)
        c.detail = "cameron n=5..2000 over 3/n: " + str(over) + "; min_gamma per optimum " + "; ".join(
            f"n={n}: " + ",".join(str(g) for g in gs) for n, gs in report.items())
        assert not over
        assert report == MIN_GAMMA_FIXTURE


def test_criterion_10_bound_consistency():
    with _Criterion(10) as c:
        run = type_bound_trials(100, DEFAULT_SEED + 3, n_max=12, min_density=0.56)
        k = run.extra["kinds"]
        c.detail = (f"{run.trials} classified sets (Type1={k['Type1']}, Type2={k['Type2']}, "
                    f"{run.extra['draws']} draws), violations={run.violations}")
        assert run.trials == 100 and run.violations == 0, run.failures[:3]


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)

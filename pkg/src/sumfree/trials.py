"""Randomised property runs for the pairing and translate exclusion bounds.

Every trial draws its own generator from a :class:`numpy.random.SeedSequence`
spawned off one root seed, so a run is reproducible and trials are
independent of each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    PairingRegion,
    check_p_translate_bound,
    check_pairing_bound,
    check_translate_bound,
    rectangle_pairing,
)
from .grid_core import GridSet, SchurParams
from .solver import random_maximal_sum_free
from .structure import classify_type, type_bound

DEFAULT_SEED = 20240521
N_RANGE = (5, 30)


@dataclass
class LemmaRun:
    name: str
    trials: int = 0
    violations: int = 0
    failures: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def record(self, report, context):
        self.trials += 1
        if not report["holds"]:
            self.violations += 1
            self.failures.append({**context, **report})

    @property
    def ok(self):
        return self.trials > 0 and self.violations == 0


def _trial_rngs(seed, trials):
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(trials)]


def _draw_n(rng, n):
    return int(n) if n is not None else int(rng.integers(N_RANGE[0], N_RANGE[1] + 1))


def _random_member(rng, S):
    pts = S.coords()
    x, y = pts[int(rng.integers(len(pts)))]
    return (int(x), int(y))


def _random_lattice_set(rng, n):
    """A small random point set: either a random box or scattered points."""
    if rng.random() < 0.5:
        x0, y0 = (int(v) for v in rng.integers(1, n + 1, size=2))
        w, h = (int(v) for v in rng.integers(0, max(2, n // 3), size=2))
        return {(x, y) for x in range(x0, x0 + w + 1) for y in range(y0, y0 + h + 1)}
    k = int(rng.integers(1, 3 * n))
    pts = rng.integers(1, n + 1, size=(k, 2))
    return {(int(x), int(y)) for x, y in pts}


def _random_pairing_subset(rng, a, n):
    """Random set closed under ``x -> a - x``, built from reflected pairs."""
    k = int(rng.integers(1, 2 * n))
    base = set()
    for _ in range(k):
        x = (int(rng.integers(0, a[0] + 1)), int(rng.integers(0, a[1] + 1)))
        base.add(x)
        base.add((a[0] - x[0], a[1] - x[1]))
    return PairingRegion(frozenset(base), a, 1, True, None)


def pairing_trials(trials=200, seed=DEFAULT_SEED, n=None) -> LemmaRun:
    run = LemmaRun("pairing")
    for i, rng in enumerate(_trial_rngs(seed, trials)):
        nn = _draw_n(rng, n)
        S = random_maximal_sum_free(nn, 2, SchurParams(1, 1), seed=int(rng.integers(2**31)))
        a = _random_member(rng, S)
        P = rectangle_pairing(a, 1) if rng.random() < 0.5 else _random_pairing_subset(rng, a, nn)
        run.record(check_pairing_bound(S, a, P), {"trial": i, "n": nn, "a": a})
    return run


def translate_trials(trials=200, seed=DEFAULT_SEED + 1, n=None) -> LemmaRun:
    run = LemmaRun("translate")
    for i, rng in enumerate(_trial_rngs(seed, trials)):
        nn = _draw_n(rng, n)
        S = random_maximal_sum_free(nn, 2, SchurParams(1, 1), seed=int(rng.integers(2**31)))
        a = _random_member(rng, S)
        sign = "+" if rng.random() < 0.5 else "-"
        T = _random_lattice_set(rng, nn)
        run.record(check_translate_bound(S, a, T, sign), {"trial": i, "n": nn, "a": a, "sign": sign})
    return run


def p_translate_trials(trials=200, seed=DEFAULT_SEED + 2, n=None, ps=(1, 2, 3)) -> LemmaRun:
    """Both parts of the (p,p) statement: p-pairing boxes and dilated translates."""
    run = LemmaRun("p-translate")
    for i, rng in enumerate(_trial_rngs(seed, trials)):
        nn = _draw_n(rng, n)
        p = int(rng.choice(ps))
        S = random_maximal_sum_free(nn, 2, SchurParams(p, p), seed=int(rng.integers(2**31)))
        a = _random_member(rng, S)
        T = _random_lattice_set(rng, nn)
        ctx = {"trial": i, "n": nn, "a": a, "p": p}
        run.record(check_p_translate_bound(S, a, T, p), ctx)
        run.record(check_pairing_bound(S, a, rectangle_pairing(a, p)), {**ctx, "part": "p-pairing"})
    return run


def perturbed_stripe(rng, n):
    """Random sum-free set grown from a thinned weighted stripe.

    The band ``u <= w1*x + w2*y <= 2u - 1`` is sum-free for positive integer
    weights; tilting it produces both boundary types.  A random fraction of
    the band is dropped and the remainder is extended greedily to a maximal
    sum-free set.
    """
    w1, w2 = (int(v) for v in rng.integers(1, 4, size=2))
    r = np.arange(1, n + 1)
    f = w1 * r[:, None] + w2 * r[None, :]
    u = int(rng.integers(2, (w1 + w2) * n + 1))
    mask = (f >= u) & (f <= 2 * u - 1)
    mask &= rng.random(mask.shape) > rng.uniform(0, 0.3)
    start = GridSet(n, 2, mask)
    return random_maximal_sum_free(n, 2, SchurParams(1, 1), seed=int(rng.integers(2**31)), start=start)


def type_bound_trials(trials=100, seed=DEFAULT_SEED + 3, n_max=12, min_density=0.56, max_draws=100_000):
    """Draw perturbed stripes until ``trials`` of them are large and classified.

    Each kept set has ``|S| > min_density * n^2`` and is Type 1 or Type 2;
    its size is compared with the bound for that type.
    """
    rng = np.random.default_rng(seed)
    run = LemmaRun("type-bound")
    kinds = {"Type1": 0, "Type2": 0}
    draws = 0
    while run.trials < trials and draws < max_draws:
        draws += 1
        nn = int(rng.integers(5, n_max + 1))
        S = perturbed_stripe(rng, nn)
        if S.size <= min_density * nn * nn:
            continue
        w = classify_type(S)
        if w.kind == "Neither":
            continue
        kinds[w.kind] += 1
        bound = type_bound(S, w)
        run.record({"count": S.size, "bound": bound, "holds": S.size <= bound},
                   {"n": nn, "kind": w.kind, "m": w.line.m, "c": w.line.c})
    run.extra.update(kinds=kinds, draws=draws)
    return run


def run_all(trials=200, seed=DEFAULT_SEED, n=None) -> list:
    return [
        pairing_trials(trials, seed, n),
        translate_trials(trials, seed + 1, n),
        p_translate_trials(trials, seed + 2, n),
    ]

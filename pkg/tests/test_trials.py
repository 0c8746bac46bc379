from sumfree.structure import classify_type
from sumfree.trials import (
    pairing_trials,
    p_translate_trials,
    perturbed_stripe,
    run_all,
    translate_trials,
    type_bound_trials,
)
from sumfree import is_sum_free

import numpy as np


def test_runs_are_reproducible():
    a = pairing_trials(30, seed=99)
    b = pairing_trials(30, seed=99)
    assert (a.trials, a.violations) == (b.trials, b.violations)


def test_small_runs_clean():
    for run in (pairing_trials(40), translate_trials(40), p_translate_trials(40)):
        assert run.ok, run.failures[:3]


def test_p_translate_records_both_parts():
    run = p_translate_trials(10)
    assert run.trials == 20


def test_fixed_n():
    assert all(r.ok for r in run_all(10, n=7))


def test_perturbed_stripe_is_sum_free():
    rng = np.random.default_rng(0)
    kinds = set()
    for _ in range(200):
        S = perturbed_stripe(rng, int(rng.integers(5, 13)))
        assert is_sum_free(S)
        kinds.add(classify_type(S).kind)
    assert {"Type1", "Type2"} <= kinds


def test_type_bound_trials_small():
    run = type_bound_trials(20)
    assert run.ok and run.trials == 20
    assert sum(run.extra["kinds"].values()) == 20

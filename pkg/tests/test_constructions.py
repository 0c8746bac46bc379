import itertools
import math
from fractions import Fraction

import pytest

from sumfree import (
    GridInputError,
    SchurParams,
    StripeSpec,
    cameron_optimal,
    conjecture_bound,
    is_sum_free,
    mu_1d,
    one_d_extremal,
    pq_stripe,
    stripe_count,
    stripe_set,
    theorem2_bound,
)
from sumfree.constructions import ONE_D_VARIANTS, cameron_u


def enumerated_stripe(spec):
    out = set()
    for x, y in itertools.product(range(1, spec.n + 1), repeat=2):
        if spec.contains_sum(x + y):
            out.add((x, y))
    return out


class TestStripe:
    def test_single_sum(self):
        assert set(stripe_set(StripeSpec(2, 3, 3, False, False))) == {(1, 2), (2, 1)}

    def test_n5_size(self):
        assert stripe_set(StripeSpec(5, 5, 9, False, False)).size == 18

    def test_beyond_max_sum(self):
        assert stripe_set(StripeSpec(5, 11, 12, False, False)).size == 0

    @pytest.mark.parametrize("n", [1, 2, 3, 7, 13])
    @pytest.mark.parametrize("flags", list(itertools.product([False, True], repeat=2)))
    def test_closed_form_count_matches_enumeration(self, n, flags):
        bounds = [Fraction(k, 3) for k in range(-3, 3 * 2 * n + 6, 2)]
        for L, U in itertools.combinations(bounds, 2):
            spec = StripeSpec(n, L, U, *flags)
            expect = enumerated_stripe(spec)
            assert stripe_count(spec) == len(expect)
            assert set(stripe_set(spec)) == expect


class TestCameron:
    def test_n5(self):
        S = cameron_optimal(5)
        assert cameron_u(5) == 5 and S.size == 18
        assert {x + y for x, y in S} == set(range(5, 10))

    def test_n2(self):
        S = cameron_optimal(2)
        assert set(S) == {(1, 2), (2, 1), (2, 2)} and is_sum_free(S)

    @pytest.mark.parametrize("n", list(range(2, 41)) + [97, 250, 511, 1000, 2000])
    def test_density_and_sum_free(self, n):
        S = cameron_optimal(n)
        assert is_sum_free(S)
        assert abs(Fraction(S.size, n * n) - Fraction(3, 5)) <= Fraction(3, n)


class TestPQStripe:
    def test_n17_p2(self):
        S = pq_stripe(17, SchurParams(2, 2))
        assert S.size == 255 and S.size == (1 - Fraction(2, 17)) * 289
        assert {x + y for x, y in S} == set(range(9, 32))

    def test_n5_classical(self):
        assert pq_stripe(5, SchurParams(1, 1)).size == 13

    def test_empty_when_offset_too_big(self):
        assert pq_stripe(10, SchurParams(1, 2), Fraction(41, 2)).size == 0

    def test_nonpositive_offset(self):
        with pytest.raises(GridInputError):
            pq_stripe(10, SchurParams(1, 1), 0)

    @pytest.mark.parametrize("p,q", [(1, 1), (1, 2), (2, 1), (2, 2), (1, 4), (3, 3), (4, 4), (2, 3)])
    @pytest.mark.parametrize("n", [1, 2, 5, 9, 17, 40, 123])
    def test_sum_free_with_own_params(self, n, p, q):
        assert is_sum_free(pq_stripe(n, SchurParams(p, q)), SchurParams(p, q))

    @pytest.mark.parametrize("p", [1, 2, 3, 4])
    @pytest.mark.parametrize("n", [5, 17, 50, 333, 1000, 2000])
    def test_size_within_4n(self, n, p):
        S = pq_stripe(n, SchurParams(p, p))
        assert S.size >= theorem2_bound(n, p) - 4 * n
        assert abs(S.size - theorem2_bound(n, p)) <= 4 * n

    @pytest.mark.parametrize("p", [1, 2, 3, 4])
    def test_large_sum_free(self, p):
        assert is_sum_free(pq_stripe(2000, SchurParams(p, p)), SchurParams(p, p))


class TestOneD:
    def test_odds(self):
        assert list(one_d_extremal(4, "odds")) == [1, 3]

    def test_upper_half(self):
        assert list(one_d_extremal(5, "upper_half")) == [3, 4, 5]

    def test_shifted(self):
        assert list(one_d_extremal(4, "shifted")) == [2, 3]

    def test_shifted_rejects_odd(self):
        with pytest.raises(GridInputError):
            one_d_extremal(5, "shifted")

    @pytest.mark.parametrize("n", range(1, 60))
    def test_size_and_sum_free(self, n):
        for v in ONE_D_VARIANTS:
            if v == "shifted" and n % 2:
                continue
            S = one_d_extremal(n, v)
            assert S.size == math.ceil(n / 2) and is_sum_free(S)


class TestBounds:
    def test_theorem2(self):
        assert theorem2_bound(10, 1) == 60
        assert theorem2_bound(17, 2) == 255
        assert theorem2_bound(10, 3) == Fraction(35, 37) * 100

    def test_conjecture(self):
        assert conjecture_bound(10, SchurParams(1, 1)) == 60
        assert conjecture_bound(10, SchurParams(1, 2)) == 80
        for n in (3, 17, 40):
            assert conjecture_bound(n, SchurParams(2, 2)) == theorem2_bound(n, 2)

    def test_mu_1d(self):
        assert mu_1d(4) == Fraction(1, 2)
        assert mu_1d(5) == Fraction(3, 5)
        assert mu_1d(1) == 1

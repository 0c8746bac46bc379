import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sumfree import (
    GridInputError,
    GridSet,
    SchurParams,
    cameron_optimal,
    density,
    enumerate_triples,
    find_violation,
    format_point_list,
    is_sum_free,
    make_grid_set,
    parse_point_list,
)
from sumfree.grid_core import point_to_cell, cell_to_point, read_point_list, write_point_list


def brute_triples(n, dim, params):
    """Double loop over ordered pairs, independent of the vectorised builder."""
    pts = list(itertools.product(range(1, n + 1), repeat=dim))
    out = []
    for x in pts:
        for y in pts:
            if params.symmetric and y < x:
                continue
            z = tuple(params.p * a + params.q * b for a, b in zip(x, y))
            if all(c <= n for c in z):
                out.append((x, y, z))
    if dim == 1:
        out = [(x[0], y[0], z[0]) for x, y, z in out]
    return out


class TestMakeGridSet:
    def test_singleton(self):
        assert make_grid_set(2, 2, [(1, 1)]).size == 1

    def test_dedup(self):
        assert make_grid_set(2, 2, [(1, 1), (1, 1)]).size == 1

    def test_out_of_bounds_names_point(self):
        with pytest.raises(GridInputError, match=r"\(3, 1\)"):
            make_grid_set(2, 2, [(3, 1)])

    def test_one_d(self):
        S = make_grid_set(5, 1, [1, 3, 5])
        assert list(S) == [1, 3, 5] and 3 in S and 2 not in S

    def test_immutable_mask(self):
        S = make_grid_set(3, 2, [(1, 2)])
        with pytest.raises(ValueError):
            S.mask[0, 0] = True

    def test_cell_layout(self):
        assert point_to_cell((2, 3), 4, 2) == (2 - 1) * 4 + (3 - 1)
        assert cell_to_point(6, 4, 2) == (2, 3)

    def test_set_algebra(self):
        A = make_grid_set(3, 2, [(1, 1), (2, 2)])
        B = make_grid_set(3, 2, [(2, 2), (3, 3)])
        assert (A | B).size == 3 and (A & B).points() == [(2, 2)]
        assert (A - B).points() == [(1, 1)] and (A & B).issubset(A)
        assert make_grid_set(3, 2, [(1, 2)]).transpose().points() == [(2, 1)]


class TestTriples:
    def test_n2(self, classical):
        assert enumerate_triples(2, 2, classical) == [((1, 1), (1, 1), (2, 2))]

    def test_n1_empty(self, classical):
        assert enumerate_triples(1, 2, classical) == []

    @pytest.mark.parametrize("n,dim,p,q", [(3, 2, 1, 1), (4, 2, 1, 2), (4, 2, 2, 1), (5, 2, 2, 2), (12, 1, 1, 1), (12, 1, 1, 3)])
    def test_matches_double_loop(self, n, dim, p, q):
        params = SchurParams(p, q)
        assert enumerate_triples(n, dim, params) == brute_triples(n, dim, params)

    def test_n3_length(self, classical):
        assert len(enumerate_triples(3, 2, classical)) == 5

    def test_ordered_pairs_for_asymmetric(self):
        tr = enumerate_triples(5, 1, SchurParams(1, 2))
        assert (1, 2, 5) in tr and (2, 1, 4) in tr


class TestSumFree:
    def test_doubling_violation(self, classical):
        v = find_violation(make_grid_set(2, 2, [(1, 1), (2, 2)]), classical)
        assert (v.x, v.y, v.z) == ((1, 1), (1, 1), (2, 2))
        assert not is_sum_free(make_grid_set(2, 2, [(1, 1), (2, 2)]))

    def test_cameron_5(self):
        assert is_sum_free(cameron_optimal(5))

    def test_anti_diagonal(self):
        assert is_sum_free(make_grid_set(3, 2, [(1, 2), (2, 1)]))

    def test_first_violation_is_lexicographic(self, classical):
        S = make_grid_set(4, 2, [(1, 1), (2, 2), (1, 2), (2, 4), (3, 3)])
        triples = [t for t in enumerate_triples(4, 2, classical) if all(p in S for p in t)]
        v = find_violation(S, classical)
        assert (v.x, v.y, v.z) == triples[0]

    def test_large_stripe_fast_path(self):
        S = cameron_optimal(400)
        assert find_violation(S) is None
        bad = S.with_point((1, 1)).with_point((2, 2))
        assert find_violation(bad) is not None

    def test_pq_violation_uses_coefficients(self):
        S = make_grid_set(9, 1, [1, 2, 5])
        assert is_sum_free(S, SchurParams(1, 1)) is False
        v = find_violation(make_grid_set(9, 1, [1, 5]), SchurParams(1, 4))
        assert (v.x, v.y, v.z) == (1, 1, 5)


@st.composite
def grid_sets(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    dim = draw(st.sampled_from([1, 2]))
    bits = draw(st.lists(st.booleans(), min_size=n ** dim, max_size=n ** dim))
    mask = np.array(bits, dtype=bool).reshape((n,) * dim)
    return GridSet(n, dim, mask)


params_st = st.builds(SchurParams, st.integers(1, 3), st.integers(1, 3))


@settings(max_examples=300, deadline=None)
@given(grid_sets(), params_st)
def test_checker_matches_triple_scan(S, params):
    hit = [t for t in enumerate_triples(S.n, S.dim, params) if all(p in S for p in t)]
    v = find_violation(S, params)
    assert (v is None) == (not hit)
    if v is not None:
        assert (v.x, v.y, v.z) == hit[0]
        assert v.z != v.x and v.z != v.y


@settings(max_examples=150, deadline=None)
@given(grid_sets(), params_st, st.randoms(use_true_random=False))
def test_monotone_under_subsets(S, params, rnd):
    if not is_sum_free(S, params):
        return
    pts = S.points()
    sub = [p for p in pts if rnd.random() < 0.5]
    assert is_sum_free(make_grid_set(S.n, S.dim, sub), params)


class TestDensity:
    def test_fifteen_of_25(self):
        pts = list(itertools.product(range(1, 6), repeat=2))[:15]
        assert density(make_grid_set(5, 2, pts)) == Fraction(3, 5)

    def test_empty_and_full(self):
        assert density(GridSet.empty(4)) == 0
        assert density(GridSet.full(4)) == 1


class TestPointList:
    def test_round_trip(self, tmp_path):
        S = cameron_optimal(6)
        path = tmp_path / "s.txt"
        write_point_list(S, path, summary=True)
        assert read_point_list(path) == S
        assert parse_point_list(format_point_list(S)) == S

    def test_one_d_round_trip(self):
        S = make_grid_set(7, 1, [2, 5, 7])
        assert parse_point_list(format_point_list(S, summary=True)) == S

    def test_summary_must_match(self):
        with pytest.raises(GridInputError):
            parse_point_list("n=2 dim=2\n1 2\nsize=2 density=1/2\n")

    @pytest.mark.parametrize("text,line", [
        ("n=2 dim=2\n1 a\n", 2),
        ("n=2 dim=2\n1 2\nfoo\n", 3),
        ("n=2 dim=2\n1 2 3\n", 2),
        ("n=2 dim=2\n3 1\n", 2),
    ])
    def test_unknown_lines_report_line_number(self, text, line):
        with pytest.raises(GridInputError, match=f"line {line}"):
            parse_point_list(text)

    def test_bad_header(self):
        with pytest.raises(GridInputError):
            parse_point_list("dim=2\n1 1\n")

"""Extremal (p,q)-sum-free sets in [n] and [n]^2."""

from .grid_core import (
    CLASSICAL,
    GridInputError,
    GridSet,
    SchurParams,
    Violation,
    density,
    enumerate_triples,
    find_violation,
    is_sum_free,
    make_grid_set,
    parse_point_list,
    format_point_list,
)
from .constructions import (
    StripeSpec,
    cameron_optimal,
    conjecture_bound,
    mu_1d,
    one_d_extremal,
    pq_stripe,
    stripe_count,
    stripe_set,
    theorem2_bound,
)
from .solver import (
    SolveResult,
    brute_force_max,
    density_table,
    enumerate_optima,
    max_sum_free,
    random_maximal_sum_free,
)

__version__ = "0.1.0"

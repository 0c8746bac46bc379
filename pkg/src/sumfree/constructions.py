"""Extremal constructions and the closed-form sizes and bounds around them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .grid_core import CLASSICAL, GridInputError, GridSet, SchurParams


@dataclass(frozen=True)
class StripeSpec:
    """Diagonal band ``lower (<|<=) x + y (<|<=) upper`` inside ``[n]^2``."""

    n: int
    lower: Fraction
    upper: Fraction
    strict_lower: bool = False
    strict_upper: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lower", Fraction(self.lower))
        object.__setattr__(self, "upper", Fraction(self.upper))
        if self.n < 1:
            raise GridInputError(f"n must be positive, got {self.n}")

    def integer_range(self):
        """Smallest and largest admissible integer coordinate sum."""
        lo = math.floor(self.lower) + 1 if self.strict_lower else math.ceil(self.lower)
        hi = math.ceil(self.upper) - 1 if self.strict_upper else math.floor(self.upper)
        return lo, hi

    def contains_sum(self, s) -> bool:
        lo_ok = s > self.lower if self.strict_lower else s >= self.lower
        hi_ok = s < self.upper if self.strict_upper else s <= self.upper
        return lo_ok and hi_ok


def stripe_set(spec: StripeSpec) -> GridSet:
    n = spec.n
    lo, hi = spec.integer_range()
    r = np.arange(1, n + 1)
    s = r[:, None] + r[None, :]
    return GridSet(n, 2, (s >= lo) & (s <= hi))


def _points_with_sum_at_most(n: int, k: int) -> int:
    if k < 2:
        return 0
    if k >= 2 * n:
        return n * n
    if k <= n + 1:
        return (k - 1) * k // 2
    r = 2 * n - k
    return n * n - r * (r + 1) // 2


def stripe_count(spec: StripeSpec) -> int:
    """Size of :func:`stripe_set` from triangular numbers, without enumeration."""
    lo, hi = spec.integer_range()
    if hi < lo:
        return 0
    return _points_with_sum_at_most(spec.n, hi) - _points_with_sum_at_most(spec.n, lo - 1)


def cameron_u(n: int) -> int:
    return (4 * n + 7) // 5


def cameron_optimal(n: int) -> GridSet:
    """The band ``u <= x + y <= 2u - 1`` with ``u = floor((4n + 7) / 5)``."""
    if n < 2:
        raise GridInputError(f"cameron_optimal needs n >= 2, got {n}")
    u = cameron_u(n)
    return stripe_set(StripeSpec(n, u, 2 * u - 1))


def default_stripe_offset(n: int, params: SchurParams) -> Fraction:
    s = params.p + params.q
    return Fraction(2 * s * n, s * s + 1)


def pq_stripe_spec(n: int, params: SchurParams = CLASSICAL, a=None) -> StripeSpec:
    a = default_stripe_offset(n, params) if a is None else Fraction(a)
    if a <= 0:
        raise GridInputError(f"stripe offset a must be positive, got {a}")
    return StripeSpec(n, a, (params.p + params.q) * a, strict_lower=True, strict_upper=True)


def pq_stripe(n: int, params: SchurParams = CLASSICAL, a=None) -> GridSet:
    """The band ``a < x + y < (p + q) a``, which is (p,q)-sum-free for any a > 0.

    ``a`` defaults to the exact rational ``2(p+q)n / ((p+q)^2 + 1)``.
    """
    return stripe_set(pq_stripe_spec(n, params, a))


ONE_D_VARIANTS = ("odds", "upper_half", "shifted")


def one_d_extremal(n: int, variant: str = "odds") -> GridSet:
    """Sum-free subsets of ``[n]`` of size ``ceil(n/2)``.

    ``odds`` is the odd numbers, ``upper_half`` is ``ceil((n+1)/2)..n`` and
    ``shifted`` is the upper half moved down by one (even ``n`` only).
    """
    if n < 1:
        raise GridInputError(f"n must be positive, got {n}")
    r = np.arange(1, n + 1)
    start = -(-(n + 1) // 2)
    if variant == "odds":
        mask = r % 2 == 1
    elif variant == "upper_half":
        mask = r >= start
    elif variant == "shifted":
        if n % 2:
            raise GridInputError("the shifted variant needs even n")
        mask = (r >= start - 1) & (r <= n - 1)
    else:
        raise GridInputError(f"unknown variant {variant!r}; choose from {ONE_D_VARIANTS}")
    return GridSet(n, 1, mask)


def theorem2_bound(n: int, p: int) -> Fraction:
    """Leading term ``(1 - 2/(4p^2 + 1)) n^2`` of the (p,p) upper bound."""
    if p < 1:
        raise GridInputError(f"p must be positive, got {p}")
    return (1 - Fraction(2, 4 * p * p + 1)) * n * n


def conjecture_bound(n: int, params: SchurParams) -> Fraction:
    """Conjectured (p,q) extremal size ``(1 - 2/((p+q)^2 + 1)) n^2``."""
    s = params.p + params.q
    return (1 - Fraction(2, s * s + 1)) * n * n


def mu_1d(n: int) -> Fraction:
    """Maximum density of a sum-free subset of ``[n]``."""
    if n < 1:
        raise GridInputError(f"n must be positive, got {n}")
    if n % 2 == 0:
        return Fraction(1, 2)
    return Fraction(1, 2) + Fraction(1, 2 * n)

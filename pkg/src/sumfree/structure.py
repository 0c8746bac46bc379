"""Upper boundaries, Type 1 / Type 2 classification, closeness predicates,
stripe containment and the bounds derived from them.

Combinatorial quantities are exact fractions.  Floats appear only in the
continuous optimisation helpers (``f_eta_*``, ``lagrange_optimum``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np
from scipy import optimize

from .geometry import _cross
from .grid_core import GridInputError, GridSet


@dataclass(frozen=True)
class BoundaryLine:
    """Line through two adjoint points, ``y = m x + c``, with ``m < 0``."""

    p1: tuple
    p2: tuple
    m: Fraction
    c: Fraction

    @classmethod
    def through(cls, p1, p2):
        m, c = line_through(p1, p2)
        return cls(tuple(p1), tuple(p2), m, c)

    def value(self, x):
        return self.m * x + self.c


def line_through(p1, p2):
    """Gradient and y-intercept of the line through two points."""
    (x1, y1), (x2, y2) = p1, p2
    if x1 == x2:
        raise GridInputError(f"vertical line through {p1} and {p2}")
    m = Fraction(y2 - y1, 1) / (x2 - x1)
    return m, y1 - m * x1


@dataclass
class UpperBoundary:
    points: list
    lines: list
    # every adjoint pair, each ordered with increasing x
    pairs: list = field(default_factory=list)


def upper_boundary(S: GridSet) -> UpperBoundary:
    """Points of ``S`` lying on a negative-slope line with nothing of ``S`` above.

    Such a line is a supporting line of the convex hull containing two
    members, so it runs along a negative-slope edge of the upper hull.  All
    members on that edge qualify, collinear interior ones included.
    """
    if S.dim != 2:
        raise GridInputError("upper_boundary needs a 2-D set")
    if S.size == 0:
        raise GridInputError("upper_boundary of an empty set is undefined")
    pts = sorted(S)
    upper = []
    for p in pts:
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) >= 0:
            upper.pop()
        upper.append(p)
    lines = []
    members = set()
    pairs = []
    for a, b in zip(upper, upper[1:]):
        if b[0] > a[0] and b[1] < a[1]:
            line = BoundaryLine.through(a, b)
            on = sorted(q for q in pts if a[0] <= q[0] <= b[0] and q[1] == line.value(q[0]))
            lines.append(line)
            members.update(on)
            pairs.extend(combinations(on, 2))
    return UpperBoundary(sorted(members), lines, pairs)


def upper_boundary_bruteforce(S: GridSet) -> set:
    """Definitional check over all pairs; quadratic-times-linear."""
    pts = list(S)
    arr = np.array(pts, dtype=np.int64).reshape(-1, 2)
    out = set()
    for i, a in enumerate(pts):
        for j, b in enumerate(pts):
            if i == j or b[0] == a[0]:
                continue
            dx, dy = b[0] - a[0], b[1] - a[1]
            if dx * dy >= 0:
                continue
            # sign-normalised test for points strictly above the line
            if dx < 0:
                dx, dy = -dx, -dy
            above = dx * (arr[:, 1] - a[1]) - dy * (arr[:, 0] - a[0]) > 0
            if not above.any():
                out.add(a)
                break
    return out


def top_right_corner(S: GridSet) -> Optional[tuple]:
    """The member dominating all others coordinatewise, if there is one."""
    if S.size == 0:
        raise GridInputError("top_right_corner of an empty set is undefined")
    xy = S.coords()
    corner = (int(xy[:, 0].max()), int(xy[:, 1].max()))
    return corner if corner in S else None


@dataclass
class TypeWitness:
    kind: str  # "Type1", "Type2" or "Neither"
    line: Optional[BoundaryLine]
    conditions: dict

    @property
    def p1(self):
        return self.line.p1 if self.line else None

    @property
    def p2(self):
        return self.line.p2 if self.line else None


def _type1_conditions(n, p1, p2):
    (x1, y1), (x2, y2) = p1, p2
    m, c = line_through(p1, p2)
    ratio = Fraction(y1, x1)
    return {
        "x2>x1": x2 > x1,
        "y2<y1": y2 < y1,
        "m<-y1/x1": m < -ratio,
        "-y1/x1<=-1": -ratio <= -1,
        "c>n": c > n,
        "-c<=nm": -c <= n * m,
    }


def _type2_conditions(n, p1, p2):
    (x1, y1), (x2, y2) = p1, p2
    m, c = line_through(p1, p2)
    return {
        "x2>x1": x2 > x1,
        "y2<y1": y2 < y1,
        "-y1/x1<=m": -Fraction(y1, x1) <= m,
        "m<=-y2/x2": m <= -Fraction(y2, x2),
        "y2<=c/2": y2 <= c / 2,
        "c/2<=y1": c / 2 <= y1,
        "c>n": c > n,
        "-c<nm": -c < n * m,
    }


def classify_type(S: GridSet) -> TypeWitness:
    """Classify ``S`` as Type 1, Type 2 or neither.

    Type 1 uses ``p1`` = the lexicographically smallest boundary point that
    maximises ``x*y`` over the whole boundary and has ``x <= y``, and scans
    its adjoint partners.  Type 2 scans every adjoint pair.  The condition
    record of the first success is returned; on failure the record holds the
    last Type 1 and Type 2 attempts.
    """
    n = S.n
    ub = upper_boundary(S)
    record = {"boundary_nonempty": bool(ub.points)}
    if not ub.points:
        return TypeWitness("Neither", None, record)

    best = max(x * y for x, y in ub.points)
    cands = [pt for pt in ub.points if pt[0] * pt[1] == best and pt[0] <= pt[1]]
    record["type1_p1_exists"] = bool(cands)
    if cands:
        p1 = cands[0]
        record["type1_p1"] = p1
        partners = sorted({b if a == p1 else a for a, b in ub.pairs if p1 in (a, b)})
        last = None
        for p2 in partners:
            conds = _type1_conditions(n, p1, p2)
            last = (p2, conds)
            if all(conds.values()):
                record.update({"type1": conds})
                return TypeWitness("Type1", BoundaryLine.through(p1, p2), record)
        if last is not None:
            record["type1_last_p2"] = last[0]
            record["type1"] = last[1]

    last = None
    for p1, p2 in ub.pairs:
        conds = _type2_conditions(n, p1, p2)
        last = ((p1, p2), conds)
        if all(conds.values()):
            record["type2"] = conds
            return TypeWitness("Type2", BoundaryLine.through(p1, p2), record)
    if last is not None:
        record["type2_last_pair"] = last[0]
        record["type2"] = last[1]
    return TypeWitness("Neither", None, record)


def failing_conditions(w: TypeWitness) -> list:
    out = []
    for key in ("type1", "type2"):
        out.extend(f"{key}:{k}" for k, v in w.conditions.get(key, {}).items() if not v)
    return out


# stripe containment

def _stripe_sums(S: GridSet):
    xy = S.coords()
    return xy.sum(axis=1)


def stripe_containment(S: GridSet, gamma) -> dict:
    """Check ``4n/5 - gamma n <= x + y < 8n/5 + gamma n`` for every member."""
    if S.dim != 2:
        raise GridInputError("stripe_containment needs a 2-D set")
    n = S.n
    gamma = Fraction(gamma)
    lo = Fraction(4 * n, 5) - gamma * n
    hi = Fraction(8 * n, 5) + gamma * n
    sums = _stripe_sums(S)
    # x + y is an integer, so compare against integer thresholds
    bad = (sums < math.ceil(lo)) | (sums >= math.ceil(hi))
    offenders = [tuple(int(v) for v in pt) for pt in S.coords()[bad]]
    return {"contained": not offenders, "offenders": offenders, "lower": lo, "upper": hi}


def min_gamma(S: GridSet) -> Fraction:
    """Least ``gamma >= 0`` compatible with stripe containment.

    The lower constraint is attained at this value; the upper one is strict,
    so when it binds containment holds only for strictly larger gamma.
    """
    n = S.n
    smin, smax = _sum_extremes(S)
    return max(Fraction(0), (Fraction(4 * n, 5) - smin) / n, (smax - Fraction(8 * n, 5)) / n)


def _sum_extremes(S: GridSet):
    """Smallest and largest ``x + y`` over members, from per-row first/last hits."""
    if S.dim != 2 or S.size == 0:
        raise GridInputError("needs a nonempty 2-D set")
    mask = S.mask
    rows = np.flatnonzero(mask.any(axis=1))
    sub = mask[rows]
    first = sub.argmax(axis=1)
    last = S.n - 1 - sub[:, ::-1].argmax(axis=1)
    return int((rows + first).min()) + 2, int((rows + last).max()) + 2


def min_gamma_binding(S: GridSet) -> str:
    """Which side of the stripe determines :func:`min_gamma`."""
    n = S.n
    smin, smax = _sum_extremes(S)
    low = (Fraction(4 * n, 5) - smin) / n
    high = (smax - Fraction(8 * n, 5)) / n
    if max(low, high) <= 0:
        return "none"
    return "upper" if high >= low else "lower"


# size bounds for the two types

def er_type1_bound(n, x1, y1, m, c) -> Fraction:
    """``(n+1)^2 - x1*y1/2 + (c + n m - n)^2 / (2m)``."""
    m, c = Fraction(m), Fraction(c)
    if m >= 0:
        raise GridInputError(f"gradient must be negative, got {m}")
    return (n + 1) ** 2 - Fraction(x1 * y1, 2) + (c + n * m - n) ** 2 / (2 * m)


def er_type2_bound(n, m, c) -> Fraction:
    """``(n+1)^2 + c^2/(8m) + (n - n m - c)^2 / (2m)``."""
    m, c = Fraction(m), Fraction(c)
    if m >= 0:
        raise GridInputError(f"gradient must be negative, got {m}")
    return (n + 1) ** 2 + c * c / (8 * m) + (n - n * m - c) ** 2 / (2 * m)


def type_bound(S: GridSet, witness: TypeWitness = None):
    """Evaluate the bound matching the witness type, or None for Neither."""
    w = witness or classify_type(S)
    if w.kind == "Type1":
        x1, y1 = w.line.p1
        return er_type1_bound(S.n, x1, y1, w.line.m, w.line.c)
    if w.kind == "Type2":
        return er_type2_bound(S.n, w.line.m, w.line.c)
    return None


# the continuous relaxation at n = 1

def _radical(eta):
    return math.sqrt(1 + 2 * eta + 1.25 * eta * eta)


def f_normalized(x, m, c):
    """Leading-order coefficient of ``f(x, m, c)`` with ``n = 1``.

    The ``(n+1)^2`` term is replaced by ``n^2``; the dropped ``2n + 1`` is a
    lower-order offset.
    """
    return 1.0 - 0.5 * (x * (m * x + c) - (c + m - 1.0) ** 2 / m)


def f_eta_closed_form(eta: float) -> float:
    return 1.6 + eta - _radical(eta)


@dataclass(frozen=True)
class LagrangePoint:
    m_star: float
    x_star: float
    c: float

    @property
    def value(self):
        return f_normalized(self.x_star, self.m_star, self.c)


def lagrange_optimum(eta: float) -> LagrangePoint:
    r = _radical(eta)
    return LagrangePoint(-r, (0.8 + eta / 2) / r, 1.6 + eta)


@dataclass(frozen=True)
class NumericOptimum:
    value: float
    x: float
    m: float
    c: float
    normalization: str = "(n+1)^2 -> n^2 at n = 1"


def _inner_min(m, c):
    """min over 0 <= x <= 1 of f, i.e. x taken where x*(m x + c) peaks."""
    res = optimize.minimize_scalar(
        lambda x: f_normalized(x, m, c), bounds=(0.0, 1.0), method="bounded",
        options={"xatol": 1e-12},
    )
    best_x, best = res.x, res.fun
    for edge in (0.0, 1.0):
        v = f_normalized(edge, m, c)
        if v < best:
            best_x, best = edge, v
    return best_x, best


def f_eta_numeric(eta: float, resolution: int = 400, m_range=(-6.0, -1e-3)) -> NumericOptimum:
    """Numerically evaluate ``f_eta`` with ``c = 8/5 + eta`` at ``n = 1``.

    ``f`` is convex in ``x`` for ``m < 0``: the bound is tight when ``p1``
    carries the largest product ``x*y`` along the line, so ``x`` minimises
    ``f`` while ``m`` maximises it.  The saddle value is found by a grid
    over ``m`` (inner minimisation over ``x`` on ``[0, 1]``) followed by a
    bounded scalar refinement around the best grid cell.  Nothing here uses
    the closed form.
    """
    if resolution < 100:
        raise GridInputError("resolution must be at least 100")
    c = 1.6 + eta
    ms = np.linspace(m_range[0], m_range[1], resolution)
    xs = np.linspace(0.0, 1.0, resolution)
    F = f_normalized(xs[:, None], ms[None, :], c)
    profile = F.min(axis=0)
    j = int(np.argmax(profile))
    lo = ms[max(j - 1, 0)]
    hi = ms[min(j + 1, resolution - 1)]
    res = optimize.minimize_scalar(
        lambda m: -_inner_min(m, c)[1], bounds=(lo, hi), method="bounded",
        options={"xatol": 1e-12},
    )
    m = float(res.x)
    x, val = _inner_min(m, c)
    return NumericOptimum(float(val), float(x), m, c)


def constrained_gradient(eta: float, x: float, m: float, h: float = 1e-5):
    """Central-difference gradient of ``f`` in ``(x, m)`` at fixed ``c``."""
    c = 1.6 + eta
    gx = (f_normalized(x + h, m, c) - f_normalized(x - h, m, c)) / (2 * h)
    gm = (f_normalized(x, m + h, c) - f_normalized(x, m - h, c)) / (2 * h)
    return gx, gm


# closeness

def _box_segment(m, c, n):
    """Endpoints of ``y = m x + c`` clipped to ``[0, n]^2``, or None."""
    m, c = Fraction(m), Fraction(c)
    cands = []
    for x in (Fraction(0), Fraction(n)):
        y = m * x + c
        if 0 <= y <= n:
            cands.append((x, y))
    if m != 0:
        for y in (Fraction(0), Fraction(n)):
            x = (y - c) / m
            if 0 <= x <= n:
                cands.append((x, y))
    if not cands:
        return None
    cands.sort()
    return cands[0], cands[-1]


def line_close(line, C, eps, n) -> bool:
    """Whether the part of ``line`` inside ``[0, n]^2`` stays within
    ``|x + y - C| < eps * n``.

    ``line`` is a :class:`BoundaryLine` or an ``(m, c)`` pair.  The deviation
    is linear along the line, so the two clipped endpoints decide.
    """
    m, c = (line.m, line.c) if isinstance(line, BoundaryLine) else line
    seg = _box_segment(m, c, n)
    if seg is None:
        return False
    C, eps = Fraction(C), Fraction(eps)
    return all(abs(x + y - C) < eps * n for x, y in seg)


def point_close(p, target, eps, n) -> bool:
    eps = Fraction(eps)
    return all(abs(Fraction(a) - Fraction(b)) <= eps * n for a, b in zip(p, target))


def has_close_point(S: GridSet, target, eps) -> bool:
    return any(point_close(pt, target, eps, S.n) for pt in S)

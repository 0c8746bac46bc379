"""Exact convex-polygon areas, lattice counts, pairing sets and the
exclusion-lemma checkers built on them.

Everything here is exact: vertices are :class:`fractions.Fraction` and lattice
counts are integers.  Regions are closed, so boundary lattice points count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


from .grid_core import GridInputError, GridSet, SchurParams, is_sum_free


class LemmaPreconditionError(ValueError):
    """The inputs do not satisfy the hypotheses of the lemma being checked."""


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> list:
    """Counter-clockwise hull without collinear vertices (monotone chain)."""
    pts = sorted(set((Fraction(x), Fraction(y)) for x, y in points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


class ConvexPolygon:
    """A convex polygon with rational vertices, stored counter-clockwise.

    Input may be in either orientation and may repeat collinear vertices;
    it must however already be convex (every vertex on the hull boundary).
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices: Iterable):
        given = [(Fraction(x), Fraction(y)) for x, y in vertices]
        hull = convex_hull(given)
        if len(hull) >= 3:
            for v in given:
                if not _on_boundary(hull, v):
                    raise GridInputError(f"vertex {tuple(map(str, v))} breaks convexity")
        self.vertices = tuple(hull)

    def __repr__(self):
        vs = ", ".join(f"({x}, {y})" for x, y in self.vertices)
        return f"ConvexPolygon([{vs}])"

    @property
    def degenerate(self) -> bool:
        return len(self.vertices) < 3

    def scaled(self, t) -> "ConvexPolygon":
        t = Fraction(t)
        return ConvexPolygon([(x * t, y * t) for x, y in self.vertices])

    def translated(self, dx, dy) -> "ConvexPolygon":
        dx, dy = Fraction(dx), Fraction(dy)
        return ConvexPolygon([(x + dx, y + dy) for x, y in self.vertices])

    def edges(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def contains(self, pt) -> bool:
        """Closed containment test."""
        pt = (Fraction(pt[0]), Fraction(pt[1]))
        if self.degenerate:
            return False
        return all(_cross(a, b, pt) >= 0 for a, b in self.edges())


def _on_boundary(hull, v):
    inside = True
    on_edge = False
    for i in range(len(hull)):
        a, b = hull[i], hull[(i + 1) % len(hull)]
        c = _cross(a, b, v)
        if c < 0:
            inside = False
        elif c == 0 and min(a[0], b[0]) <= v[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= v[1] <= max(a[1], b[1]):
            on_edge = True
    return inside and on_edge


def polygon_area(P: ConvexPolygon) -> Fraction:
    """Shoelace area; zero for fewer than three vertices."""
    if P.degenerate:
        return Fraction(0)
    twice = sum(a[0] * b[1] - b[0] * a[1] for a, b in P.edges())
    return abs(twice) / 2


def _row_interval(P: ConvexPolygon, y: Fraction):
    """The x-range of ``P`` on the horizontal line at height ``y``, or None."""
    lo = hi = None
    for a, b in P.edges():
        (x0, y0), (x1, y1) = a, b
        if y0 == y1:
            if y0 == y:
                cand = (min(x0, x1), max(x0, x1))
            else:
                continue
        elif min(y0, y1) <= y <= max(y0, y1):
            x = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
            cand = (x, x)
        else:
            continue
        lo = cand[0] if lo is None else min(lo, cand[0])
        hi = cand[1] if hi is None else max(hi, cand[1])
    if lo is None:
        return None
    return lo, hi


def lattice_count(P: ConvexPolygon) -> int:
    """Number of integer points in the closed polygon (row scanline)."""
    if P.degenerate:
        # segments and points still carry lattice points
        vs = P.vertices
        if not vs:
            return 0
        if len(vs) == 1:
            x, y = vs[0]
            return int(x.denominator == 1 and y.denominator == 1)
        return _segment_lattice_count(*vs)
    ys = [v[1] for v in P.vertices]
    total = 0
    for y in range(math.ceil(min(ys)), math.floor(max(ys)) + 1):
        iv = _row_interval(P, Fraction(y))
        if iv is None:
            continue
        lo, hi = iv
        k = math.floor(hi) - math.ceil(lo) + 1
        if k > 0:
            total += k
    return total


def _segment_lattice_count(a, b):
    count = 0
    (x0, y0), (x1, y1) = a, b
    for y in range(math.ceil(min(y0, y1)), math.floor(max(y0, y1)) + 1):
        if y0 == y1:
            count += max(0, math.floor(max(x0, x1)) - math.ceil(min(x0, x1)) + 1)
            continue
        x = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
        count += x.denominator == 1
    return count


def boundary_lattice_count(P: ConvexPolygon) -> int:
    """Lattice points on the boundary of a lattice-vertex polygon (gcd rule)."""
    total = 0
    for a, b in P.edges():
        dx, dy = b[0] - a[0], b[1] - a[1]
        if dx.denominator != 1 or dy.denominator != 1:
            raise GridInputError("boundary_lattice_count needs lattice vertices")
        total += math.gcd(int(dx), int(dy))
    return total


DEFAULT_TRANSLATES = ((0, 0), (1, 0), (0, 1), (3, 7), (-5, 2))


def discrepancy_profile(P: ConvexPolygon, dilations: Sequence, translates=DEFAULT_TRANSLATES):
    """``|Lambda(tP + a) - area(tP + a)|`` for each dilation ``t``.

    Returns a list of dicts with the discrepancy at ``a = 0``, the largest
    value over the sampled translates, and both divided by ``t``.  The
    supremum over all translates is only sampled here, never computed.
    """
    rows = []
    for t in dilations:
        t = Fraction(t)
        if t <= 0:
            raise GridInputError(f"dilation must be positive, got {t}")
        tP = P.scaled(t)
        area = polygon_area(tP)
        base = abs(lattice_count(tP) - area)
        worst = base
        for dx, dy in translates:
            moved = tP.translated(dx, dy)
            worst = max(worst, abs(lattice_count(moved) - area))
        rows.append({
            "t": t,
            "area": area,
            "discrepancy": base,
            "max_over_translates": worst,
            "ratio": base / t,
            "max_ratio": worst / t,
        })
    return rows


# pairing sets

def _reflect(pt, a, p):
    return tuple(Fraction(ai, p) - Fraction(xi) for ai, xi in zip(a, pt))


def is_pairing_set(P: Iterable, a, p: int = 1) -> bool:
    """True iff ``P`` is closed under ``x -> a/p - x`` (exact rationals)."""
    pts = {tuple(Fraction(c) for c in x) for x in P}
    return all(_reflect(x, a, p) in pts for x in pts)


@dataclass(frozen=True)
class PairingRegion:
    """Lattice points ``base`` of a region meant to pair around ``anchor / scale``.

    ``closed`` records whether ``base`` really is closed under
    ``x -> anchor/scale - x``; ``box`` is the rational box it came from,
    when there is one.
    """

    base: frozenset
    anchor: tuple
    scale: int = 1
    closed: bool = True
    box: tuple = None

    @property
    def lattice_count(self) -> int:
        return len(self.base)

    def closed_core(self) -> frozenset:
        """Largest subset of ``base`` whose reflections all stay in ``base``."""
        return frozenset(x for x in self.base if _reflect(x, self.anchor, self.scale) in self._base_frac)

    @property
    def _base_frac(self):
        return {tuple(Fraction(c) for c in x) for x in self.base}


def rectangle_pairing(a, p: int = 1) -> PairingRegion:
    """Lattice points of the box ``[0, a1/p] x [0, a2/p]``.

    The real box is always a p-pairing set for ``a``; its lattice part is
    only closed when ``p`` divides both coordinates of ``a``.
    """
    if p < 1:
        raise GridInputError(f"p must be positive, got {p}")
    a = (int(a[0]), int(a[1]))
    xs = range(0, a[0] // p + 1)
    ys = range(0, a[1] // p + 1)
    base = frozenset((x, y) for x in xs for y in ys)
    box = (Fraction(a[0], p), Fraction(a[1], p))
    return PairingRegion(base, a, p, is_pairing_set(base, a, p), box)


def _count_in(S: GridSet, pts) -> int:
    return sum(1 for x in pts if x in S)


def _require_member(S: GridSet, a):
    if S.dim != 2:
        raise LemmaPreconditionError("lemma checkers work on 2-D sets")
    if tuple(a) not in S:
        raise LemmaPreconditionError(f"anchor {tuple(a)} is not in S")


def check_pairing_bound(S: GridSet, a, P: PairingRegion, params: SchurParams = None) -> dict:
    """Check ``|P ∩ S| <= Lambda(P) / 2`` for a (p-)pairing set of ``a ∈ S``.

    ``S`` must be (p,p)-sum-free with ``p = P.scale`` unless ``params`` says
    otherwise.  When the lattice part of ``P`` is not closed under the
    reflection, the bound is applied to its closed core and the report says
    so; the full box count is still reported.
    """
    params = params or SchurParams(P.scale, P.scale)
    _require_member(S, a)
    if tuple(a) != tuple(P.anchor):
        raise LemmaPreconditionError("pairing region is anchored at a different point")
    if not is_sum_free(S, params):
        raise LemmaPreconditionError(f"S is not ({params.p},{params.q})-sum-free")
    region = P.base if P.closed else P.closed_core()
    count = _count_in(S, region)
    bound = Fraction(len(region), 2)
    report = {
        "lemma": "pairing",
        "count": count,
        "lattice_count": P.lattice_count,
        "region_count": len(region),
        "closed": P.closed,
        "bound": bound,
        "holds": count <= bound,
    }
    if not P.closed:
        # literal reading: half the lattice count of the whole region
        box_count = _count_in(S, P.base)
        report.update(box_count=box_count, box_bound=Fraction(P.lattice_count, 2),
                      box_holds=2 * box_count <= P.lattice_count)
    return report


def _lattice_points(T):
    out = []
    for t in T:
        t = tuple(t)
        if not all(Fraction(c).denominator == 1 for c in t):
            raise GridInputError(f"{t} is not a lattice point")
        out.append((int(t[0]), int(t[1])))
    return set(out)


def check_translate_bound(S: GridSet, a, T: Iterable, sign: str = "+") -> dict:
    """Check ``|S ∩ (T ∪ (a ± T))| <= Lambda(T)`` for sum-free ``S`` and ``a ∈ S``."""
    if sign not in ("+", "-"):
        raise GridInputError(f"sign must be '+' or '-', got {sign!r}")
    _require_member(S, a)
    if not is_sum_free(S):
        raise LemmaPreconditionError("S is not sum-free")
    T = _lattice_points(T)
    s = 1 if sign == "+" else -1
    moved = {(a[0] + s * t[0], a[1] + s * t[1]) for t in T}
    union = T | moved
    count = _count_in(S, union)
    return {
        "lemma": "translate",
        "sign": sign,
        "count": count,
        "bound": len(T),
        "holds": count <= len(T),
    }


def check_p_translate_bound(S: GridSet, a, T: Iterable, p: int) -> dict:
    """Check ``|S ∩ (p(a + T) ∪ T)| <= Lambda(T)`` for (p,p)-sum-free ``S``."""
    _require_member(S, a)
    if not is_sum_free(S, SchurParams(p, p)):
        raise LemmaPreconditionError(f"S is not ({p},{p})-sum-free")
    T = _lattice_points(T)
    moved = {(p * (a[0] + t[0]), p * (a[1] + t[1])) for t in T}
    union = T | moved
    count = _count_in(S, union)
    return {
        "lemma": "p-translate",
        "p": p,
        "count": count,
        "bound": len(T),
        "holds": count <= len(T),
    }

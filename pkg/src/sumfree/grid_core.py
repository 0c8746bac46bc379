"""Point sets in [n] and [n]^2 and (p,q)-sum-freeness.

A point is a plain ``int`` in dimension 1 and an ``(x, y)`` tuple in
dimension 2.  Coordinates start at 1.  Membership is stored as a dense
boolean array indexed by ``(x-1, y-1)``, so the flat cell key is
``(x-1)*n + (y-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Union

import numpy as np

Point = Union[int, tuple]


class GridInputError(ValueError):
    """Raised for malformed grid input (bounds, dimensions, file syntax)."""


@dataclass(frozen=True)
class SchurParams:
    """Coefficients of the forbidden equation ``p*x + q*y = z``."""

    p: int = 1
    q: int = 1

    def __post_init__(self):
        for name in ("p", "q"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 1:
                raise GridInputError(f"{name} must be a positive integer, got {v!r}")

    @property
    def symmetric(self) -> bool:
        return self.p == self.q


CLASSICAL = SchurParams(1, 1)


@dataclass(frozen=True)
class Violation:
    """A witness ``p*x + q*y = z`` with all three points in the offending set."""

    x: Point
    y: Point
    z: Point
    params: SchurParams = CLASSICAL

    def __str__(self):
        return f"{self.params.p}*{self.x} + {self.params.q}*{self.y} = {self.z}"


def _as_coords(pt, dim):
    if dim == 1:
        if isinstance(pt, (tuple, list)):
            if len(pt) != 1:
                raise GridInputError(f"point {pt!r} is not one-dimensional")
            pt = pt[0]
        return (int(pt),)
    if not isinstance(pt, (tuple, list)) or len(pt) != 2:
        raise GridInputError(f"point {pt!r} is not two-dimensional")
    return (int(pt[0]), int(pt[1]))


class GridSet:
    """An immutable subset of the grid ``[n]^dim``.

    Iteration yields members in lexicographic order.
    """

    __slots__ = ("n", "dim", "_mask", "_size")

    def __init__(self, n: int, dim: int, mask: np.ndarray):
        if dim not in (1, 2):
            raise GridInputError(f"dim must be 1 or 2, got {dim}")
        if n < 1:
            raise GridInputError(f"n must be positive, got {n}")
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (n,) * dim:
            raise GridInputError(f"mask shape {mask.shape} does not match n={n}, dim={dim}")
        mask = mask.copy()
        mask.flags.writeable = False
        self.n = int(n)
        self.dim = dim
        self._mask = mask
        self._size = int(mask.sum())

    # construction helpers

    @classmethod
    def empty(cls, n, dim=2):
        return cls(n, dim, np.zeros((n,) * dim, dtype=bool))

    @classmethod
    def full(cls, n, dim=2):
        return cls(n, dim, np.ones((n,) * dim, dtype=bool))

    @classmethod
    def from_cells(cls, n, dim, cells: Iterable[int]):
        """Build from flat cell keys ``(x-1)*n + (y-1)``."""
        flat = np.zeros(n**dim, dtype=bool)
        idx = np.fromiter(cells, dtype=np.int64)
        if idx.size:
            flat[idx] = True
        return cls(n, dim, flat.reshape((n,) * dim))

    # container protocol

    @property
    def mask(self) -> np.ndarray:
        """Read-only boolean membership array."""
        return self._mask

    @property
    def size(self) -> int:
        return self._size

    def __len__(self):
        return self._size

    def __contains__(self, pt) -> bool:
        try:
            c = _as_coords(pt, self.dim)
        except GridInputError:
            return False
        if not all(1 <= v <= self.n for v in c):
            return False
        return bool(self._mask[tuple(v - 1 for v in c)])

    def __iter__(self) -> Iterator[Point]:
        if self.dim == 1:
            for i in np.flatnonzero(self._mask):
                yield int(i) + 1
        else:
            for x, y in np.argwhere(self._mask):
                yield (int(x) + 1, int(y) + 1)

    def __eq__(self, other):
        if not isinstance(other, GridSet):
            return NotImplemented
        return (self.n, self.dim) == (other.n, other.dim) and np.array_equal(self._mask, other._mask)

    def __hash__(self):
        return hash((self.n, self.dim, self._mask.tobytes()))

    def __repr__(self):
        pts = list(self)
        shown = pts if len(pts) <= 8 else pts[:8] + ["..."]
        return f"GridSet(n={self.n}, dim={self.dim}, size={self._size}, {shown})"

    def points(self) -> list:
        return list(self)

    def cells(self) -> np.ndarray:
        """Flat cell keys of the members, ascending."""
        return np.flatnonzero(self._mask.ravel())

    def coords(self) -> np.ndarray:
        """Members as a ``(size, dim)`` integer array of 1-based coordinates."""
        return np.argwhere(self._mask) + 1

    # set algebra

    def _check_compatible(self, other):
        if (self.n, self.dim) != (other.n, other.dim):
            raise GridInputError("grid sets live on different grids")

    def __or__(self, other):
        self._check_compatible(other)
        return GridSet(self.n, self.dim, self._mask | other._mask)

    def __and__(self, other):
        self._check_compatible(other)
        return GridSet(self.n, self.dim, self._mask & other._mask)

    def __sub__(self, other):
        self._check_compatible(other)
        return GridSet(self.n, self.dim, self._mask & ~other._mask)

    def issubset(self, other) -> bool:
        self._check_compatible(other)
        return not np.any(self._mask & ~other._mask)

    def with_point(self, pt) -> "GridSet":
        c = _as_coords(pt, self.dim)
        m = self._mask.copy()
        m[tuple(v - 1 for v in c)] = True
        return GridSet(self.n, self.dim, m)

    def without_point(self, pt) -> "GridSet":
        c = _as_coords(pt, self.dim)
        m = self._mask.copy()
        m[tuple(v - 1 for v in c)] = False
        return GridSet(self.n, self.dim, m)

    def transpose(self) -> "GridSet":
        if self.dim == 1:
            return self
        return GridSet(self.n, 2, self._mask.T)


def make_grid_set(n: int, dim: int, points: Iterable) -> GridSet:
    """Build a :class:`GridSet`; duplicate points are merged.

    Raises :class:`GridInputError` naming the first out-of-bounds point.
    """
    if dim not in (1, 2):
        raise GridInputError(f"dim must be 1 or 2, got {dim}")
    if n < 1:
        raise GridInputError(f"n must be positive, got {n}")
    mask = np.zeros((n,) * dim, dtype=bool)
    for pt in points:
        c = _as_coords(pt, dim)
        if not all(1 <= v <= n for v in c):
            shown = c[0] if dim == 1 else c
            raise GridInputError(f"point {shown} lies outside [{n}]^{dim}")
        mask[tuple(v - 1 for v in c)] = True
    return GridSet(n, dim, mask)


def _to_point(coords, dim):
    if dim == 1:
        return int(coords[0])
    return (int(coords[0]), int(coords[1]))


@lru_cache(maxsize=64)
def triple_cells(n: int, dim: int, params: SchurParams) -> np.ndarray:
    """All forbidden triples as a ``(k, 3)`` array of flat cell keys.

    Rows are ordered like :func:`enumerate_triples`.  The result is cached
    and read-only.
    """
    pts = np.argwhere(np.ones((n,) * dim, dtype=bool)) + 1  # lexicographic
    p, q = params.p, params.q
    rows = []
    for i, x in enumerate(pts):
        z = p * x + q * pts
        ok = np.all(z <= n, axis=1)
        if params.symmetric:
            ok[:i] = False
        js = np.flatnonzero(ok)
        if js.size == 0:
            continue
        zc = z[js] - 1
        zkey = zc[:, 0] * n + zc[:, 1] if dim == 2 else zc[:, 0]
        block = np.empty((js.size, 3), dtype=np.int64)
        block[:, 0] = i
        block[:, 1] = js
        block[:, 2] = zkey
        rows.append(block)
    out = np.concatenate(rows) if rows else np.zeros((0, 3), dtype=np.int64)
    out.flags.writeable = False
    return out


def cell_to_point(cell: int, n: int, dim: int) -> Point:
    if dim == 1:
        return int(cell) + 1
    return (int(cell) // n + 1, int(cell) % n + 1)


def point_to_cell(pt, n: int, dim: int) -> int:
    c = _as_coords(pt, dim)
    return c[0] - 1 if dim == 1 else (c[0] - 1) * n + (c[1] - 1)


def enumerate_triples(n: int, dim: int, params: SchurParams = CLASSICAL) -> list:
    """Forbidden triples ``(x, y, z)`` of the grid, ``p*x + q*y = z``.

    Ordered lexicographically on ``(x, y)``.  For ``p == q`` each unordered
    pair is listed once with ``x <= y``; otherwise both orders appear.
    """
    if n < 1:
        raise GridInputError(f"n must be positive, got {n}")
    return [
        tuple(cell_to_point(c, n, dim) for c in row)
        for row in triple_cells(n, dim, params).tolist()
    ]


def _member_array(S: GridSet, coords: np.ndarray) -> np.ndarray:
    """Membership of each row of ``coords`` (out-of-grid rows are False)."""
    inside = np.all((coords >= 1) & (coords <= S.n), axis=1)
    out = np.zeros(len(coords), dtype=bool)
    if inside.any():
        c = coords[inside] - 1
        out[inside] = S.mask[tuple(c.T)]
    return out


def _sum_profile_clear(S: GridSet, params: SchurParams) -> bool:
    """True if coordinate sums alone rule out every violation.

    Any triple has ``sum(z) = p*sum(x) + q*sum(y)``, so it is enough that no
    such combination of member sums is itself a member sum.
    """
    if S.dim == 1:
        sums = np.flatnonzero(S.mask) + 1
    else:
        n = S.n
        diag = np.zeros(2 * n + 1, dtype=bool)
        xs, ys = np.nonzero(S.mask)
        diag[xs + ys + 2] = True
        sums = np.flatnonzero(diag)
    present = np.zeros(int(sums.max()) + 1, dtype=bool)
    present[sums] = True
    top = len(present) - 1
    for s in sums:
        t = params.p * int(s) + params.q * sums
        t = t[t <= top]
        if t.size and present[t].any():
            return False
    return True


def find_violation(S: GridSet, params: SchurParams = CLASSICAL):
    """Return the lexicographically first :class:`Violation` in ``S``, or None.

    Pairs ``(x, y)`` are scanned in lexicographic order, ``x = y`` included.
    For ``p == q`` only ``x <= y`` is scanned since the equation is symmetric.
    """
    if S.size == 0:
        return None
    if _sum_profile_clear(S, params):
        return None
    pts = S.coords()
    p, q = params.p, params.q
    for i, x in enumerate(pts):
        ys = pts[i:] if params.symmetric else pts
        hit = _member_array(S, p * x + q * ys)
        if hit.any():
            y = ys[int(np.argmax(hit))]
            z = p * x + q * y
            # positive coefficients push z strictly past x and y
            assert not np.array_equal(z, x) and not np.array_equal(z, y)
            return Violation(_to_point(x, S.dim), _to_point(y, S.dim), _to_point(z, S.dim), params)
    return None


def is_sum_free(S: GridSet, params: SchurParams = CLASSICAL) -> bool:
    """True iff no ``x, y, z`` in ``S`` satisfy ``p*x + q*y = z``."""
    return find_violation(S, params) is None


def density(S: GridSet) -> Fraction:
    """``|S| / n^dim`` as an exact fraction."""
    return Fraction(S.size, S.n**S.dim)


# point-list text format

def format_point_list(S: GridSet, summary: bool = False) -> str:
    """Serialize as ``n=<n> dim=<d>`` then one point per line.

    With ``summary=True`` a trailing ``size=<k> density=<r>`` line is added.
    """
    lines = [f"n={S.n} dim={S.dim}"]
    for pt in S:
        lines.append(str(pt) if S.dim == 1 else f"{pt[0]} {pt[1]}")
    if summary:
        lines.append(f"size={S.size} density={density(S)}")
    return "\n".join(lines) + "\n"


def parse_point_list(text: str) -> GridSet:
    """Parse the point-list format.

    A ``size=<k> density=<r>`` summary line is accepted and must agree with
    the points read.  Anything else raises :class:`GridInputError` with the
    line number.
    """
    lines = text.splitlines()
    if not lines:
        raise GridInputError("line 1: missing header 'n=<n> dim=<d>'")
    header = lines[0].split()
    fields = dict(tok.split("=", 1) for tok in header if "=" in tok)
    if len(header) != 2 or set(fields) != {"n", "dim"}:
        raise GridInputError(f"line 1: bad header {lines[0]!r}")
    try:
        n, dim = int(fields["n"]), int(fields["dim"])
    except ValueError:
        raise GridInputError(f"line 1: bad header {lines[0]!r}") from None
    if dim not in (1, 2) or n < 1:
        raise GridInputError(f"line 1: bad header {lines[0]!r}")
    points = []
    summary = None
    for lineno, line in enumerate(lines[1:], start=2):
        toks = line.split()
        if not toks:
            raise GridInputError(f"line {lineno}: empty line")
        if summary is not None:
            raise GridInputError(f"line {lineno}: content after summary line")
        if toks[0].startswith("size="):
            summary = (lineno, toks)
            continue
        if len(toks) != dim:
            raise GridInputError(f"line {lineno}: expected {dim} integer(s), got {line!r}")
        try:
            coords = [int(t) for t in toks]
        except ValueError:
            raise GridInputError(f"line {lineno}: expected integers, got {line!r}") from None
        if not all(1 <= v <= n for v in coords):
            raise GridInputError(f"line {lineno}: point {line.strip()} outside [{n}]^{dim}")
        points.append(coords[0] if dim == 1 else tuple(coords))
    S = make_grid_set(n, dim, points)
    if summary is not None:
        lineno, toks = summary
        try:
            kv = dict(t.split("=", 1) for t in toks)
            ok = int(kv["size"]) == S.size and Fraction(kv["density"]) == density(S)
        except (KeyError, ValueError, ZeroDivisionError):
            raise GridInputError(f"line {lineno}: bad summary line") from None
        if not ok or set(kv) != {"size", "density"}:
            raise GridInputError(f"line {lineno}: summary does not match the points")
    return S


def read_point_list(path) -> GridSet:
    with open(path, "r", encoding="ascii") as fh:
        return parse_point_list(fh.read())


def write_point_list(S: GridSet, path, summary: bool = False) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_point_list(S, summary=summary))

"""Exact maximum (p,q)-sum-free sets.

Two independent routes are provided:

* :func:`brute_force_max` walks cells in lexicographic order with nothing
  but a counting bound.  It is the reference oracle for small grids.
* :func:`max_sum_free` is a branch-and-bound over the forbidden-triple
  hypergraph with unit propagation, a greedy disjoint-triple bound,
  construction-seeded incumbents and transpose symmetry breaking.

Both return a :class:`SolveResult`.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from . import constructions as cons
from .grid_core import (
    CLASSICAL,
    GridInputError,
    GridSet,
    SchurParams,
    cell_to_point,
    density,
    is_sum_free,
    triple_cells,
)

log = logging.getLogger(__name__)

BRUTE_FORCE_MAX_CELLS_2D = 26
BRUTE_FORCE_MAX_N_1D = 30
CHECKPOINT_MAGIC = "sumfree-checkpoint"
CHECKPOINT_VERSION = 1


class InstanceTooLarge(GridInputError):
    pass


@dataclass
class SolveResult:
    optimum: int
    witness: GridSet
    nodes: int
    proven: bool
    params: SchurParams = CLASSICAL
    bound_trace: Optional[dict] = None
    open_prefixes: list = field(default_factory=list)

    @property
    def density(self) -> Fraction:
        return density(self.witness)


# brute force

def _check_brute_force_size(n, dim):
    if dim == 2 and n * n > BRUTE_FORCE_MAX_CELLS_2D:
        raise InstanceTooLarge(
            f"brute force is limited to n^2 <= {BRUTE_FORCE_MAX_CELLS_2D} cells in 2-D (n={n})"
        )
    if dim == 1 and n > BRUTE_FORCE_MAX_N_1D:
        raise InstanceTooLarge(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N_1D} in 1-D (n={n})")
    if dim not in (1, 2):
        raise GridInputError(f"dim must be 1 or 2, got {dim}")


def _completing_pairs(n, dim, params):
    """For each cell v, bitmasks of the pairs (x, y) with p*x + q*y = v.

    Computed from coordinates directly so the oracle does not share the
    triple table used by the branch-and-bound.
    """
    if dim == 1:
        pts = [(i,) for i in range(1, n + 1)]
    else:
        pts = [(x, y) for x in range(1, n + 1) for y in range(1, n + 1)]
    index = {pt: i for i, pt in enumerate(pts)}
    pairs = [[] for _ in pts]
    for i, a in enumerate(pts):
        for j, b in enumerate(pts):
            z = tuple(params.p * u + params.q * v for u, v in zip(a, b))
            k = index.get(z)
            if k is not None:
                pairs[k].append((1 << i) | (1 << j))
    return pts, [tuple(sorted(set(m))) for m in pairs]


def _brute_force(n, dim, params, collect_ties=False, limit=None):
    """Include-first DFS in lexicographic cell order.

    Since ``z`` exceeds ``x`` and ``y`` in every coordinate, a newly added
    cell can only complete a triple as its ``z``.
    """
    _check_brute_force_size(n, dim)
    pts, pairs = _completing_pairs(n, dim, params)
    N = len(pts)
    best = [0]
    best_masks = [[0]]
    nodes = [0]
    truncated = [False]

    def rec(i, mask, size):
        nodes[0] += 1
        remaining = N - i
        if collect_ties:
            if size + remaining < best[0]:
                return
        elif size + remaining <= best[0]:
            return
        if i == N:
            if size > best[0]:
                best[0] = size
                best_masks[0] = [mask]
            elif collect_ties and size == best[0]:
                if limit is not None and len(best_masks[0]) >= limit:
                    truncated[0] = True
                else:
                    best_masks[0].append(mask)
            return
        if not any((mask & m) == m for m in pairs[i]):
            rec(i + 1, mask | (1 << i), size + 1)
        rec(i + 1, mask, size)

    rec(0, 0, 0)
    return pts, best[0], best_masks[0], nodes[0], truncated[0]


def _mask_to_set(pts, mask, n, dim):
    chosen = [pts[i] for i in range(len(pts)) if mask >> i & 1]
    if dim == 1:
        chosen = [c[0] for c in chosen]
    from .grid_core import make_grid_set

    return make_grid_set(n, dim, chosen)


def brute_force_max(n: int, dim: int = 2, params: SchurParams = CLASSICAL) -> SolveResult:
    """Exhaustive maximum; the witness is the lexicographically smallest optimum."""
    pts, best, masks, nodes, _ = _brute_force(n, dim, params)
    witness = _mask_to_set(pts, masks[0], n, dim)
    return SolveResult(best, witness, nodes, True, params)


@dataclass
class Optima:
    optimum: int
    sets: list
    truncated: bool

    def __iter__(self):
        return iter(self.sets)

    def __len__(self):
        return len(self.sets)


def enumerate_optima(n: int, dim: int = 2, params: SchurParams = CLASSICAL, limit: int = 1000) -> Optima:
    """All maximum sum-free sets (up to ``limit``), in lexicographic order."""
    pts, best, masks, _, truncated = _brute_force(n, dim, params, collect_ties=True, limit=limit)
    sets = [_mask_to_set(pts, m, n, dim) for m in masks]
    for S in sets:
        if not is_sum_free(S, params):
            raise AssertionError(f"enumerated optimum is not sum-free: {S}")
    return Optima(best, sets, truncated)


# random maximal sets

@lru_cache(maxsize=32)
def _incidence(n, dim, params):
    rows = triple_cells(n, dim, params)
    N = n**dim
    distinct = np.where(rows[:, 0] == rows[:, 1], 2, 3)
    cells = np.concatenate([rows[:, 0], rows[:, 1], rows[:, 2]])
    tids = np.tile(np.arange(len(rows)), 3)
    # drop the repeated member of x = y rows
    keep = np.ones(len(cells), dtype=bool)
    keep[len(rows): 2 * len(rows)] = rows[:, 0] != rows[:, 1]
    cells, tids = cells[keep], tids[keep]
    order = np.argsort(cells, kind="stable")
    cells, tids = cells[order], tids[order]
    starts = np.searchsorted(cells, np.arange(N + 1))
    return rows, distinct, tids, starts


def random_maximal_sum_free(n: int, dim: int = 2, params: SchurParams = CLASSICAL, seed: int = 0,
                            start: GridSet = None) -> GridSet:
    """Greedy maximal (p,q)-sum-free set, inserting cells in a seeded random order.

    ``start`` optionally gives a sum-free set to extend.
    """
    rows, distinct, tids, starts = _incidence(n, dim, params)
    N = n**dim
    rng = np.random.default_rng(seed)
    in_s = np.zeros(N, dtype=bool)
    blocked = np.zeros(N, dtype=bool)
    cnt = np.zeros(len(rows), dtype=np.int64)

    def add(v):
        in_s[v] = True
        idx = tids[starts[v]:starts[v + 1]]
        if idx.size == 0:
            return
        cnt[idx] += 1
        near = idx[cnt[idx] == distinct[idx] - 1]
        if near.size:
            r = rows[near]
            missing = np.where(~in_s[r[:, 0]], r[:, 0], np.where(~in_s[r[:, 1]], r[:, 1], r[:, 2]))
            blocked[missing] = True

    if start is not None:
        if not is_sum_free(start, params):
            raise GridInputError("start set is not sum-free")
        for v in start.cells():
            add(int(v))
    for v in rng.permutation(N):
        if not in_s[v] and not blocked[v]:
            add(int(v))
    return GridSet(n, dim, in_s.reshape((n,) * dim))


# branch and bound

def _incumbent_candidates(n, dim, params):
    """Constructions used to seed the search; only sum-free ones are kept."""
    s = params.p + params.q
    cands = []
    if dim == 1:
        r = np.arange(1, n + 1)
        for lo in range(1, n + 1):
            hi = min(n, s * lo - 1)
            cands.append(GridSet(n, 1, (r >= lo) & (r <= hi)))
        if params == CLASSICAL:
            cands += [cons.one_d_extremal(n, "odds"), cons.one_d_extremal(n, "upper_half")]
    else:
        if params == CLASSICAL and n >= 2:
            cands.append(cons.cameron_optimal(n))
        cands.append(cons.pq_stripe(n, params))
        for lo in range(2, 2 * n + 1):
            cands.append(cons.stripe_set(cons.StripeSpec(n, lo, s * lo - 1)))
    return [S for S in cands if is_sum_free(S, params)]


def best_construction(n, dim, params=CLASSICAL) -> GridSet:
    cands = _incumbent_candidates(n, dim, params)
    return max(cands, key=lambda S: S.size)


class _Timeout(Exception):
    pass


class _Search:
    """Mutable search state; all per-node work is plain Python on lists."""

    def __init__(self, n, dim, params, symmetry=True):
        self.n, self.dim, self.params = n, dim, params
        N = self.N = n**dim
        rows = triple_cells(n, dim, params).tolist()
        self.tri = [tuple(sorted(set(r))) for r in rows]
        self.incid = [[] for _ in range(N)]
        for t, members in enumerate(self.tri):
            for v in members:
                self.incid[v].append(t)
        self.size = [len(m) for m in self.tri]
        if dim == 2:
            sums = [(-(v // n + v % n), v) for v in range(N)]
        else:
            sums = [(-v, v) for v in range(N)]
        self.order = [v for _, v in sorted(sums)]
        self.sym = None
        if symmetry and dim == 2 and params.symmetric:
            self.sym = [(v % n) * n + v // n for v in range(N)]
        self.reset()

    def reset(self):
        N = self.N
        self.val = [0] * N  # 1 in, -1 out, 0 undecided
        self.nin = [0] * len(self.tri)
        self.nout = [0] * len(self.tri)
        self.trail = []
        self.count_in = 0
        self.undecided = N
        self.path = []
        self.nodes = 0

    # assignment with unit propagation

    def assign(self, v, value):
        stack = [(v, value)]
        while stack:
            u, x = stack.pop()
            cur = self.val[u]
            if cur == x:
                continue
            if cur != 0:
                return False
            self.val[u] = x
            self.trail.append(u)
            self.undecided -= 1
            if x == 1:
                self.count_in += 1
                for t in self.incid[u]:
                    self.nin[t] += 1
                    if self.nout[t] == 0:
                        k = self.size[t] - self.nin[t]
                        if k == 0:
                            return False
                        if k == 1:
                            for w in self.tri[t]:
                                if self.val[w] == 0:
                                    stack.append((w, -1))
            else:
                for t in self.incid[u]:
                    self.nout[t] += 1
        return True

    def undo(self, mark):
        while len(self.trail) > mark:
            u = self.trail.pop()
            x = self.val[u]
            self.val[u] = 0
            self.undecided += 1
            if x == 1:
                self.count_in -= 1
                for t in self.incid[u]:
                    self.nin[t] -= 1
            else:
                for t in self.incid[u]:
                    self.nout[t] -= 1

    def bound(self):
        """In-count plus undecided cells minus a greedy disjoint packing of
        live triples (no member out): each packed one loses an undecided cell."""
        val = self.val
        used = set()
        packed = 0
        for want in (2, 3):
            for t, members in enumerate(self.tri):
                if self.nout[t]:
                    continue
                free = [w for w in members if val[w] == 0]
                if len(free) != want:
                    continue
                if not used.isdisjoint(free):
                    continue
                used.update(free)
                packed += 1
        return self.count_in + self.undecided - packed

    def lex_ok(self):
        """Lex-leader test: the set must not lose to its transpose in branch order."""
        val, sym = self.val, self.sym
        for v in self.order:
            w = sym[v]
            if v == w:
                continue
            a, b = val[v], val[w]
            if a == 0 or b == 0:
                return True
            if a != b:
                return a == 1
        return True

    def replay(self, prefix):
        for v, x in prefix:
            self.path.append((v, x))
            if not self.assign(v, x):
                return False
        return True

    def run(self, best, deadline=None):
        """DFS from the current state.  Returns (best, witness cells or None)."""
        self.best = best
        self.found = None
        self.deadline = deadline
        self.open = []
        self._dfs()
        return self.best, self.found

    def _dfs(self):
        self.nodes += 1
        if self.deadline is not None and self.nodes & 63 == 0 and time.monotonic() > self.deadline:
            self.open.append(list(self.path))
            raise _Timeout
        if self.sym is not None and not self.lex_ok():
            return
        if self.bound() <= self.best:
            return
        v = next((u for u in self.order if self.val[u] == 0), None)
        if v is None:
            self.best = self.count_in
            self.found = [u for u in range(self.N) if self.val[u] == 1]
            return
        for x in (1, -1):
            mark = len(self.trail)
            self.path.append((v, x))
            try:
                if self.assign(v, x):
                    self._dfs()
            except _Timeout:
                if x == 1:
                    self.open.append(list(self.path[:-1]) + [(v, -1)])
                raise
            finally:
                self.undo(mark)
                self.path.pop()


def _solve_prefixes(n, dim, p, q, prefixes, best, deadline, symmetry):
    """Explore each prefix in turn; used both inline and in worker processes."""
    params = SchurParams(p, q)
    search = _Search(n, dim, params, symmetry=symmetry)
    found = None
    nodes = 0
    open_ = []
    timed_out = False
    for prefix in prefixes:
        if timed_out:
            open_.append(prefix)
            continue
        search.reset()
        if not search.replay(prefix):
            nodes += 1
            continue
        try:
            b, f = search.run(best, deadline)
        except _Timeout:
            timed_out = True
            b, f = search.best, search.found
            open_.extend(search.open)
        nodes += search.nodes
        if f is not None and b > best:
            best, found = b, f
    return best, found, nodes, open_


def _split(n, dim, params, target, symmetry):
    """Breadth-first prefixes covering the search space."""
    search = _Search(n, dim, params, symmetry=symmetry)
    frontier = [[]]
    while len(frontier) < target:
        grown = []
        progressed = False
        for prefix in frontier:
            search.reset()
            if not search.replay(prefix):
                continue
            v = next((u for u in search.order if search.val[u] == 0), None)
            if v is None:
                grown.append(prefix)
                continue
            progressed = True
            grown += [prefix + [(v, 1)], prefix + [(v, -1)]]
        frontier = grown
        if not progressed:
            break
    return frontier


@dataclass
class SolveOptions:
    time_limit: Optional[float] = None
    threads: int = 1
    seed_incumbent: Optional[GridSet] = None
    symmetry: bool = True
    checkpoint: Optional[str] = None
    split_target: int = 16


def max_sum_free(n: int, dim: int = 2, params: SchurParams = CLASSICAL, options: SolveOptions = None,
                 **kw) -> SolveResult:
    """Exact maximum (p,q)-sum-free subset of ``[n]^dim``.

    Keyword arguments override fields of :class:`SolveOptions`.  On
    ``time_limit`` expiry the result has ``proven=False`` and the incumbent
    size, which is a valid lower bound; with ``checkpoint`` set, the open
    subproblems are written there for :func:`resume`.

    With ``threads > 1`` the tree is split into a fixed set of prefixes
    handed to worker processes.  Optimum and ``proven`` do not depend on the
    worker count; the witness is deterministic for a given split but may
    differ from the sequential one.
    """
    options = options or SolveOptions()
    for k, v in kw.items():
        if not hasattr(options, k):
            raise TypeError(f"unknown option {k!r}")
        setattr(options, k, v)
    if dim not in (1, 2):
        raise GridInputError(f"dim must be 1 or 2, got {dim}")
    incumbent = best_construction(n, dim, params)
    seed = options.seed_incumbent
    if seed is not None:
        if (seed.n, seed.dim) != (n, dim) or not is_sum_free(seed, params):
            raise GridInputError("seed incumbent must be a sum-free set on the same grid")
        if seed.size > incumbent.size:
            incumbent = seed
    deadline = None if options.time_limit is None else time.monotonic() + options.time_limit
    if options.threads > 1:
        prefixes = _split(n, dim, params, options.split_target, options.symmetry)
    else:
        prefixes = [[]]
    return _finish(n, dim, params, incumbent, prefixes, deadline, options)


def _finish(n, dim, params, incumbent, prefixes, deadline, options):
    t0 = time.monotonic()
    best = incumbent.size
    if options.threads > 1 and len(prefixes) > 1:
        chunks = [[pr] for pr in prefixes]
        with ProcessPoolExecutor(max_workers=options.threads) as ex:
            futs = [
                ex.submit(_solve_prefixes, n, dim, params.p, params.q, ch, incumbent.size, deadline, options.symmetry)
                for ch in chunks
            ]
            outs = [f.result() for f in futs]
        found, nodes, open_ = None, 0, []
        for b, f, k, o in outs:
            nodes += k
            open_ += o
            if f is not None and b > best:
                best, found = b, f
    else:
        best, found, nodes, open_ = _solve_prefixes(
            n, dim, params.p, params.q, prefixes, best, deadline, options.symmetry
        )
    witness = incumbent if found is None else GridSet.from_cells(n, dim, found)
    if not is_sum_free(witness, params) or witness.size != best:
        raise AssertionError("solver produced an invalid witness")
    proven = not open_
    trace = {
        "incumbent_seed": incumbent.size,
        "improved": found is not None,
        "subproblems": len(prefixes),
        "open": len(open_),
        "seconds": time.monotonic() - t0,
    }
    result = SolveResult(best, witness, nodes, proven, params, trace, open_)
    if not proven and options.checkpoint:
        write_checkpoint(options.checkpoint, n, dim, params, witness, open_)
    return result


# checkpoints

def write_checkpoint(path, n, dim, params, witness: GridSet, open_prefixes) -> None:
    """Versioned text file: header, instance, incumbent, open prefixes.

    Each prefix line lists branching decisions ``cell:+`` / ``cell:-`` in
    order; forced assignments are re-derived on replay.
    """
    lines = [
        f"{CHECKPOINT_MAGIC} v{CHECKPOINT_VERSION}",
        f"n={n} dim={dim} p={params.p} q={params.q}",
        f"incumbent={witness.size}",
        "witness=" + ",".join(str(int(c)) for c in witness.cells()),
        f"open={len(open_prefixes)}",
    ]
    for prefix in open_prefixes:
        toks = [f"{v}:{'+' if x == 1 else '-'}" for v, x in prefix]
        lines.append("prefix " + " ".join(toks))
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def read_checkpoint(path) -> dict:
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != f"{CHECKPOINT_MAGIC} v{CHECKPOINT_VERSION}":
        raise GridInputError(f"{path}: not a version {CHECKPOINT_VERSION} checkpoint")
    try:
        inst = dict(tok.split("=") for tok in lines[1].split())
        n, dim = int(inst["n"]), int(inst["dim"])
        params = SchurParams(int(inst["p"]), int(inst["q"]))
        size = int(lines[2].split("=", 1)[1])
        wtxt = lines[3].split("=", 1)[1]
        cells = [int(c) for c in wtxt.split(",")] if wtxt else []
        k = int(lines[4].split("=", 1)[1])
        prefixes = []
        for line in lines[5:5 + k]:
            toks = line.split()
            if toks[0] != "prefix":
                raise ValueError(line)
            prefixes.append([(int(t[:-2]), 1 if t[-1] == "+" else -1) for t in toks[1:]])
    except (IndexError, KeyError, ValueError) as exc:
        raise GridInputError(f"{path}: malformed checkpoint ({exc})") from None
    if len(prefixes) != k:
        raise GridInputError(f"{path}: expected {k} prefixes, found {len(prefixes)}")
    witness = GridSet.from_cells(n, dim, cells)
    if witness.size != size or not is_sum_free(witness, params):
        raise GridInputError(f"{path}: stored incumbent is invalid")
    return {"n": n, "dim": dim, "params": params, "witness": witness, "prefixes": prefixes}


def resume(path, time_limit=None, checkpoint=None, threads=1) -> SolveResult:
    """Continue a search from a checkpoint written by :func:`max_sum_free`."""
    ck = read_checkpoint(path)
    options = SolveOptions(time_limit=time_limit, threads=threads, checkpoint=checkpoint)
    deadline = None if time_limit is None else time.monotonic() + time_limit
    return _finish(ck["n"], ck["dim"], ck["params"], ck["witness"], ck["prefixes"], deadline, options)


# tables

@dataclass(frozen=True)
class TableRow:
    n: int
    optimum: int
    density: Fraction
    proven: bool


def density_table(n_list, dim: int = 2, params: SchurParams = CLASSICAL, time_limit=None) -> list:
    rows = []
    for n in n_list:
        res = max_sum_free(n, dim, params, time_limit=time_limit)
        rows.append(TableRow(n, res.optimum, Fraction(res.optimum, n**dim), res.proven))
    return rows


def point_of(cell, n, dim):
    return cell_to_point(cell, n, dim)

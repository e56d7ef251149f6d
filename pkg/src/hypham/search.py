"""Exact small-instance oracles.

Hamilton l-cycle search (bitmask DFS kernel, see `_engine`), l-path search
between prescribed ordered ends, maximum strong independent set by
branch-and-bound, and absorbing-tuple verification/sampling.

Every search returns a three-valued `SearchOutcome`: ``found`` carries a
verified witness, ``none`` is a proven non-existence, and ``budget`` means
the node or time quota ran out first.  Sweeps must never record ``budget``
as non-existence.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from . import _engine
from .combin import binom_table, colex_rank_rows
from .errors import ContractViolation, HypHamError, QueryError
from .hypergraph import Hypergraph
from .params import threshold_params
from .paths import LCycle, LPath, is_hamilton_lcycle, validate_lpath


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int = 10**8
    time_limit: float | None = None

    def __post_init__(self):
        if self.node_limit <= 0:
            raise ContractViolation("node limit must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ContractViolation("time limit must be positive")


@dataclass(frozen=True)
class SearchOutcome:
    status: str  # "found" | "none" | "budget"
    result: object
    nodes: int
    seconds: float


@dataclass(frozen=True)
class AbsorbStats:
    samples: int
    hits: int
    estimate: Fraction
    t_abs: int

    def __post_init__(self):
        assert self.hits <= self.samples


_CHUNK = 1 << 17  # kernel nodes between budget/clock checks


def _ham_arrays(h: Hypergraph, l: int):
    k, nv = h.k, h.n
    d = k - l
    binom = binom_table(nv, k)
    nbr = np.zeros(comb(nv, k - 1), dtype=np.int64)
    cols = np.arange(k)
    edges = h.edges.astype(np.int64)
    for drop in range(k):
        ranks = colex_rank_rows(edges[:, cols != drop], nv)
        np.bitwise_or.at(nbr, ranks, np.int64(1) << edges[:, drop])

    starts = list(range(0, nv, d))
    check_start = np.full(nv, -1, dtype=np.int64)
    frontier_start = np.full(nv, -1, dtype=np.int64)
    wrap_rows = []
    cover = np.zeros(nv, dtype=np.int64)
    wid = np.zeros(nv, dtype=np.int64)
    for idx, s in enumerate(starts):
        if s + k <= nv:
            check_start[s + k - 1] = s
            frontier_start[s + k - 2] = s
        else:
            wrap_rows.append([(s + j) % nv for j in range(k)])
        for j in range(k):
            p = (s + j) % nv
            cover[p] += 1
            wid[p] = idx
    rot_pos = np.zeros(nv, dtype=np.int64)
    ord_prev = np.zeros(nv, dtype=np.int64)
    for p in range(1, nv):
        if p % d == 0:
            rot_pos[p] = 1
        if cover[p] == 1 and cover[p - 1] == 1 and wid[p] == wid[p - 1]:
            ord_prev[p] = 1
    wrap_pos = (
        np.array(wrap_rows, dtype=np.int64)
        if wrap_rows
        else np.zeros((0, k), dtype=np.int64)
    )
    refl = 1 if d == 1 and nv >= 3 else 0
    pmask0 = 1 if d == 1 else (1 << nv) - 1
    return binom, nbr, check_start, frontier_start, rot_pos, ord_prev, refl, wrap_pos, pmask0


def find_hamilton_lcycle(
    h: Hypergraph,
    l: int,
    budget: SearchBudget | None = None,
    frontier_prune: bool = True,
    shuffle_seed: int | None = None,
) -> SearchOutcome:
    """Exact decision: a verified Hamilton l-cycle, proven none, or budget.

    The kernel extends by vertices in increasing index.  `shuffle_seed`
    varies the exploration order for statistical experiments by running the
    search on a seeded relabeling of the graph and mapping the witness back;
    the decision is unaffected.
    """
    t0 = time.monotonic()
    budget = budget or SearchBudget()
    k = h.k
    if not 1 <= l <= k - 1:
        raise ContractViolation(f"need 1 <= l <= k-1, got l={l}, k={k}")
    nodes = 0

    def outcome(status, cycle=None):
        return SearchOutcome(status, cycle, nodes, time.monotonic() - t0)

    if h.n < k or h.n % (k - l) != 0 or h.edge_count == 0:
        return outcome("none")
    if h.n > 62:
        raise ContractViolation("search kernel supports n <= 62")
    if shuffle_seed is not None:
        perm = np.random.default_rng(shuffle_seed).permutation(h.n)
        relabeled = Hypergraph(
            k, h.n, np.sort(perm[h.edges.astype(np.int64)], axis=1)
        )
        out = find_hamilton_lcycle(relabeled, l, budget, frontier_prune)
        if out.result is None:
            return out
        back = np.empty(h.n, dtype=np.int64)
        back[perm] = np.arange(h.n)
        cycle = LCycle(k, l, tuple(int(back[v]) for v in out.result.vertices))
        assert is_hamilton_lcycle(h, cycle)
        return SearchOutcome(out.status, cycle, out.nodes, time.monotonic() - t0)

    (binom, nbr, check_start, frontier_start, rot_pos, ord_prev, refl, wrap_pos,
     pmask0) = _ham_arrays(h, l)
    nv = h.n
    seq = np.zeros(nv, dtype=np.int64)
    cand = np.zeros(nv, dtype=np.int64)
    pmask = np.zeros(nv, dtype=np.int64)
    pmask[0] = pmask0
    state = np.zeros(2, dtype=np.int64)
    tmp = np.zeros(k, dtype=np.int64)
    prune = 1 if frontier_prune else 0

    while True:
        remaining = budget.node_limit - nodes
        if remaining <= 0:
            return outcome("budget")
        if budget.time_limit is not None and time.monotonic() - t0 >= budget.time_limit:
            return outcome("budget")
        status, done = _engine._cycle_dfs(
            nv, k, binom, nbr, check_start, frontier_start, rot_pos, ord_prev,
            refl, wrap_pos, seq, cand, pmask, state, min(remaining, _CHUNK),
            prune, tmp,
        )
        nodes += int(done)
        if status == _engine.FOUND:
            cycle = LCycle(k, l, tuple(int(v) for v in seq))
            assert is_hamilton_lcycle(h, cycle)
            return outcome("found", cycle)
        if status == _engine.EXHAUSTED:
            return outcome("none")


def find_lpath_between(
    h: Hypergraph,
    x,
    y,
    m: int,
    allowed=None,
    budget: SearchBudget | None = None,
    frontier_prune: bool = True,
    shuffle_seed: int | None = None,
) -> SearchOutcome:
    """Exact search for an l-path of length m with ordered ends x and y,
    interior vertices drawn from `allowed` (default: everything else)."""
    t0 = time.monotonic()
    budget = budget or SearchBudget()
    x = tuple(int(v) for v in x)
    y = tuple(int(v) for v in y)
    k = h.k
    l = len(x)
    if len(y) != l or not 1 <= l <= k - 1:
        raise ContractViolation("ends must be two ordered l-tuples with 1 <= l <= k-1")
    if len(set(x)) != l or len(set(y)) != l:
        raise ContractViolation("end tuples must have distinct vertices")
    if set(x) & set(y):
        raise ContractViolation("ends must be disjoint")
    for v in x + y:
        if not 0 <= v < h.n:
            raise QueryError(f"end vertex {v} out of range")
    if m < 1:
        raise ContractViolation("path length must be >= 1")

    d = k - l
    n_p = m * d + l
    nodes = 0

    def outcome(status, path=None):
        return SearchOutcome(status, path, nodes, time.monotonic() - t0)

    if n_p < 2 * l:
        return outcome("none")
    ends_set = set(x) | set(y)
    if allowed is None:
        pool = set(range(h.n)) - ends_set
    else:
        pool = set(int(v) for v in allowed) - ends_set
    interior = list(range(l, n_p - l))
    if len(interior) > len(pool):
        return outcome("none")

    seq: list = [None] * n_p
    seq[:l] = x
    seq[n_p - l :] = y

    wins = [list(range(s, s + k)) for s in range(0, n_p - k + 1, d)]
    complete_at = {p: [] for p in interior}
    partial_at = {p: [] for p in interior}
    for w in wins:
        inner = [p for p in w if l <= p < n_p - l]
        if not inner:
            if not h.has_edge([seq[p] for p in w]):
                return outcome("none")
            continue
        trig = max(inner)
        complete_at[trig].append(w)
        for p in inner:
            if p != trig:
                partial_at[p].append(w)

    rng = np.random.default_rng(shuffle_seed) if shuffle_seed is not None else None
    deadline = None if budget.time_limit is None else t0 + budget.time_limit

    class _Budget(Exception):
        pass

    def dfs(idx: int) -> bool:
        nonlocal nodes
        if idx == len(interior):
            return True
        p = interior[idx]
        cands = sorted(pool)
        if rng is not None:
            rng.shuffle(cands)
        for v in cands:
            seq[p] = v
            ok = True
            for w in complete_at[p]:
                if not h.has_edge([seq[q] for q in w]):
                    ok = False
                    break
            if ok and frontier_prune:
                for w in partial_at[p]:
                    filled = [seq[q] for q in w if seq[q] is not None]
                    if not h.has_positive_degree(filled):
                        ok = False
                        break
            if ok:
                nodes += 1
                if nodes >= budget.node_limit:
                    raise _Budget
                if deadline is not None and nodes % 256 == 0 and time.monotonic() >= deadline:
                    raise _Budget
                pool.discard(v)
                if dfs(idx + 1):
                    return True
                pool.add(v)
        seq[p] = None
        return False

    try:
        found = dfs(0)
    except _Budget:
        return outcome("budget")
    if not found:
        return outcome("none")
    path = LPath(k, l, tuple(seq))
    assert validate_lpath(h, path) and path.ends() == (x, y)
    return outcome("found", path)


def max_strong_independent_set(
    h: Hypergraph, budget: SearchBudget | None = None
) -> SearchOutcome:
    """Maximum-cardinality strong independent set by branch-and-bound.

    Under budget exhaustion the best set found so far is returned with
    status ``budget`` (its maximality is then unproven).
    """
    t0 = time.monotonic()
    budget = budget or SearchBudget()
    n = h.n
    edges = h.edges_as_tuples()
    incident: list[list[int]] = [[] for _ in range(n)]
    for i, e in enumerate(edges):
        for v in e:
            incident[v].append(i)
    hits = [0] * len(edges)
    chosen: list[int] = []
    best: list[int] = []
    nodes = 0
    deadline = None if budget.time_limit is None else t0 + budget.time_limit

    class _Budget(Exception):
        pass

    def dfs(i: int):
        nonlocal nodes, best
        if len(chosen) > len(best):
            best = chosen.copy()
        if i == n or len(chosen) + (n - i) <= len(best):
            return
        if all(hits[e] == 0 for e in incident[i]):
            for e in incident[i]:
                hits[e] += 1
            chosen.append(i)
            nodes += 1
            if nodes >= budget.node_limit:
                raise _Budget
            if deadline is not None and nodes % 1024 == 0 and time.monotonic() >= deadline:
                raise _Budget
            dfs(i + 1)
            chosen.pop()
            for e in incident[i]:
                hits[e] -= 1
        dfs(i + 1)

    try:
        dfs(0)
        status = "found"
    except _Budget:
        status = "budget"
    return SearchOutcome(status, frozenset(best), nodes, time.monotonic() - t0)


def is_absorbing_tuple(h: Hypergraph, l: int, tup, t_set, budget: SearchBudget | None = None) -> bool:
    """Whether the ordered tuple absorbs the (k-l)-set `t_set`:
    (i) the tuple forms an l-path Q in order, and (ii) some l-path on
    tuple+t_set has the same ends as Q (decided by exact search)."""
    params = threshold_params(h.k, l)
    tup = tuple(int(v) for v in tup)
    t_set = frozenset(int(v) for v in t_set)
    if len(t_set) != h.k - l:
        raise ContractViolation(f"absorbed set must have k-l={h.k - l} vertices")
    if len(tup) != params.t_abs or len(set(tup)) != len(tup):
        raise ContractViolation(f"tuple must be {params.t_abs} distinct vertices")
    if set(tup) & t_set:
        raise ContractViolation("tuple and absorbed set must be disjoint")
    q = LPath(h.k, l, tup)
    if not validate_lpath(h, q):
        return False
    x, y = q.ends()
    m2 = (params.t_abs + (h.k - l) - l) // (h.k - l)
    allowed = (set(tup) | t_set) - set(x) - set(y)
    out = find_lpath_between(h, x, y, m2, allowed=allowed, budget=budget)
    if out.status == "budget":
        raise HypHamError("inner absorbing search exhausted its budget")
    return out.status == "found"


def sample_absorbing_density(
    h: Hypergraph, l: int, t_set, samples: int, seed: int
) -> AbsorbStats:
    """Uniform ordered t_abs-tuples of distinct vertices outside `t_set`,
    tested with `is_absorbing_tuple`; deterministic under the seed."""
    params = threshold_params(h.k, l)
    t_set = frozenset(int(v) for v in t_set)
    if len(t_set) != h.k - l:
        raise ContractViolation(f"absorbed set must have k-l={h.k - l} vertices")
    pool = np.array(sorted(set(range(h.n)) - t_set), dtype=np.int64)
    if pool.size < params.t_abs:
        raise ContractViolation("not enough vertices outside the absorbed set")
    rng = np.random.default_rng(seed)
    hits = 0
    for _ in range(samples):
        tup = tuple(int(v) for v in rng.permutation(pool)[: params.t_abs])
        if is_absorbing_tuple(h, l, tup, t_set):
            hits += 1
    est = Fraction(hits, samples) if samples else Fraction(0)
    return AbsorbStats(samples, hits, est, params.t_abs)

"""Greedy connection, codegree peeling, partite path embedding and path tiling.

These are the constructive procedures: a seeded greedy connector that joins
two ordered ends by a length-ceil(k/(k-l)) path while avoiding a forbidden
set, a peeling loop that deletes low-positive-codegree (k-1)-sets until the
remainder clears a threshold, density-threshold cluster graphs (regularity
of cluster tuples is NOT verified; density is the desk-scale substitute),
a greedy partition-respecting path embedder, and a two-mode path tiler
(direct greedy growth, or cluster graph + weighted fractional matching with
direct fallback).  Greedy failures are ordinary outcomes (None), never
errors; exact searches elsewhere decide whether a failure was genuine.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import ContractViolation
from .hypergraph import Hypergraph
from .matching import FarkasCertificate, find_min_max_pfm
from .params import ThresholdParams
from .paths import (
    LPath,
    abstract_path,
    unbalanced_partition_pattern,
    validate_lpath,
)

# ----------------------------------------------------------------------
# greedy connector (maximal-extension strategy)


@dataclass
class PartialEmbedding:
    """Injective partial map from template path positions to host vertices.

    Consistency: injective where defined; for every template window the
    image of its defined positions has positive degree in the host; images
    outside the template's ends avoid the forbidden set.
    """

    template: LPath
    image: list
    forbidden: frozenset

    def __post_init__(self):
        k = self.template.k
        self._windows = [list(range(s, s + k)) for s in self.template.window_starts()]
        self._used = {v for v in self.image if v is not None}

    @classmethod
    def from_ends(cls, template: LPath, x, y, forbidden) -> "PartialEmbedding":
        image = [None] * template.n
        l = template.l
        image[:l] = x
        image[template.n - l :] = y
        return cls(template, image, frozenset(forbidden))

    def windows(self):
        return self._windows

    def admits(self, h: Hypergraph, pos: int, v: int) -> bool:
        """Would image[pos] = v keep the embedding consistent?"""
        if v in self.forbidden or v in self._used:
            return False
        for w in self._windows:
            if pos not in w:
                continue
            part = [self.image[q] for q in w if self.image[q] is not None]
            if not h.has_positive_degree(part + [v]):
                return False
        return True

    def place(self, pos: int, v: int) -> None:
        assert self.image[pos] is None
        self.image[pos] = v
        self._used.add(v)

    def consistent(self, h: Hypergraph) -> bool:
        vs = [v for v in self.image if v is not None]
        if len(set(vs)) != len(vs):
            return False
        l = self.template.l
        interior = self.image[l : self.template.n - l]
        if any(v is not None and v in self.forbidden for v in interior):
            return False
        return all(
            h.has_positive_degree([self.image[q] for q in w if self.image[q] is not None])
            for w in self.windows()
        )

    def to_path(self) -> LPath:
        assert all(v is not None for v in self.image)
        return LPath(self.template.k, self.template.l, tuple(self.image))


def connect_ends(
    h: Hypergraph,
    params: ThresholdParams,
    x,
    y,
    forbidden=(),
    seed: int = 0,
    retries: int = 50,
) -> LPath | None:
    """Greedy l-path of length ceil(k/(k-l)) from end x to end y.

    Template positions are filled left to right; each image is drawn
    uniformly at random (seeded) among vertices that keep every touched
    window's partial image at positive degree.  Candidate choice is random
    rather than lowest-index because repeated connections with lowest-index
    would systematically collide.  A dead end restarts with fresh draws, up
    to `retries` times; persistent failure returns None.
    """
    k, l = params.k, params.l
    x = tuple(int(v) for v in x)
    y = tuple(int(v) for v in y)
    forbidden = frozenset(int(v) for v in forbidden)
    if len(x) != l or len(y) != l:
        raise ContractViolation(f"ends must be ordered {l}-tuples")
    if set(x) & set(y):
        raise ContractViolation("ends must be disjoint")
    if (set(x) | set(y)) & forbidden:
        raise ContractViolation("ends must avoid the forbidden set")
    if h.degree(x) < 1 or h.degree(y) < 1:
        raise ContractViolation("both ends must have positive degree")

    template = abstract_path(k, l, params.connect_len)
    n_q = template.n
    rng = np.random.default_rng(seed)

    for _ in range(retries):
        pe = PartialEmbedding.from_ends(template, x, y, forbidden)
        ok = True
        for p in range(l, n_q - l):
            cands = [z for z in range(h.n) if pe.admits(h, p, z)]
            if not cands:
                ok = False
                break
            pe.place(p, cands[int(rng.integers(len(cands)))])
        if not ok:
            continue
        path = pe.to_path()
        assert pe.consistent(h) and validate_lpath(h, path)
        assert path.ends() == (x, y)
        assert not (set(path.vertices) - set(x) - set(y)) & forbidden
        return path
    return None


# ----------------------------------------------------------------------
# peeling

_PEEL_OBSERVERS: list = []


def register_peel_observer(fn) -> None:
    """Call fn(PeelResult) after every peeling run (used by the test suite)."""
    _PEEL_OBSERVERS.append(fn)


def unregister_peel_observer(fn) -> None:
    _PEEL_OBSERVERS.remove(fn)


@dataclass(frozen=True)
class PeelResult:
    """Peeled subgraph plus the incidence/tracked-set trace.

    ``trace[i] = (incidences, tracked_sets)`` before step i (the first entry
    is the initial state).  The ratio incidences/tracked is non-decreasing
    whenever the density hypothesis behind the threshold holds; it is
    reported, not asserted, because the operation is total.
    """

    graph: Hypergraph
    tau: Fraction
    trace: tuple

    def ratios(self) -> list:
        return [Fraction(i, s) for i, s in self.trace if s > 0]

    def ratio_nondecreasing(self) -> bool:
        r = self.ratios()
        return all(a <= b for a, b in zip(r, r[1:]))


def peel_to_positive_codegree(h: Hypergraph, tau) -> PeelResult:
    """Repeatedly delete a (k-1)-set of degree <= tau (and its edges) until
    every positive-degree (k-1)-set exceeds tau; possibly empty.

    The eligible set with the smallest canonical tuple is processed first,
    so runs are deterministic.  Sets whose degree has dropped to zero still
    count as tracked until popped; the incidence/tracked trace is defined
    over exactly that bookkeeping.
    """
    tau = Fraction(tau)
    k = h.k
    rows = h.edges_as_tuples()
    deg: dict = {}
    members: dict = {}
    for eid, e in enumerate(rows):
        for sub in combinations(e, k - 1):
            deg[sub] = deg.get(sub, 0) + 1
            members.setdefault(sub, []).append(eid)
    tracked = set(deg)
    alive = [True] * len(rows)
    incidences = k * len(rows)
    trace = [(incidences, len(tracked))]
    heap = [s for s in deg if deg[s] <= tau]
    heapq.heapify(heap)
    while heap:
        s = heapq.heappop(heap)
        if s not in tracked or deg[s] > tau:
            continue
        tracked.discard(s)
        incidences -= deg[s]
        for eid in members[s]:
            if not alive[eid]:
                continue
            alive[eid] = False
            for sub in combinations(rows[eid], k - 1):
                if sub == s or sub not in tracked:
                    continue
                incidences -= 1
                deg[sub] -= 1
                if deg[sub] <= tau:
                    heapq.heappush(heap, sub)
        trace.append((incidences, len(tracked)))
    survivors = [rows[i] for i in range(len(rows)) if alive[i]]
    out = PeelResult(Hypergraph(k, h.n, survivors, canonical=True), tau, tuple(trace))
    for fn in _PEEL_OBSERVERS:
        fn(out)
    return out


# ----------------------------------------------------------------------
# density and cluster graphs


def _class_ids(h: Hypergraph, classes) -> np.ndarray:
    ids = np.full(h.n, -1, dtype=np.int64)
    seen = 0
    for i, cls in enumerate(classes):
        cls = list(cls)
        if not cls:
            raise ContractViolation("classes must be nonempty")
        ids[cls] = i
        seen += len(cls)
    if seen != sum(len(set(c)) for c in classes) or (ids >= 0).sum() != seen:
        raise ContractViolation("classes must be disjoint")
    return ids


def density(h: Hypergraph, classes) -> Fraction:
    """Exact crossing density: edges with one vertex per class over the
    product of class sizes."""
    ids = _class_ids(h, classes)
    if len(classes) != h.k:
        raise ContractViolation(f"need exactly k={h.k} classes")
    crossing = _crossing_mask(h, ids).sum()
    denom = 1
    for cls in classes:
        denom *= len(cls)
    return Fraction(int(crossing), denom)


def _crossing_mask(h: Hypergraph, ids: np.ndarray) -> np.ndarray:
    if h.edge_count == 0:
        return np.zeros(0, dtype=bool)
    eid = ids[h.edges.astype(np.int64)]
    srt = np.sort(eid, axis=1)
    good = (srt[:, 0] >= 0) & (np.diff(srt, axis=1) > 0).all(axis=1)
    return good


@dataclass(frozen=True)
class ClusterGraph:
    """Cluster k-graph: parts of one balanced partition as vertices, edges
    marking k-tuples of parts whose crossing density reaches d."""

    base: Hypergraph
    partition: tuple
    d: Fraction
    graph: Hypergraph = field(compare=False)

    @property
    def cluster_edges(self) -> list:
        return self.graph.edges_as_tuples()


def build_cluster_graph(h: Hypergraph, partition, d) -> ClusterGraph:
    partition = [sorted(int(v) for v in part) for part in partition]
    sizes = {len(p) for p in partition}
    if len(sizes) != 1:
        raise ContractViolation("partition parts must have equal sizes")
    m_part = sizes.pop()
    if m_part == 0:
        raise ContractViolation("partition parts must be nonempty")
    ids = _class_ids(h, partition)
    d = Fraction(d)
    t = len(partition)
    counts: dict = {}
    if h.edge_count:
        eid = ids[h.edges.astype(np.int64)]
        good = _crossing_mask(h, ids)
        for row in np.sort(eid[good], axis=1).tolist():
            key = tuple(row)
            counts[key] = counts.get(key, 0) + 1
    denom = m_part**h.k
    cedges = [key for key, c in sorted(counts.items()) if Fraction(c, denom) >= d]
    return ClusterGraph(
        base=h,
        partition=tuple(frozenset(p) for p in partition),
        d=d,
        graph=Hypergraph(h.k, t, cedges),
    )


# ----------------------------------------------------------------------
# partite path embedding (peel + greedy)


def embed_partite_path(
    h: Hypergraph,
    classes,
    n_path: int,
    params: ThresholdParams,
    seed: int = 0,
) -> LPath | None:
    """Partition-respecting l-path on `n_path` vertices inside a k-partite
    host with equal class sizes.

    Peels at tau = density * m / k, places a random first edge of the peeled
    graph, then extends position by position inside the designated classes,
    keeping every partially filled window at positive degree.  The class
    pattern is the unbalanced partition of the template path; its class
    counts must not exceed tau (checked).  A greedy dead end returns None.
    """
    k, l = params.k, params.l
    classes = [sorted(int(v) for v in cls) for cls in classes]
    if len(classes) != k:
        raise ContractViolation(f"need exactly k={k} ordered classes")
    sizes = {len(c) for c in classes}
    if len(sizes) != 1:
        raise ContractViolation("classes must have one common size")
    m_part = sizes.pop()
    ids = _class_ids(h, classes)
    if h.edge_count and not _crossing_mask(h, ids).all():
        raise ContractViolation("host must be k-partite with respect to the classes")

    d_val = density(h, classes)
    tau = d_val * m_part / k
    pattern = unbalanced_partition_pattern(k, l, n_path)
    counts = [pattern.count(i) for i in range(k)]
    if max(counts) > tau:
        raise ContractViolation(
            f"target class sizes {counts} exceed the peeling threshold {tau}"
        )

    peeled = peel_to_positive_codegree(h, tau).graph
    if peeled.edge_count == 0:
        return None
    rng = np.random.default_rng(seed)
    wins = [list(range(s, s + k)) for s in range(0, n_path - k + 1, k - l)]
    touching = [[w for w in wins if p in w] for p in range(n_path)]

    # the first window is a random edge of the peeled graph, placed by class
    first = peeled.edges[int(rng.integers(peeled.edge_count))].tolist()
    image: list = [None] * n_path
    used = set()
    by_class = {int(ids[v]): int(v) for v in first}
    for p in range(k):
        image[p] = by_class[pattern[p]]
        used.add(image[p])

    for p in range(k, n_path):
        cls = classes[pattern[p]]
        cands = []
        for z in cls:
            if z in used:
                continue
            if all(
                peeled.has_positive_degree(
                    [image[q] for q in w if q < p] + [z]
                )
                for w in touching[p]
            ):
                cands.append(z)
        if not cands:
            return None
        z = cands[int(rng.integers(len(cands)))]
        image[p] = z
        used.add(z)
    path = LPath(k, l, tuple(image))
    assert validate_lpath(h, path)
    assert all(path.vertices[p] in set(classes[pattern[p]]) for p in range(n_path))
    return path


# ----------------------------------------------------------------------
# path tiling


@dataclass(frozen=True)
class TileResult:
    paths: tuple
    coverage: Fraction
    mode: str
    lp_status: str | None

    @property
    def covered(self) -> int:
        return sum(p.n for p in self.paths)


def tile_paths(
    h: Hypergraph,
    params: ThresholdParams,
    beta,
    mode: str = "direct",
    seed: int = 0,
    num_clusters: int | None = None,
    cluster_density=Fraction(1, 4),
) -> TileResult:
    """Pairwise disjoint l-paths covering as much of H as the mode manages.

    direct: repeated greedy growth (seed an unused edge, extend both ends
    until stuck).  cluster: balanced seeded partition, density cluster
    graph, weighted fractional matching on it, per-variable partite path
    allocations sized by q(e) * w_i * m, then direct fallback on whatever
    remains; LP infeasibility degrades to the fallback instead of failing.
    """
    if mode not in ("direct", "cluster"):
        raise ContractViolation(f"unknown tiling mode {mode!r}")
    beta = Fraction(beta)
    rng = np.random.default_rng(seed)
    used: set = set()
    paths: list[LPath] = []
    lp_status = None

    if mode == "cluster" and h.edge_count:
        lp_status, cluster_paths = _tile_cluster(
            h, params, beta, rng, used, num_clusters, cluster_density
        )
        paths.extend(cluster_paths)

    paths.extend(_tile_direct(h, params, rng, used))

    seen: set = set()
    for p in paths:
        assert validate_lpath(h, p)
        assert not (set(p.vertices) & seen), "tiles must be vertex-disjoint"
        seen.update(p.vertices)
    coverage = Fraction(len(seen), h.n) if h.n else Fraction(0)
    return TileResult(tuple(paths), coverage, mode, lp_status)


def _tile_direct(h: Hypergraph, params: ThresholdParams, rng, used: set) -> list[LPath]:
    k, l = params.k, params.l
    d = k - l
    paths = []
    edges = h.edges
    if edges.shape[0] == 0:
        return paths
    while True:
        used_arr = np.array(sorted(used), dtype=np.int16)
        free = ~np.isin(edges, used_arr).any(axis=1) if used else np.ones(len(edges), bool)
        idxs = np.flatnonzero(free)
        if idxs.size == 0:
            break
        row = edges[idxs[int(rng.integers(idxs.size))]].tolist()
        seq = [int(v) for v in row]
        used.update(seq)
        grown = True
        while grown:
            grown = False
            for side in (1, 0):  # right, then left
                end = seq[-l:] if side else seq[:l]
                ext = _extension_edges(h, end, used)
                if ext is None:
                    continue
                new = sorted(set(ext) - set(end))
                if side:
                    seq.extend(new)
                else:
                    seq = new + seq
                used.update(new)
                grown = True
        paths.append(LPath(k, l, tuple(seq)))
    return paths


def _extension_edges(h: Hypergraph, end, used: set):
    """One edge containing the end set whose other vertices are unused."""
    end_arr = np.array(sorted(end), dtype=np.int16)
    contains = np.isin(h.edges, end_arr).sum(axis=1) == len(end)
    if not contains.any():
        return None
    used_arr = np.array(sorted(used), dtype=np.int16)
    touch_used = np.isin(h.edges, used_arr).sum(axis=1)
    good = contains & (touch_used == len(end))
    idxs = np.flatnonzero(good)
    if idxs.size == 0:
        return None
    return tuple(int(v) for v in h.edges[idxs[0]])


def _tile_cluster(h, params, beta, rng, used, num_clusters, cluster_density):
    k, l = params.k, params.l
    n = h.n
    t = num_clusters or max(k + 1, n // (3 * k))
    m_part = n // t
    if m_part < 1 or t < k:
        return "skipped", []
    perm = rng.permutation(n)
    parts = [sorted(int(v) for v in perm[i * m_part : (i + 1) * m_part]) for i in range(t)]
    cg = build_cluster_graph(h, parts, cluster_density)

    # cleanup before the matching LP: drop isolated clusters, then trim up
    # to ctmod-1 more so ctmod divides the cluster count
    live = sorted(set(range(t)) - cg.graph.isolated_vertices())
    trim = len(live) % params.ctmod
    if trim:
        live = live[: len(live) - trim]
    if len(live) < k:
        return "skipped", []
    sub, cluster_of = cg.graph.induced_subgraph(live)
    if sub.edge_count == 0:
        return "skipped", []
    got = find_min_max_pfm(sub, params)
    if isinstance(got, FarkasCertificate):
        return "infeasible", []
    matching, _ = got

    paths = []
    for var in sorted(matching.assignment):
        q = matching.assignment[var]
        if q <= 0:
            continue
        clusters = [cluster_of[c] for c in var.edge]
        ordered = [cluster_of[var.head]] + [c for c in clusters if c != cluster_of[var.head]]
        pools = [sorted(set(parts[c]) - used) for c in ordered]
        m_eff = min(len(p) for p in pools)
        if m_eff == 0:
            continue
        classes = [p[:m_eff] for p in pools]
        target = (1 - beta / 2) * q * m_part * params.W
        n_path = _fit_path_size(k, l, target, classes, h, m_eff)
        if n_path is None:
            continue
        path = embed_partite_path(h_restricted(h, classes), classes, n_path, params, seed=int(rng.integers(2**32)))
        if path is None:
            continue
        paths.append(path)
        used.update(path.vertices)
    return "perfect", paths


def h_restricted(h: Hypergraph, classes) -> Hypergraph:
    """Subgraph keeping only edges crossing the given classes (same labels)."""
    ids = _class_ids(h, classes)
    if h.edge_count == 0:
        return h
    keep = _crossing_mask(h, ids)
    return Hypergraph(h.k, h.n, h.edges[keep], canonical=True)


def _fit_path_size(k, l, target, classes, h, m_eff):
    """Largest valid path size <= the target allocation that the classes and
    the peeling threshold can host; None when even one edge does not fit."""
    d = k - l
    n_path = k + ((int(target) - k) // d) * d if target > k else k
    n_path = max(n_path, k)
    restricted = h_restricted(h, classes)
    d_val = density(restricted, classes)
    if d_val == 0:
        return None
    tau = d_val * m_eff / k
    while n_path >= k:
        pattern = unbalanced_partition_pattern(k, l, n_path)
        counts = [pattern.count(i) for i in range(k)]
        if max(counts) <= min(tau, m_eff):
            return n_path
        n_path -= d
    return None

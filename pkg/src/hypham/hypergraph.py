"""k-uniform hypergraph with degree, neighbourhood and independence primitives.

Vertices are dense integers 0..n-1.  Edges are canonical strictly increasing
k-tuples, stored as one lex-sorted numpy array so that whole-graph queries
(minimum codegree, minimum positive codegree, isolated vertices) run
vectorised.  Point queries use lazily built hash indexes:

* ``(k-1)-subset -> extension array`` for codegree/neighbourhood lookups;
* the set of all sub-multisets of edges for positive-degree tests of
  partial windows (used heavily by the greedy connectors).

Instances are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

from .combin import colex_rank_rows
from .errors import ContractViolation, QueryError


def _normalize_vertex_set(s) -> tuple[int, ...]:
    out = tuple(sorted(int(v) for v in s))
    if len(set(out)) != len(out):
        raise QueryError("vertex set contains repeated vertices")
    return out


def _rows_lex_increasing(arr: np.ndarray) -> bool:
    """Strict lexicographic order of consecutive rows, vectorised."""
    if arr.shape[0] < 2:
        return True
    a, b = arr[:-1], arr[1:]
    neq = a != b
    if not neq.any(axis=1).all():
        return False  # a duplicate row
    first = neq.argmax(axis=1)
    rows = np.arange(a.shape[0])
    return bool((a[rows, first] < b[rows, first]).all())


class Hypergraph:
    """Immutable k-uniform hypergraph on vertex set {0, ..., n-1}."""

    __slots__ = (
        "k",
        "n",
        "_edges",
        "_edge_set",
        "_ext_index",
        "_subset_index",
    )

    def __init__(self, k: int, n: int, edges=(), canonical: bool = False):
        if k < 2:
            raise ContractViolation(f"uniformity k must be >= 2, got {k}")
        if n < 0:
            raise ContractViolation(f"vertex count must be >= 0, got {n}")
        arr = np.asarray(
            edges if not isinstance(edges, np.ndarray) else edges, dtype=np.int16
        )
        if arr.size == 0:
            arr = np.zeros((0, k), dtype=np.int16)
        if arr.ndim != 2 or arr.shape[1] != k:
            raise ContractViolation(f"edges must be k-tuples with k={k}")
        if arr.shape[0]:
            if arr.min() < 0 or arr.max() >= n:
                raise ContractViolation("edge vertex out of range 0..n-1")
            if not (np.diff(arr, axis=1) > 0).all():
                raise ContractViolation("edges must be strictly increasing k-tuples")
            if canonical:
                # trusted path for generator output: rows must already be
                # lex-sorted and distinct (verified in O(mk), no row sort)
                if not _rows_lex_increasing(arr):
                    raise ContractViolation("canonical edge array is not lex-sorted")
            else:
                uniq = np.unique(arr, axis=0)
                if uniq.shape[0] != arr.shape[0]:
                    raise ContractViolation("duplicate edges are not allowed")
                arr = uniq  # np.unique also lex-sorts the rows
        arr.setflags(write=False)
        self.k = k
        self.n = n
        self._edges = arr
        self._edge_set = None
        self._ext_index = None
        self._subset_index = None

    # ------------------------------------------------------------------
    # basic accessors

    @property
    def edges(self) -> np.ndarray:
        """Read-only (m, k) array of canonical edges, lex-sorted."""
        return self._edges

    @property
    def edge_count(self) -> int:
        return self._edges.shape[0]

    def edges_as_tuples(self) -> list[tuple[int, ...]]:
        return [tuple(int(v) for v in row) for row in self._edges]

    def __repr__(self) -> str:
        return f"Hypergraph(k={self.k}, n={self.n}, m={self.edge_count})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (
            self.k == other.k
            and self.n == other.n
            and self._edges.shape == other._edges.shape
            and bool((self._edges == other._edges).all())
        )

    def __hash__(self) -> int:
        return hash((self.k, self.n, self._edges.tobytes()))

    # ------------------------------------------------------------------
    # lazy indexes

    def _edge_membership(self) -> set:
        if self._edge_set is None:
            self._edge_set = set(map(tuple, self._edges.tolist()))
        return self._edge_set

    def extension_index(self) -> dict:
        """Map canonical (k-1)-tuple -> sorted int array of extension vertices."""
        if self._ext_index is None:
            index: dict[tuple[int, ...], list[int]] = {}
            for row in self._edges.tolist():
                for j in range(self.k):
                    sub = tuple(row[:j] + row[j + 1 :])
                    index.setdefault(sub, []).append(row[j])
            self._ext_index = {
                s: np.array(sorted(v), dtype=np.int64) for s, v in index.items()
            }
        return self._ext_index

    def _subsets_of_edges(self) -> set:
        if self._subset_index is None:
            subs = set()
            for row in map(tuple, self._edges.tolist()):
                for j in range(self.k + 1):
                    subs.update(combinations(row, j))
            self._subset_index = subs
        return self._subset_index

    # ------------------------------------------------------------------
    # degree machinery

    def has_edge(self, e) -> bool:
        e = _normalize_vertex_set(e)
        if len(e) != self.k:
            raise QueryError(f"edge must have {self.k} vertices")
        return e in self._edge_membership()

    def has_positive_degree(self, s) -> bool:
        """True iff the set s is contained in at least one edge (|s| <= k)."""
        s = _normalize_vertex_set(s)
        if len(s) > self.k:
            raise QueryError("query set larger than uniformity")
        return s in self._subsets_of_edges()

    def degree(self, s) -> int:
        """Number of edges containing s as a subset; requires |s| <= k."""
        s = self._check_query_set(s, max_size=self.k)
        if len(s) == self.k:
            return 1 if s in self._edge_membership() else 0
        if len(s) == self.k - 1:
            ext = self.extension_index().get(s)
            return 0 if ext is None else int(ext.size)
        # small sets occur only in occasional property checks: scan the edges
        if self.edge_count == 0:
            return 0
        hits = np.isin(self._edges, np.array(s, dtype=np.int16)).sum(axis=1)
        return int((hits == len(s)).sum())

    def degree_into(self, s, w) -> int:
        """Number of x in w with s + {x} an edge; requires |s| = k-1."""
        s = self._check_query_set(s, exact_size=self.k - 1)
        ext = self.extension_index().get(s)
        if ext is None:
            return 0
        wset = set(int(v) for v in w)
        return sum(1 for x in ext.tolist() if x in wset)

    def neighborhood(self, s) -> frozenset:
        """Set of x with s + {x} an edge; requires |s| = k-1."""
        s = self._check_query_set(s, exact_size=self.k - 1)
        ext = self.extension_index().get(s)
        return frozenset() if ext is None else frozenset(ext.tolist())

    def _check_query_set(self, s, max_size=None, exact_size=None) -> tuple[int, ...]:
        s = _normalize_vertex_set(s)
        if s and (s[0] < 0 or s[-1] >= self.n):
            raise QueryError("query vertex out of range")
        if exact_size is not None and len(s) != exact_size:
            raise QueryError(f"query set must have exactly {exact_size} vertices")
        if max_size is not None and len(s) > max_size:
            raise QueryError(f"query set must have at most {max_size} vertices")
        return s

    def _codegree_counts(self) -> np.ndarray:
        """Degrees of all C(n, k-1) subsets, indexed by colex rank."""
        total = comb(self.n, self.k - 1)
        counts = np.zeros(total, dtype=np.int64)
        m = self.edge_count
        if m == 0:
            return counts
        cols = np.arange(self.k)
        wide = self._edges.astype(np.int64)
        for drop in range(self.k):
            ranks = colex_rank_rows(wide[:, cols != drop], self.n)
            counts += np.bincount(ranks, minlength=total)
        return counts

    def min_codegree(self) -> int:
        """Minimum degree over all (k-1)-subsets of the vertex set."""
        if self.n < self.k - 1:
            raise QueryError("min_codegree needs n >= k-1")
        counts = self._codegree_counts()
        return int(counts.min()) if counts.size else 0

    def min_positive_codegree(self) -> int | None:
        """Minimum degree over (k-1)-subsets with degree >= 1; None if edgeless."""
        if self.edge_count == 0:
            return None
        counts = self._codegree_counts()
        positive = counts[counts > 0]
        return int(positive.min())

    def isolated_vertices(self) -> frozenset:
        covered = np.zeros(self.n, dtype=bool)
        if self.edge_count:
            covered[np.unique(self._edges)] = True
        return frozenset(np.flatnonzero(~covered).tolist())

    # ------------------------------------------------------------------
    # subgraphs and independence

    def induced_subgraph(self, u):
        """Subgraph induced on u, relabeled to 0..|u|-1 by increasing index.

        Returns ``(subgraph, mapping)`` where ``mapping[new] = old``.
        """
        u = _normalize_vertex_set(u)
        if u and (u[0] < 0 or u[-1] >= self.n):
            raise QueryError("induced set not contained in the vertex set")
        mapping = np.array(u, dtype=np.int16)
        if self.edge_count:
            inside = np.isin(self._edges, mapping).all(axis=1)
            kept = self._edges[inside]
            relabel = np.full(self.n, -1, dtype=np.int16)
            relabel[mapping] = np.arange(len(u), dtype=np.int16)
            kept = relabel[kept]  # increasing relabel keeps rows lex-sorted
        else:
            kept = np.zeros((0, self.k), dtype=np.int16)
        return Hypergraph(self.k, len(u), kept, canonical=True), tuple(int(v) for v in u)

    def is_strong_independent(self, s) -> bool:
        """True iff every edge meets s in at most one vertex."""
        s = self._check_query_set(s)
        if self.edge_count == 0 or not s:
            return True
        hits = np.isin(self._edges, np.array(s, dtype=np.int16)).sum(axis=1)
        return bool((hits <= 1).all())

"""Hypergraph generators: the extremal two-class construction, complete
k-graphs, and seeded binomial random k-graphs."""

from __future__ import annotations

from math import comb

import numpy as np

from .combin import all_subsets, colex_rank_rows
from .errors import ContractViolation
from .hypergraph import Hypergraph
from .params import threshold_params


def complete_kgraph(k: int, n: int) -> Hypergraph:
    """All k-subsets of 0..n-1 as edges; requires n >= k."""
    if n < k:
        raise ContractViolation(f"complete k-graph needs n >= k, got n={n}, k={k}")
    return Hypergraph(k, n, all_subsets(range(n), k), canonical=True)


def extremal_construction(k: int, l: int, n: int):
    """Two-class graph on A = {0..n/ctmod} and B = rest, edges |e & A| <= 1.

    A occupies the lowest-indexed vertices so fixtures are stable.  Requires
    ctmod | n (so |A| is an integer) and |B| >= k-1 (so the one-A codegree
    formula |B| - (k-2) is realised and no vertex is isolated).

    Returns ``(H, A)`` with A as a frozenset, for test use.
    """
    p = threshold_params(k, l)
    if n % p.ctmod != 0:
        raise ContractViolation(
            f"extremal construction needs ctmod={p.ctmod} to divide n={n}"
        )
    a = n // p.ctmod + 1
    b = n - a
    if b < k - 1:
        raise ContractViolation(
            f"extremal construction degenerate: |B|={b} < k-1={k - 1}"
        )
    b_only = all_subsets(range(a, n), k)
    b_sub = all_subsets(range(a, n), k - 1)
    m2 = b_sub.shape[0]
    one_a = np.empty((a * m2, k), dtype=np.int16)
    for i in range(a):
        block = one_a[i * m2 : (i + 1) * m2]
        block[:, 0] = i  # A vertices precede every B vertex, so rows stay sorted
        block[:, 1:] = b_sub
    # heads 0..a-1 sort before every B-only edge, so this stacking is lex order
    edges = np.vstack([one_a, b_only]) if b_only.size else one_a
    return Hypergraph(k, n, edges, canonical=True), frozenset(range(a))


def random_kgraph(k: int, n: int, p: float, seed: int) -> Hypergraph:
    """Binomial random k-graph: each k-subset kept independently with probability p.

    One uniform variate is drawn per k-subset, indexed by the subset's colex
    rank, so the generated graph depends only on (seed, k, n, p) and not on
    iteration order or parallel chunking.
    """
    if not 0 <= p <= 1:
        raise ContractViolation(f"probability must lie in [0, 1], got {p}")
    total = comb(n, k)
    rng = np.random.default_rng(seed)
    u = rng.random(total)
    subsets = all_subsets(range(n), k)
    if total == 0:
        return Hypergraph(k, n)
    ranks = colex_rank_rows(subsets, n)
    keep = u[ranks] < p
    return Hypergraph(k, n, subsets[keep], canonical=True)

"""Binomial tables, colex subset ranking and bulk k-subset generation.

Colex ranks let us index every j-subset of 0..n-1 by an integer in
[0, C(n,j)), so degree tallies over all (k-1)-subsets reduce to one
``np.bincount`` per drop position instead of per-edge dict updates.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import chain, combinations
from math import comb

import numpy as np


@lru_cache(maxsize=None)
def binom_table(nmax: int, kmax: int) -> np.ndarray:
    """Pascal table ``T[a, b] = C(a, b)`` for a <= nmax, b <= kmax (int64)."""
    t = np.zeros((nmax + 1, kmax + 1), dtype=np.int64)
    t[:, 0] = 1
    for a in range(1, nmax + 1):
        for b in range(1, kmax + 1):
            t[a, b] = t[a - 1, b - 1] + t[a - 1, b]
    return t


def colex_rank_rows(rows: np.ndarray, nmax: int) -> np.ndarray:
    """Colex rank of each sorted row: rank(a_0 < ... < a_{j-1}) = sum_i C(a_i, i+1)."""
    rows = np.asarray(rows, dtype=np.int64)
    if rows.ndim != 2:
        raise ValueError("rows must be 2-dimensional")
    j = rows.shape[1]
    table = binom_table(max(nmax, 1), j)
    ranks = np.zeros(rows.shape[0], dtype=np.int64)
    for i in range(j):
        ranks += table[rows[:, i], i + 1]
    return ranks


def colex_rank(subset, table: np.ndarray) -> int:
    """Colex rank of one sorted subset, using a precomputed Pascal table."""
    r = 0
    for i, a in enumerate(subset):
        r += int(table[a, i + 1])
    return r


def all_subsets(pool, j: int) -> np.ndarray:
    """All j-subsets of `pool` (sorted values) as a lex-ordered (m, j) int16 array."""
    pool = sorted(pool)
    m = comb(len(pool), j)
    if m == 0 or j == 0:
        return np.zeros((m, j), dtype=np.int16)
    flat = np.fromiter(
        chain.from_iterable(combinations(pool, j)), dtype=np.int16, count=m * j
    )
    return flat.reshape(m, j)

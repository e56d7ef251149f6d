"""Backtracking kernel for exact Hamilton l-cycle search.

The inner DFS is written in nopython style (int64 scalars, numpy arrays,
bitmask vertex sets) so the same function body runs either JIT-compiled
under numba or as plain Python.  The backend is chosen once at import:

    HYPHAM_BACKEND=numba   force numba (error if unavailable)
    HYPHAM_BACKEND=python  force the pure-Python fallback
    unset                  numba when importable, else Python

Vertex sets are int64 bitmasks, so the kernel supports n <= 62.

Search-space reduction (all sound for the existence decision):
* windows start at positions 0, d, 2d, ... (d = k-l); rotations by
  multiples of d permute them, so the vertex at position 0 is forced to be
  the smallest among all window-start positions;
* for tight cycles (d = 1) that pins vertex 0 to position 0, and the
  orientation is canonicalised by requiring seq[1] < seq[n-1];
* positions covered by exactly one window ("free" interior of an edge,
  nonempty iff 2l < k) are interchangeable, so consecutive free positions
  are forced increasing;
* a window completing at position p constrains the candidate via the
  precomputed extension bitmask of its (k-1)-prefix;
* the frontier prune rejects a placement when the now k-1 filled vertices
  of a window have no unused extension (1-step lookahead, toggleable).

The DFS state (seq, cand, pmask, depth, used) lives in caller-owned arrays,
so the search can be paused on a node quota and resumed, which is how wall
clock budgets are enforced without timing calls inside the kernel.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("HYPHAM_BACKEND", "").strip().lower()
if _FLAG not in ("", "numba", "python"):
    raise RuntimeError(f"HYPHAM_BACKEND must be 'numba' or 'python', got {_FLAG!r}")

_use_numba = False
if _FLAG != "python":
    try:
        from numba import njit

        _use_numba = True
    except ImportError:
        if _FLAG == "numba":
            raise


def backend_name() -> str:
    return "numba" if _use_numba else "python"


# status codes returned by the kernel
EXHAUSTED = 0
FOUND = 1
PAUSED = 2


def _cycle_dfs(
    nv,
    k,
    binom,
    nbr_mask,
    check_start,
    frontier_start,
    rot_pos,
    ord_prev,
    refl,
    wrap_pos,
    seq,
    cand,
    pmask,
    state,
    node_quota,
    prune,
    tmp,
):
    depth = state[0]
    used = state[1]
    nodes = 0
    full = (1 << nv) - 1
    nwrap = wrap_pos.shape[0]
    while depth >= 0:
        if nodes >= node_quota:
            state[0] = depth
            state[1] = used
            return PAUSED, nodes
        mask = pmask[depth] & ~used & full
        start = cand[depth]
        placed = False
        v = start
        while v < nv:
            if mask >> v & 1 == 0:
                v += 1
                continue
            ok = True
            if prune == 1 and frontier_start[depth] >= 0:
                s = frontier_start[depth]
                for j in range(k - 1):
                    tmp[j] = seq[s + j] if s + j < depth else v
                _isort(tmp, k - 1)
                r = 0
                for j in range(k - 1):
                    r += binom[tmp[j], j + 1]
                if nbr_mask[r] & ~(used | (1 << v)) & full == 0:
                    ok = False
            if ok and depth == nv - 1 and nwrap > 0:
                for w in range(nwrap):
                    for j in range(k):
                        p = wrap_pos[w, j]
                        tmp[j] = v if p == nv - 1 else seq[p]
                    _isort(tmp, k)
                    r = 0
                    for j in range(k - 1):
                        r += binom[tmp[j], j + 1]
                    if nbr_mask[r] >> tmp[k - 1] & 1 == 0:
                        ok = False
                        break
            if not ok:
                v += 1
                continue
            # accept
            seq[depth] = v
            used |= 1 << v
            cand[depth] = v + 1
            nodes += 1
            depth += 1
            if depth == nv:
                state[0] = depth
                state[1] = used
                return FOUND, nodes
            # static constraints for the next depth
            m = full
            if check_start[depth] >= 0:
                s = check_start[depth]
                for j in range(k - 1):
                    tmp[j] = seq[s + j]
                _isort(tmp, k - 1)
                r = 0
                for j in range(k - 1):
                    r += binom[tmp[j], j + 1]
                m &= nbr_mask[r]
            if rot_pos[depth] == 1:
                m &= ~((1 << (seq[0] + 1)) - 1)
            if ord_prev[depth] == 1:
                m &= ~((1 << (seq[depth - 1] + 1)) - 1)
            if refl == 1 and depth == nv - 1:
                m &= ~((1 << (seq[1] + 1)) - 1)
            pmask[depth] = m
            cand[depth] = 0
            placed = True
            break
        if not placed:
            cand[depth] = 0
            depth -= 1
            if depth >= 0:
                used &= ~(1 << seq[depth])
    state[0] = depth
    state[1] = used
    return EXHAUSTED, nodes


def _isort(a, upto):
    for i in range(1, upto):
        x = a[i]
        j = i - 1
        while j >= 0 and a[j] > x:
            a[j + 1] = a[j]
            j -= 1
        a[j + 1] = x


if _use_numba:
    _isort = njit(cache=True)(_isort)
    _cycle_dfs = njit(cache=True)(_cycle_dfs)

from fractions import Fraction

import pytest

from hypham import (
    ContractViolation,
    Hypergraph,
    SearchBudget,
    complete_kgraph,
    extremal_construction,
    find_hamilton_lcycle,
    find_lpath_between,
    is_absorbing_tuple,
    is_hamilton_lcycle,
    max_sis_in_path,
    max_strong_independent_set,
    random_kgraph,
    sample_absorbing_density,
    threshold_params,
    validate_lpath,
)
from oracles import ham_lcycle_exists, window_edges_path


def test_hamilton_complete_found():
    out = find_hamilton_lcycle(complete_kgraph(3, 6), 2)
    assert out.status == "found"
    assert is_hamilton_lcycle(complete_kgraph(3, 6), out.result)


def test_hamilton_extremal_none():
    h, _ = extremal_construction(3, 2, 9)
    assert find_hamilton_lcycle(h, 2).status == "none"


def test_hamilton_divisibility_short_circuit():
    h = random_kgraph(3, 7, 0.9, seed=1)
    out = find_hamilton_lcycle(h, 1)  # 2 does not divide 7
    assert out.status == "none" and out.nodes == 0


def test_hamilton_budget_outcome():
    h = complete_kgraph(3, 12)
    out = find_hamilton_lcycle(h, 2, SearchBudget(node_limit=3))
    assert out.status == "budget" and out.result is None


def test_hamilton_time_budget_and_chunk_resume():
    # the 15-vertex extremal instance needs far more than one kernel chunk,
    # so this exercises both the pause/resume state and the clock budget
    h, _ = extremal_construction(3, 2, 15)
    out = find_hamilton_lcycle(h, 2, SearchBudget(node_limit=10**9, time_limit=0.2))
    assert out.status == "budget"
    assert out.nodes > 0
    # and a multi-chunk run that completes agrees with the known node count
    h12, _ = extremal_construction(3, 2, 12)
    full = find_hamilton_lcycle(h12, 2)
    assert full.status == "none" and full.nodes == 1013468


@pytest.mark.parametrize("l", [1, 2])
def test_hamilton_agrees_with_permutation_oracle(l):
    # exhaustive-style check at tiny n over seeded random edge sets
    for n in (4, 5, 6):
        if n % (3 - l):
            continue
        for seed in range(12):
            h = random_kgraph(3, n, 0.25 + 0.06 * (seed % 8), seed=seed)
            ours = find_hamilton_lcycle(h, l).status == "found"
            assert ours == ham_lcycle_exists(h, l), (l, n, seed)


def test_hamilton_oracle_agreement_n7_tight():
    for seed in range(8):
        h = random_kgraph(3, 7, 0.35, seed=40 + seed)
        assert (find_hamilton_lcycle(h, 2).status == "found") == ham_lcycle_exists(h, 2)


def test_monotone_under_edge_addition():
    # adding edges never flips found -> none
    import numpy as np

    rng = np.random.default_rng(5)
    h = random_kgraph(3, 8, 0.35, seed=5)
    base = find_hamilton_lcycle(h, 2).status
    all_edges = complete_kgraph(3, 8).edges_as_tuples()
    extra = [e for e in all_edges if not h.has_edge(e)]
    rng.shuffle(extra)
    grown = list(h.edges_as_tuples()) + extra[: len(extra) // 2]
    h2 = Hypergraph(3, 8, grown)
    if base == "found":
        assert find_hamilton_lcycle(h2, 2).status == "found"


def test_shuffle_mode_same_decision():
    for seed in range(5):
        h = random_kgraph(3, 8, 0.4, seed=50 + seed)
        base = find_hamilton_lcycle(h, 2)
        shuf = find_hamilton_lcycle(h, 2, shuffle_seed=seed)
        assert base.status == shuf.status
        if shuf.status == "found":
            assert is_hamilton_lcycle(h, shuf.result)


def test_prune_safety():
    # disabling the frontier prune never changes the decision
    for seed in range(6):
        h = random_kgraph(3, 8, 0.4, seed=seed)
        a = find_hamilton_lcycle(h, 2, frontier_prune=True)
        b = find_hamilton_lcycle(h, 2, frontier_prune=False)
        assert a.status == b.status
        if a.status == "none":
            assert a.nodes <= b.nodes


def test_lpath_between_single_edge():
    h = Hypergraph(3, 5, [(0, 1, 2)])
    # m=1 with the end being the last l vertices of an edge starting at x
    out = find_lpath_between(h, (0,), (2,), 1)
    assert out.status == "found" and set(out.result.vertices) == {0, 1, 2}
    # overlapping ends violate the disjointness precondition
    with pytest.raises(ContractViolation):
        find_lpath_between(h, (0, 1), (1, 2), 1)


def test_lpath_between_complete():
    h = complete_kgraph(3, 10)
    out = find_lpath_between(h, (0, 1), (2, 3), 3)
    assert out.status == "found"
    p = out.result
    assert p.ends() == ((0, 1), (2, 3)) and p.length == 3
    assert validate_lpath(h, p)


def test_lpath_between_blocked_by_construction():
    h, a = extremal_construction(3, 2, 9)
    x = tuple(sorted(a)[:2])  # two A-vertices: degree zero
    out = find_lpath_between(h, x, (7, 8), 3)
    assert out.status == "none"


def test_lpath_between_allowed_restriction():
    h = complete_kgraph(3, 10)
    out = find_lpath_between(h, (0, 1), (2, 3), 3, allowed={9})
    assert out.status == "found"
    assert set(out.result.vertices) == {0, 1, 2, 3, 9}
    out = find_lpath_between(h, (0, 1), (2, 3), 3, allowed=set())
    assert out.status == "none"


def test_lpath_between_contracts():
    h = complete_kgraph(3, 6)
    with pytest.raises(ContractViolation):
        find_lpath_between(h, (0, 1), (1, 2), 2)
    with pytest.raises(ContractViolation):
        find_lpath_between(h, (0, 1), (2, 3), 0)


def test_sis_edgeless_and_extremal():
    h = Hypergraph(3, 6)
    out = max_strong_independent_set(h)
    assert out.status == "found" and out.result == set(range(6))
    hext, a = extremal_construction(3, 2, 9)
    out = max_strong_independent_set(hext)
    assert out.status == "found" and len(out.result) == len(a) == 4


def test_sis_tight_path_matches_formula():
    n, k, l = 7, 3, 2
    edges = [tuple(w) for w in window_edges_path(k, l, n)]
    h = Hypergraph(k, n, edges)
    out = max_strong_independent_set(h)
    assert len(out.result) == len(max_sis_in_path(k, l, n).positions) == 3


def test_sis_budget():
    h = complete_kgraph(3, 10)
    out = max_strong_independent_set(h, SearchBudget(node_limit=1))
    assert out.status == "budget"


def test_absorbing_tuple_complete():
    h = complete_kgraph(3, 12)
    tup = tuple(range(7))  # t_abs(3,2) = 7
    assert is_absorbing_tuple(h, 2, tup, {11})
    with pytest.raises(ContractViolation):
        is_absorbing_tuple(h, 2, tup, {0})  # absorbed set meets the tuple
    with pytest.raises(ContractViolation):
        is_absorbing_tuple(h, 2, tuple(range(6)), {11})


def test_absorbing_tuple_broken_window():
    h = complete_kgraph(3, 12)
    edges = [e for e in h.edges_as_tuples() if e != (0, 1, 2)]
    h2 = Hypergraph(3, 12, edges)
    assert not is_absorbing_tuple(h2, 2, tuple(range(7)), {11})


def test_absorbing_density_complete_and_edgeless():
    h = complete_kgraph(3, 10)
    stats = sample_absorbing_density(h, 2, {9}, samples=60, seed=4)
    assert stats.estimate == 1
    empty = Hypergraph(3, 10)
    stats = sample_absorbing_density(empty, 2, {9}, samples=20, seed=4)
    assert stats.estimate == 0


def test_absorbing_density_deterministic():
    h = random_kgraph(3, 10, 0.8, seed=2)
    s1 = sample_absorbing_density(h, 2, {9}, samples=40, seed=11)
    s2 = sample_absorbing_density(h, 2, {9}, samples=40, seed=11)
    assert s1 == s2


@pytest.mark.parametrize("k,l,ns", [
    (3, 1, (4, 6)),
    (3, 2, (4, 5, 6)),
    (4, 1, (6, 9)),       # stride 3: rotation anchoring is nontrivial here
    (4, 2, (6, 8)),
    (4, 3, (5, 6, 7)),
    (5, 1, (8,)),
    (5, 2, (6,)),
    (5, 3, (6, 8)),
    (5, 4, (6, 7)),
])
def test_engine_matches_permutation_oracle_across_kl(k, l, ns):
    # the kernel's symmetry breaking (stride rotations, free-segment ordering,
    # tight-cycle reflection) must not lose completeness for any (k, l)
    for n in ns:
        for seed in range(6):
            p = 0.3 + 0.1 * (seed % 5)
            h = random_kgraph(k, n, p, seed=900 + 13 * seed + n)
            ours = find_hamilton_lcycle(h, l).status == "found"
            assert ours == ham_lcycle_exists(h, l), (k, l, n, seed)


@pytest.mark.parametrize("k,l,ns", [
    (3, 1, (4, 6, 8)),
    (4, 1, (6, 9)),
    (4, 2, (6, 8)),
    (5, 2, (6, 9)),
    (5, 3, (6, 8)),
])
def test_engine_oracle_agreement_sparse(k, l, ns):
    # sparse instances exercise proven-none paths in both engine and oracle
    for n in ns:
        for seed in range(4):
            h = random_kgraph(k, n, 0.12, seed=500 + 7 * seed + n)
            ours = find_hamilton_lcycle(h, l).status == "found"
            assert ours == ham_lcycle_exists(h, l), (k, l, n, seed)


@pytest.mark.parametrize("k,l,n", [
    (3, 1, 8), (3, 1, 12), (3, 2, 7), (3, 2, 10),
    (4, 1, 9), (4, 1, 12), (4, 2, 8), (4, 2, 12), (4, 3, 9),
    (5, 1, 8), (5, 1, 12), (5, 2, 9), (5, 2, 12), (5, 3, 8), (5, 4, 10),
    (6, 2, 12), (6, 5, 9), (7, 3, 12), (7, 6, 10),
])
def test_minimal_cycle_graphs_found_under_relabeling(k, l, n):
    # the sharpest completeness check for the symmetry breaking: a graph
    # whose edges are exactly the windows of one hidden cyclic order admits a
    # Hamilton l-cycle by construction, wherever vertex 0 happens to sit;
    # deleting any single window edge destroys it (n > k, distinct windows)
    import numpy as np

    d = k - l
    rng = np.random.default_rng(n * 31 + k * 7 + l)
    for trial in range(3):
        seq = [int(v) for v in rng.permutation(n)]
        wins = sorted(
            {tuple(sorted(seq[(s + j) % n] for j in range(k))) for s in range(0, n, d)}
        )
        h = Hypergraph(k, n, wins)
        out = find_hamilton_lcycle(h, l)
        assert out.status == "found", (k, l, n, trial)
        assert is_hamilton_lcycle(h, out.result)
        if n > k and len(wins) == n // d:
            h2 = Hypergraph(k, n, wins[1:])
            assert find_hamilton_lcycle(h2, l).status == "none", (k, l, n, trial)


def naive_lpath_between(h, x, y, m, allowed):
    from itertools import permutations

    k, l = h.k, len(x)
    n_p = m * (k - l) + l
    need = n_p - 2 * l
    if need < 0 or n_p < 2 * l:
        return False
    pool = sorted(set(allowed) - set(x) - set(y))
    edge_set = set(map(tuple, h.edges.tolist()))
    for interior in permutations(pool, need):
        seq = x + interior + y
        if all(
            tuple(sorted(seq[s : s + k])) in edge_set
            for s in range(0, n_p - k + 1, k - l)
        ):
            return True
    return False


def test_lpath_between_matches_bruteforce():
    import numpy as np

    rng = np.random.default_rng(23)
    for seed in range(10):
        h = random_kgraph(3, 9, 0.3 + 0.05 * (seed % 6), seed=600 + seed)
        for _ in range(6):
            picks = [int(v) for v in rng.choice(9, size=4, replace=False)]
            x, y = (picks[0], picks[1]), (picks[2], picks[3])
            allowed = set(int(v) for v in rng.choice(9, size=7, replace=False))
            for m in (2, 3):
                got = find_lpath_between(h, x, y, m, allowed=allowed)
                assert got.status in ("found", "none")
                assert (got.status == "found") == naive_lpath_between(
                    h, x, y, m, allowed
                ), (seed, x, y, m)


def test_lpath_between_prune_safety():
    for seed in range(6):
        h = random_kgraph(3, 10, 0.35, seed=700 + seed)
        a = find_lpath_between(h, (0, 1), (2, 3), 3, frontier_prune=True)
        b = find_lpath_between(h, (0, 1), (2, 3), 3, frontier_prune=False)
        assert a.status == b.status
        if a.status == "none":
            assert a.nodes <= b.nodes


def naive_absorbing(h, l, tup, t_set):
    """Definition-level absorbing check via raw permutation enumeration."""
    from itertools import permutations

    k = h.k
    edge_set = set(map(tuple, h.edges.tolist()))

    def path_ok(seq):
        return all(
            tuple(sorted(seq[s : s + k])) in edge_set
            for s in range(0, len(seq) - k + 1, k - l)
        )

    if not path_ok(tup):
        return False
    x, y = tup[:l], tup[-l:]
    middle = set(tup[l : len(tup) - l]) | set(t_set)
    for perm in permutations(sorted(middle)):
        if path_ok(x + perm + y):
            return True
    return False


def test_absorbing_matches_naive_checker():
    import numpy as np

    rng = np.random.default_rng(17)
    t_set = {9}
    for seed in range(6):
        h = random_kgraph(3, 10, 0.55 + 0.08 * (seed % 4), seed=300 + seed)
        for _ in range(8):
            tup = tuple(int(v) for v in rng.permutation(9)[:7])
            assert is_absorbing_tuple(h, 2, tup, t_set) == naive_absorbing(
                h, 2, tup, t_set
            ), (seed, tup)


def test_search_outcomes_are_verified():
    # soundness: every found cycle/path passes its validator
    for seed in range(5):
        h = random_kgraph(3, 8, 0.6, seed=seed)
        out = find_hamilton_lcycle(h, 2)
        if out.status == "found":
            assert is_hamilton_lcycle(h, out.result)
        out = find_lpath_between(h, (0, 1), (2, 3), 3)
        if out.status == "found":
            assert validate_lpath(h, out.result)

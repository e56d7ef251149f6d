import json

import pytest

from hypham import ContractViolation, dumps_hypergraph, extremal_construction
from hypham.cli import main
from hypham.sweep import (
    SweepConfig,
    instance_seed,
    read_rows,
    rows_to_csv,
    run_sweep,
    summarize,
    summary_table,
)


def small_cfg(**kw):
    base = dict(
        k=3, l=2, n_list=(6, 9), generator="random", p_grid=(0.4, 0.8),
        trials=2, seed=5, no_timing=True,
    )
    base.update(kw)
    return SweepConfig(**base)


def test_sweep_determinism(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run_sweep(small_cfg(), a)
    run_sweep(small_cfg(), b)
    assert a.read_bytes() == b.read_bytes()


def test_sweep_schema():
    rows = run_sweep(small_cfg(n_list=(6,), p_grid=(0.4,), trials=1))
    row = rows[0]
    csv_text = rows_to_csv(rows, no_timing=True)
    header = csv_text.splitlines()[0].split(",")
    assert "ham_seconds" not in header and "sis_nodes" in header
    assert row["hamilton"] in ("found", "none", "budget")
    assert row["pfm"] in ("perfect", "infeasible")


def test_sweep_extremal_row_values():
    cfg = SweepConfig(
        k=3, l=2, n_list=(9,), generator="extremal", trials=1, seed=0,
        no_timing=True,
    )
    row = run_sweep(cfg)[0]
    assert row["delta_plus"] == 4
    assert row["hamilton"] == "none"
    assert row["pfm"] == "infeasible"


def test_sweep_complete_vs_random_p1():
    c1 = SweepConfig(k=3, l=2, n_list=(6,), generator="complete", trials=1, seed=0)
    c2 = SweepConfig(
        k=3, l=2, n_list=(6,), generator="random", p_grid=(1.0,), trials=1, seed=0
    )
    r1, r2 = run_sweep(c1)[0], run_sweep(c2)[0]
    for col in ("delta", "delta_plus", "hamilton", "pfm", "sis", "ham_nodes"):
        assert r1[col] == r2[col]


def test_sweep_undefined_delta_plus_serializes_na():
    cfg = SweepConfig(
        k=3, l=2, n_list=(6,), generator="random", p_grid=(0.0,), trials=1, seed=0
    )
    row = run_sweep(cfg)[0]
    assert row["delta_plus"] == "NA"


def test_sweep_config_validation():
    with pytest.raises(ContractViolation):
        SweepConfig(k=3, l=1, n_list=(7,), generator="random", p_grid=(0.5,))
    with pytest.raises(ContractViolation):
        SweepConfig(k=3, l=2, n_list=(6,), generator="random")
    with pytest.raises(ContractViolation):
        SweepConfig(k=3, l=2, n_list=(6,), generator="complete", trials=0)


def test_sweep_workers_deterministic(tmp_path):
    # parallel cell evaluation emits rows in the same deterministic order
    a, b = tmp_path / "w1.csv", tmp_path / "w2.csv"
    run_sweep(small_cfg(workers=1), a)
    run_sweep(small_cfg(workers=2), b)
    assert a.read_bytes() == b.read_bytes()


def test_instance_seed_stable():
    assert instance_seed(5, 3, 2, 9, 0, 0) == instance_seed(5, 3, 2, 9, 0, 0)
    assert instance_seed(5, 3, 2, 9, 0, 0) != instance_seed(5, 3, 2, 9, 0, 1)


def test_sweep_budget_rows_recorded_not_conflated():
    from hypham import SearchBudget

    cfg = SweepConfig(
        k=3, l=2, n_list=(12,), generator="complete", trials=1, seed=0,
        budget=SearchBudget(node_limit=3), no_timing=True,
    )
    row = run_sweep(cfg)[0]
    assert row["hamilton"] == "budget"
    assert row["sis"] == "budget"
    cell = summarize([row])["3/2/12/complete/"]
    assert cell["hamilton_fraction"] is None
    assert cell["undecided"] == 1 and cell["decided"] == 0


def test_sweep_threshold_probe_end_to_end():
    # a realistic mini-experiment across the cover threshold: dense cells
    # should find Hamilton cycles, sparse ones mostly not; rows stay
    # faithful to the three-valued outcomes throughout
    cfg = SweepConfig(
        k=3, l=2, n_list=(9, 12), generator="random",
        p_grid=(0.15, 0.95), trials=3, seed=99, no_timing=True,
    )
    rows = run_sweep(cfg)
    s = summarize(rows)
    assert s["3/2/9/random/0.95"]["hamilton_fraction"] == 1.0
    assert s["3/2/12/random/0.95"]["hamilton_fraction"] == 1.0
    assert s["3/2/9/random/0.15"]["hamilton_fraction"] < 1.0
    for row in rows:
        assert row["hamilton"] in ("found", "none", "budget")


def test_summarize_fractions():
    rows = [
        {"k": 3, "l": 2, "n": 9, "gen": "g", "p": "", "hamilton": "found", "delta_plus": 4},
        {"k": 3, "l": 2, "n": 9, "gen": "g", "p": "", "hamilton": "none", "delta_plus": 4},
        {"k": 3, "l": 2, "n": 9, "gen": "g", "p": "", "hamilton": "budget", "delta_plus": "NA"},
    ]
    s = summarize(rows)
    cell = s["3/2/9/g/"]
    assert cell["hamilton_fraction"] == 0.5  # budget never counted as none
    assert cell["undecided"] == 1
    assert cell["decided"] == 2
    with pytest.raises(ContractViolation):
        summarize([])
    assert "ham_frac" in summary_table(s)


def test_summarize_all_budget_is_na():
    rows = [
        {"k": 3, "l": 2, "n": 9, "gen": "g", "p": "", "hamilton": "budget", "delta_plus": "NA"},
    ]
    cell = summarize(rows)["3/2/9/g/"]
    assert cell["hamilton_fraction"] is None and cell["undecided"] == 1


# ----------------------------------------------------------------------
# CLI


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_cli_params(capsys):
    code, out = run_cli(capsys, "params", "--k", "3", "--l", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["dcover"] == "2/3" and payload["t_abs"] == 7


def test_cli_gen_stats_ham(tmp_path, capsys):
    g = tmp_path / "h.txt"
    code, _ = run_cli(capsys, "gen", "extremal", "--k", "3", "--l", "2", "--n", "9", "--out", str(g))
    assert code == 0
    code, out = run_cli(capsys, "stats", str(g))
    assert json.loads(out)["min_positive_codegree"] == 4
    code, out = run_cli(capsys, "ham", str(g), "--l", "2")
    assert code == 0 and json.loads(out)["status"] == "none"


def test_cli_ham_found_cycle_parses(tmp_path, capsys):
    from hypham import complete_kgraph, is_hamilton_lcycle, parse_path_line

    g = tmp_path / "c.txt"
    run_cli(capsys, "gen", "complete", "--k", "3", "--n", "6", "--out", str(g))
    code, out = run_cli(capsys, "ham", str(g), "--l", "2")
    payload = json.loads(out)
    assert code == 0 and payload["status"] == "found"
    cycle = parse_path_line(payload["cycle"])
    assert is_hamilton_lcycle(complete_kgraph(3, 6), cycle)


def test_cli_gen_matches_library(tmp_path, capsys):
    g = tmp_path / "c.txt"
    run_cli(capsys, "gen", "complete", "--k", "3", "--n", "6", "--out", str(g))
    from hypham import complete_kgraph, read_hypergraph

    assert read_hypergraph(g) == complete_kgraph(3, 6)


def test_cli_budget_exit_code(tmp_path, capsys):
    g = tmp_path / "c.txt"
    run_cli(capsys, "gen", "complete", "--k", "3", "--n", "12", "--out", str(g))
    code, out = run_cli(capsys, "ham", str(g), "--l", "2", "--budget-nodes", "2")
    assert code == 3 and json.loads(out)["status"] == "budget"


def test_cli_contract_exit_code(capsys):
    code = main(["params", "--k", "2", "--l", "1"])
    assert code == 2


def test_cli_io_exit_code(capsys):
    code = main(["stats", "/nonexistent/file.txt"])
    assert code == 4


def test_cli_fracmatch_schema(tmp_path, capsys):
    g = tmp_path / "h.txt"
    run_cli(capsys, "gen", "complete", "--k", "3", "--n", "6", "--out", str(g))
    code, out = run_cli(capsys, "fracmatch", str(g), "--l", "2")
    payload = json.loads(out)
    assert payload["status"] == "perfect"
    assert payload["M"] == "1/60"
    assert all(set(e) == {"edge", "head", "q"} for e in payload["assignment"])
    hx = tmp_path / "hx.txt"
    run_cli(capsys, "gen", "extremal", "--k", "3", "--l", "2", "--n", "9", "--out", str(hx))
    code, out = run_cli(capsys, "fracmatch", str(hx), "--l", "2")
    payload = json.loads(out)
    assert payload["status"] == "infeasible" and "certificate" in payload


def test_cli_connect_and_exact(tmp_path, capsys):
    g = tmp_path / "c.txt"
    run_cli(capsys, "gen", "complete", "--k", "3", "--n", "20", "--out", str(g))
    code, out = run_cli(capsys, "connect", str(g), "--x", "0,1", "--y", "2,3")
    assert json.loads(out)["status"] == "found"
    code, out = run_cli(
        capsys, "connectexact", str(g), "--x", "0,1", "--y", "2,3", "--length", "3"
    )
    assert json.loads(out)["status"] == "found"


def test_cli_peel_tile_absorb_sis(tmp_path, capsys):
    g = tmp_path / "c.txt"
    run_cli(capsys, "gen", "complete", "--k", "3", "--n", "10", "--out", str(g))
    code, out = run_cli(capsys, "peel", str(g), "--tau", "3")
    payload = json.loads(out)
    assert payload["edges_after"] == payload["edges_before"]
    code, out = run_cli(capsys, "tile", str(g), "--l", "2", "--beta", "1/10")
    assert json.loads(out)["coverage"] == "1/1"
    code, out = run_cli(
        capsys, "absorb", str(g), "--l", "2", "--t-set", "9", "--samples", "20"
    )
    assert json.loads(out)["estimate"] == "1/1"
    code, out = run_cli(capsys, "sis", str(g))
    assert json.loads(out)["size"] == 1


def test_cli_sweep_and_summarize(tmp_path, capsys):
    out_csv = tmp_path / "s.csv"
    code, _ = run_cli(
        capsys, "sweep", "--k", "3", "--l", "2", "--n", "6", "--gen", "random",
        "--p", "0.5", "--trials", "2", "--seed", "3", "--no-timing",
        "--out", str(out_csv),
    )
    assert code == 0
    rows = read_rows(out_csv)
    assert len(rows) == 2
    code, out = run_cli(capsys, "summarize", str(out_csv), "--format", "text")
    assert code == 0 and "ham_frac" in out


def test_cli_plot(tmp_path, capsys):
    out_csv = tmp_path / "s.csv"
    run_cli(
        capsys, "sweep", "--k", "3", "--l", "2", "--n", "6,9", "--gen", "random",
        "--p", "0.8", "--trials", "1", "--seed", "3", "--out", str(out_csv),
    )
    svg = tmp_path / "s.svg"
    code, out = run_cli(capsys, "plot", str(out_csv), "--out", str(svg))
    assert code == 0 and svg.exists() and svg.read_bytes().startswith(b"<?xml")


def test_cli_gen_extremal_comment_round_trips(tmp_path, capsys):
    g = tmp_path / "h.txt"
    run_cli(capsys, "gen", "extremal", "--k", "3", "--l", "2", "--n", "9", "--out", str(g))
    text = g.read_text()
    assert "# A = 0 1 2 3" in text
    from hypham import loads_hypergraph

    h, _ = extremal_construction(3, 2, 9)
    assert loads_hypergraph(text) == h
    assert dumps_hypergraph(h) == "\n".join(
        line for line in text.splitlines() if not line.startswith("#")
    ) + "\n"

"""Threshold-sweep experiments: deterministic instance grids, per-instance
measurements, CSV output and summaries.

Instance seeds derive from the master seed via a stable documented hash:
``sha256("{seed}:{k}:{l}:{n}:{p_index}:{trial}")`` reduced mod 2**63, so
cells are independent and reruns are byte-identical.  Wall-time columns are
the only nondeterministic fields; ``no_timing`` drops them, which is what
the determinism contract is checked against.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ContractViolation
from .generators import complete_kgraph, extremal_construction, random_kgraph
from .hypergraph import Hypergraph
from .matching import FarkasCertificate, find_weighted_pfm
from .params import threshold_params
from .search import SearchBudget, find_hamilton_lcycle, max_strong_independent_set

COLUMNS = [
    "k", "l", "n", "gen", "p", "trial", "instance_seed",
    "delta", "delta_plus", "isolated",
    "hamilton", "ham_nodes", "ham_seconds",
    "pfm", "sis", "sis_nodes", "sis_seconds",
]
TIMING_COLUMNS = ("ham_seconds", "sis_seconds")


@dataclass(frozen=True)
class SweepConfig:
    k: int
    l: int
    n_list: tuple
    generator: str  # "random" | "extremal" | "complete"
    p_grid: tuple = ()  # probabilities, random generator only
    trials: int = 1
    seed: int = 0
    budget: SearchBudget = field(default_factory=SearchBudget)
    no_timing: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.generator not in ("random", "extremal", "complete"):
            raise ContractViolation(f"unknown generator {self.generator!r}")
        if self.trials < 1:
            raise ContractViolation("trials must be >= 1")
        d = self.k - self.l
        for n in self.n_list:
            if n % d != 0:
                raise ContractViolation(
                    f"every n must be divisible by k-l={d}; offending n={n}"
                )
        if self.generator == "random" and not self.p_grid:
            raise ContractViolation("random generator needs a probability grid")

    def cells(self):
        ps = self.p_grid if self.generator == "random" else (None,)
        for n in self.n_list:
            for p_index, p in enumerate(ps):
                for trial in range(self.trials):
                    yield n, p_index, p, trial


def instance_seed(seed: int, k: int, l: int, n: int, p_index: int, trial: int) -> int:
    digest = hashlib.sha256(f"{seed}:{k}:{l}:{n}:{p_index}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big") % (2**63)


def _make_instance(cfg: SweepConfig, n: int, p, iseed: int) -> Hypergraph:
    if cfg.generator == "complete":
        return complete_kgraph(cfg.k, n)
    if cfg.generator == "extremal":
        return extremal_construction(cfg.k, cfg.l, n)[0]
    return random_kgraph(cfg.k, n, p, iseed)


def _measure_cell(args):
    cfg, n, p_index, p, trial = args
    iseed = instance_seed(cfg.seed, cfg.k, cfg.l, n, p_index, trial)
    h = _make_instance(cfg, n, p, iseed)
    params = threshold_params(cfg.k, cfg.l)

    delta = h.min_codegree()
    delta_plus = h.min_positive_codegree()
    isolated = len(h.isolated_vertices())

    ham = find_hamilton_lcycle(h, cfg.l, cfg.budget)
    pfm = find_weighted_pfm(h, params)
    pfm_status = "infeasible" if isinstance(pfm, FarkasCertificate) else "perfect"
    sis = max_strong_independent_set(h, cfg.budget)
    sis_value = "budget" if sis.status == "budget" else str(len(sis.result))

    return {
        "k": cfg.k,
        "l": cfg.l,
        "n": n,
        "gen": cfg.generator,
        "p": "" if p is None else repr(p),
        "trial": trial,
        "instance_seed": iseed,
        "delta": delta,
        "delta_plus": "NA" if delta_plus is None else delta_plus,
        "isolated": isolated,
        "hamilton": ham.status,
        "ham_nodes": ham.nodes,
        "ham_seconds": f"{ham.seconds:.6f}",
        "pfm": pfm_status,
        "sis": sis_value,
        "sis_nodes": sis.nodes,
        "sis_seconds": f"{sis.seconds:.6f}",
    }


def run_sweep(cfg: SweepConfig, out_path=None) -> list[dict]:
    """Measure every cell; write CSV incrementally when out_path is given.

    Cells may be evaluated by several workers, but rows are emitted in
    deterministic cell order regardless of completion order.
    """
    cell_args = [(cfg, n, pi, p, t) for n, pi, p, t in cfg.cells()]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            rows = list(pool.map(_measure_cell, cell_args))
    else:
        rows = [_measure_cell(a) for a in cell_args]

    if out_path is not None:
        with open(out_path, "w", newline="") as f:
            _write_csv(rows, f, cfg.no_timing)
    return rows


def rows_to_csv(rows, no_timing: bool = False) -> str:
    buf = io.StringIO()
    _write_csv(rows, buf, no_timing)
    return buf.getvalue()


def _write_csv(rows, f, no_timing: bool) -> None:
    cols = [c for c in COLUMNS if not (no_timing and c in TIMING_COLUMNS)]
    w = csv.writer(f, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow([row[c] for c in cols])


def read_rows(path) -> list[dict]:
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def summarize(rows) -> dict:
    """Per (k, l, n, gen, p) cell: Hamilton fraction among decided instances,
    mean delta_plus / n, and the undecided count."""
    if not rows:
        raise ContractViolation("summarize needs at least one row")
    groups: dict = {}
    for r in rows:
        key = (r["k"], r["l"], r["n"], r["gen"], r["p"])
        groups.setdefault(key, []).append(r)
    out = {}
    for key in sorted(groups, key=lambda t: tuple(str(x) for x in t)):
        rs = groups[key]
        found = sum(1 for r in rs if r["hamilton"] == "found")
        none = sum(1 for r in rs if r["hamilton"] == "none")
        undecided = sum(1 for r in rs if r["hamilton"] == "budget")
        decided = found + none
        dp = [
            Fraction(int(r["delta_plus"]), int(r["n"]))
            for r in rs
            if r["delta_plus"] != "NA"
        ]
        out["/".join(str(x) for x in key)] = {
            "trials": len(rs),
            "hamilton_fraction": None if decided == 0 else float(Fraction(found, decided)),
            "decided": decided,
            "undecided": undecided,
            "mean_delta_plus_frac": None if not dp else float(sum(dp) / len(dp)),
        }
    return out


def summary_table(summary: dict) -> str:
    header = f"{'cell':<28} {'trials':>6} {'ham_frac':>9} {'undec':>6} {'d+/n':>8}"
    lines = [header, "-" * len(header)]
    for key, s in summary.items():
        frac = "NA" if s["hamilton_fraction"] is None else f"{s['hamilton_fraction']:.3f}"
        dp = "NA" if s["mean_delta_plus_frac"] is None else f"{s['mean_delta_plus_frac']:.4f}"
        lines.append(f"{key:<28} {s['trials']:>6} {frac:>9} {s['undecided']:>6} {dp:>8}")
    return "\n".join(lines)


def summary_json(summary: dict) -> str:
    return json.dumps(summary, indent=2)

"""Batch command line interface.

Subcommands: gen, params, stats, ham, sis, connect, connectexact, peel,
fracmatch, absorb, tile, sweep, summarize, plot.  Hypergraphs travel in the
text format of `textio`; results are JSON unless --format says otherwise.

Exit codes: 0 success, 2 contract violation, 3 budget exhausted
(single-instance search commands), 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .connect import connect_ends, peel_to_positive_codegree, tile_paths
from .errors import ContractViolation, QueryError
from .generators import complete_kgraph, extremal_construction, random_kgraph
from .matching import FarkasCertificate, find_min_max_pfm, find_weighted_pfm
from .params import threshold_params
from .search import (
    SearchBudget,
    find_hamilton_lcycle,
    find_lpath_between,
    max_strong_independent_set,
    sample_absorbing_density,
)
from .sweep import (
    SweepConfig,
    read_rows,
    run_sweep,
    summarize,
    summary_json,
    summary_table,
)
from .textio import dumps_hypergraph, frac_str, path_line, read_hypergraph

EXIT_OK = 0
EXIT_CONTRACT = 2
EXIT_BUDGET = 3
EXIT_IO = 4


def _ints(s: str) -> list[int]:
    return [int(x) for x in s.split(",") if x != ""]


def _floats(s: str) -> list[float]:
    return [float(x) for x in s.split(",") if x != ""]


def _budget(args) -> SearchBudget:
    return SearchBudget(
        node_limit=args.budget_nodes,
        time_limit=args.budget_seconds,
    )


def _emit(args, payload: dict) -> None:
    if getattr(args, "format", "json") == "json":
        print(json.dumps(payload, indent=2))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")


def _write_graph(h, out) -> None:
    text = dumps_hypergraph(h)
    if out:
        with open(out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


# ----------------------------------------------------------------------
# subcommand implementations


def cmd_gen(args) -> int:
    if args.kind == "complete":
        h = complete_kgraph(args.k, args.n)
    elif args.kind == "extremal":
        if args.l is None:
            raise ContractViolation("gen extremal needs --l")
        h, a = extremal_construction(args.k, args.l, args.n)
        text = dumps_hypergraph(h)
        header, rest = text.split("\n", 1)
        text = header + "\n# A = " + " ".join(str(v) for v in sorted(a)) + "\n" + rest
        if args.out:
            with open(args.out, "w") as f:
                f.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    else:
        h = random_kgraph(args.k, args.n, args.p, args.seed)
    _write_graph(h, args.out)
    return EXIT_OK


def cmd_params(args) -> int:
    p = threshold_params(args.k, args.l)
    payload = {
        "k": p.k,
        "l": p.l,
        "ctmod": p.ctmod,
        "ceilkl": p.ceilkl,
        "dcover": frac_str(p.dcover),
        "dconnect": frac_str(p.dconnect),
        "weights": list(p.weights),
        "W": p.W,
        "t_abs": p.t_abs,
        "connect_len": p.connect_len,
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_stats(args) -> int:
    h = read_hypergraph(args.graph)
    dplus = h.min_positive_codegree()
    payload = {
        "k": h.k,
        "n": h.n,
        "edges": h.edge_count,
        "min_codegree": h.min_codegree() if h.n >= h.k - 1 else "NA",
        "min_positive_codegree": "NA" if dplus is None else dplus,
        "isolated": len(h.isolated_vertices()),
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_ham(args) -> int:
    h = read_hypergraph(args.graph)
    out = find_hamilton_lcycle(h, args.l, _budget(args))
    payload = {
        "status": out.status,
        "cycle": None if out.result is None else path_line(out.result),
        "nodes": out.nodes,
        "seconds": round(out.seconds, 6),
    }
    _emit(args, payload)
    return EXIT_BUDGET if out.status == "budget" else EXIT_OK


def cmd_sis(args) -> int:
    h = read_hypergraph(args.graph)
    out = max_strong_independent_set(h, _budget(args))
    payload = {
        "status": out.status,
        "size": len(out.result),
        "members": sorted(out.result),
        "nodes": out.nodes,
        "seconds": round(out.seconds, 6),
    }
    _emit(args, payload)
    return EXIT_BUDGET if out.status == "budget" else EXIT_OK


def cmd_connect(args) -> int:
    h = read_hypergraph(args.graph)
    x, y = _ints(args.x), _ints(args.y)
    params = threshold_params(h.k, len(x))
    forbidden = set(_ints(args.forbidden)) if args.forbidden else set()
    path = connect_ends(h, params, x, y, forbidden, seed=args.seed)
    payload = {
        "status": "found" if path else "failure",
        "path": None if path is None else path_line(path),
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_connectexact(args) -> int:
    h = read_hypergraph(args.graph)
    allowed = set(_ints(args.allowed)) if args.allowed else None
    out = find_lpath_between(
        h, _ints(args.x), _ints(args.y), args.length, allowed, _budget(args)
    )
    payload = {
        "status": out.status,
        "path": None if out.result is None else path_line(out.result),
        "nodes": out.nodes,
        "seconds": round(out.seconds, 6),
    }
    _emit(args, payload)
    return EXIT_BUDGET if out.status == "budget" else EXIT_OK


def cmd_peel(args) -> int:
    h = read_hypergraph(args.graph)
    res = peel_to_positive_codegree(h, Fraction(args.tau))
    if args.out:
        _write_graph(res.graph, args.out)
    dplus = res.graph.min_positive_codegree()
    payload = {
        "tau": frac_str(res.tau),
        "edges_before": h.edge_count,
        "edges_after": res.graph.edge_count,
        "steps": len(res.trace) - 1,
        "min_positive_codegree": "NA" if dplus is None else dplus,
        "ratio_nondecreasing": res.ratio_nondecreasing(),
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_fracmatch(args) -> int:
    h = read_hypergraph(args.graph)
    params = threshold_params(h.k, args.l)
    if args.feasible_only:
        got = find_weighted_pfm(h, params)
        matching, m_value = (got, None) if not isinstance(got, FarkasCertificate) else (None, None)
        cert = got if isinstance(got, FarkasCertificate) else None
    else:
        got = find_min_max_pfm(h, params)
        if isinstance(got, FarkasCertificate):
            matching, m_value, cert = None, None, got
        else:
            matching, m_value = got
            cert = None
    if cert is not None:
        payload = {
            "status": "infeasible",
            "certificate": [frac_str(v) for v in cert.y],
        }
    else:
        payload = {
            "status": "perfect",
            "assignment": [
                {"edge": list(var.edge), "head": var.head, "q": frac_str(q)}
                for var, q in sorted(matching.assignment.items())
            ],
        }
        if m_value is not None:
            payload["M"] = frac_str(m_value)
    _emit(args, payload)
    return EXIT_OK


def cmd_absorb(args) -> int:
    h = read_hypergraph(args.graph)
    stats = sample_absorbing_density(
        h, args.l, _ints(args.t_set), args.samples, args.seed
    )
    payload = {
        "samples": stats.samples,
        "hits": stats.hits,
        "estimate": frac_str(stats.estimate),
        "t_abs": stats.t_abs,
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_tile(args) -> int:
    h = read_hypergraph(args.graph)
    params = threshold_params(h.k, args.l)
    res = tile_paths(
        h,
        params,
        Fraction(args.beta),
        mode=args.mode,
        seed=args.seed,
        num_clusters=args.clusters,
        cluster_density=Fraction(args.density),
    )
    payload = {
        "mode": res.mode,
        "lp_status": res.lp_status,
        "paths": [path_line(p) for p in res.paths],
        "path_count": len(res.paths),
        "coverage": frac_str(res.coverage),
        "coverage_float": float(res.coverage),
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = SweepConfig(
        k=args.k,
        l=args.l,
        n_list=tuple(_ints(args.n)),
        generator=args.gen,
        p_grid=tuple(_floats(args.p)) if args.p else (),
        trials=args.trials,
        seed=args.seed,
        budget=_budget(args),
        no_timing=args.no_timing,
        workers=args.workers,
    )
    rows = run_sweep(cfg, args.out)
    if not args.out:
        from .sweep import rows_to_csv

        sys.stdout.write(rows_to_csv(rows, cfg.no_timing))
    return EXIT_OK


def cmd_summarize(args) -> int:
    rows = read_rows(args.csv)
    s = summarize(rows)
    if args.format == "text":
        print(summary_table(s))
    else:
        print(summary_json(s))
    return EXIT_OK


def cmd_plot(args) -> int:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = read_rows(args.csv)
    s = summarize(rows)
    series: dict = {}
    for key, cell in s.items():
        k, l, n, gen, p = key.split("/")
        label = f"{gen} p={p}" if p else gen
        if cell["hamilton_fraction"] is not None:
            series.setdefault(label, []).append((int(n), cell["hamilton_fraction"]))
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, pts in sorted(series.items()):
        pts.sort()
        ax.plot([x for x, _ in pts], [y for _, y in pts], marker="o", label=label)
    ax.set_xlabel("n")
    ax.set_ylabel("Hamilton fraction (decided)")
    ax.set_ylim(-0.05, 1.05)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(args.out, format="svg")
    print(f"wrote {args.out}")
    return EXIT_OK


# ----------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget-nodes", type=int, default=10**8)
    common.add_argument("--budget-seconds", type=float, default=None)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--no-timing", action="store_true")

    ap = argparse.ArgumentParser(prog="hypham", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a hypergraph")
    g.add_argument("kind", choices=("random", "extremal", "complete"))
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--l", type=int, default=None)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", type=float, default=0.5)
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)

    p = sub.add_parser("params", parents=[common], help="threshold constants")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(func=cmd_params)

    st = sub.add_parser("stats", parents=[common], help="degree statistics")
    st.add_argument("graph")
    st.set_defaults(func=cmd_stats)

    hm = sub.add_parser("ham", parents=[common], help="exact Hamilton l-cycle search")
    hm.add_argument("graph")
    hm.add_argument("--l", type=int, required=True)
    hm.set_defaults(func=cmd_ham)

    si = sub.add_parser("sis", parents=[common], help="maximum strong independent set")
    si.add_argument("graph")
    si.set_defaults(func=cmd_sis)

    c = sub.add_parser("connect", parents=[common], help="greedy end connection")
    c.add_argument("graph")
    c.add_argument("--x", required=True)
    c.add_argument("--y", required=True)
    c.add_argument("--forbidden", default="")
    c.set_defaults(func=cmd_connect)

    ce = sub.add_parser("connectexact", parents=[common], help="exact l-path between ends")
    ce.add_argument("graph")
    ce.add_argument("--x", required=True)
    ce.add_argument("--y", required=True)
    ce.add_argument("--length", type=int, required=True)
    ce.add_argument("--allowed", default="")
    ce.set_defaults(func=cmd_connectexact)

    pe = sub.add_parser("peel", parents=[common], help="codegree peeling")
    pe.add_argument("graph")
    pe.add_argument("--tau", required=True)
    pe.add_argument("--out", default=None)
    pe.set_defaults(func=cmd_peel)

    fm = sub.add_parser("fracmatch", parents=[common], help="weighted perfect fractional matching")
    fm.add_argument("graph")
    fm.add_argument("--l", type=int, required=True)
    fm.add_argument("--feasible-only", action="store_true")
    fm.set_defaults(func=cmd_fracmatch)

    ab = sub.add_parser("absorb", parents=[common], help="absorbing tuple sampling")
    ab.add_argument("graph")
    ab.add_argument("--l", type=int, required=True)
    ab.add_argument("--t-set", required=True, help="comma list, the absorbed (k-l)-set")
    ab.add_argument("--samples", type=int, default=1000)
    ab.set_defaults(func=cmd_absorb)

    ti = sub.add_parser("tile", parents=[common], help="path tiling")
    ti.add_argument("graph")
    ti.add_argument("--l", type=int, required=True)
    ti.add_argument("--beta", default="1/10")
    ti.add_argument("--mode", choices=("direct", "cluster"), default="direct")
    ti.add_argument("--clusters", type=int, default=None)
    ti.add_argument("--density", default="1/4")
    ti.set_defaults(func=cmd_tile)

    sw = sub.add_parser("sweep", parents=[common], help="threshold sweep experiments")
    sw.add_argument("--k", type=int, required=True)
    sw.add_argument("--l", type=int, required=True)
    sw.add_argument("--n", required=True, help="comma list of vertex counts")
    sw.add_argument("--gen", choices=("random", "extremal", "complete"), required=True)
    sw.add_argument("--p", default="", help="comma list of probabilities (random)")
    sw.add_argument("--trials", type=int, default=1)
    sw.add_argument("--out", default=None)
    sw.add_argument("--workers", type=int, default=1)
    sw.set_defaults(func=cmd_sweep)

    su = sub.add_parser("summarize", parents=[common], help="summarize a sweep CSV")
    su.add_argument("csv")
    su.set_defaults(func=cmd_summarize)

    pl = sub.add_parser("plot", parents=[common], help="render sweep curves to SVG")
    pl.add_argument("csv")
    pl.add_argument("--out", required=True)
    pl.set_defaults(func=cmd_plot)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ContractViolation, QueryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

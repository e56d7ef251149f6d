#!/usr/bin/env python3
"""Benchmark the Hamilton-search kernel: numba backend vs pure-Python fallback.

Each backend runs in its own subprocess (the backend is fixed at import time
by HYPHAM_BACKEND).  Workloads are exact decisions, so both backends must
report identical node counts; the score is nodes per second.

Usage: python3 benchmarks/bench_engine.py
"""

import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import hypham as hh

cases = [
    ("extremal(3,2,12) none", lambda: hh.extremal_construction(3, 2, 12)[0], 2),
    ("extremal(3,2,9) none", lambda: hh.extremal_construction(3, 2, 9)[0], 2),
    ("extremal(4,3,8) none", lambda: hh.extremal_construction(4, 3, 8)[0], 3),
    ("random(3,13,p=.25) seed=3", lambda: hh.random_kgraph(3, 13, 0.25, seed=3), 2),
]
out = {"backend": hh.backend_name(), "cases": []}
for name, make, l in cases:
    h = make()
    hh.find_hamilton_lcycle(h, l)  # warm-up (JIT compile on the numba path)
    t0 = time.perf_counter()
    res = hh.find_hamilton_lcycle(h, l)
    dt = time.perf_counter() - t0
    out["cases"].append(
        {"name": name, "status": res.status, "nodes": res.nodes, "seconds": dt}
    )
print(json.dumps(out))
"""


def run_backend(backend: str) -> dict:
    env = dict(os.environ, HYPHAM_BACKEND=backend)
    proc = subprocess.run(
        [sys.executable, "-c", WORKER], env=env, capture_output=True, text=True
    )
    if proc.returncode != 0:
        raise RuntimeError(f"{backend} worker failed:\n{proc.stderr}")
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main() -> int:
    results = {b: run_backend(b) for b in ("python", "numba")}
    print(f"{'case':<28} {'status':<7} {'nodes':>9} "
          f"{'python s':>10} {'numba s':>10} {'speedup':>8}")
    for py_case, nb_case in zip(results["python"]["cases"], results["numba"]["cases"]):
        assert py_case["nodes"] == nb_case["nodes"], "backends disagree on node counts"
        assert py_case["status"] == nb_case["status"]
        speed = py_case["seconds"] / nb_case["seconds"] if nb_case["seconds"] else 0.0
        print(f"{py_case['name']:<28} {py_case['status']:<7} {py_case['nodes']:>9} "
              f"{py_case['seconds']:>10.4f} {nb_case['seconds']:>10.4f} {speed:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

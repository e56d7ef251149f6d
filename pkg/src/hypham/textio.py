"""Interchange formats.

Hypergraph text format (bit-exact round trip):
    line 1: ``k n m``
    then m lines of k space-separated, strictly increasing vertex indices,
    lex-sorted; lines starting with ``#`` are ignored on input.

Paths and cycles serialize to one line: ``k l [p|c] v0 v1 ... v_{n-1}``.
Rationals render as ``"p/q"`` strings inside JSON documents.
"""

from __future__ import annotations

import io
from fractions import Fraction

import numpy as np

from .errors import ContractViolation
from .hypergraph import Hypergraph
from .paths import LCycle, LPath


def dumps_hypergraph(h: Hypergraph) -> str:
    lines = [f"{h.k} {h.n} {h.edge_count}"]
    for row in h.edges.tolist():
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def loads_hypergraph(text: str) -> Hypergraph:
    rows = []
    header = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3:
                raise ContractViolation("header must be 'k n m'")
            header = tuple(int(x) for x in parts)
            continue
        rows.append([int(x) for x in parts])
    if header is None:
        raise ContractViolation("empty hypergraph file")
    k, n, m = header
    if len(rows) != m:
        raise ContractViolation(f"header promises {m} edges, found {len(rows)}")
    if any(len(r) != k for r in rows):
        raise ContractViolation(f"every edge line must have {k} vertices")
    arr = np.array(rows, dtype=np.int16) if rows else np.zeros((0, k), dtype=np.int16)
    return Hypergraph(k, n, arr)


def write_hypergraph(h: Hypergraph, path) -> None:
    with open(path, "w") as f:
        f.write(dumps_hypergraph(h))


def read_hypergraph(path) -> Hypergraph:
    if isinstance(path, io.TextIOBase):
        return loads_hypergraph(path.read())
    with open(path) as f:
        return loads_hypergraph(f.read())


def path_line(obj: LPath | LCycle) -> str:
    tag = "p" if isinstance(obj, LPath) else "c"
    return f"{obj.k} {obj.l} {tag} " + " ".join(str(v) for v in obj.vertices)


def parse_path_line(line: str) -> LPath | LCycle:
    parts = line.split()
    if len(parts) < 4 or parts[2] not in ("p", "c"):
        raise ContractViolation("expected 'k l [p|c] v0 v1 ...'")
    k, l = int(parts[0]), int(parts[1])
    vs = tuple(int(x) for x in parts[3:])
    return LPath(k, l, vs) if parts[2] == "p" else LCycle(k, l, vs)


def frac_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_frac(s: str) -> Fraction:
    return Fraction(s)

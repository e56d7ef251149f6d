"""l-paths and l-cycles: stride-(k-l) window structures over ordered vertices.

A k-uniform l-path on vertices v_0..v_{n-1} has edges at the windows of
length k starting at positions 0, k-l, 2(k-l), ...; consecutive edges
overlap in exactly l vertices, so n = m(k-l) + l where m is the number of
edges (the *length*).  An l-cycle is the wraparound analogue and needs
(k-l) | n.  Only the vertex sequence is stored; windows are recomputed on
demand so no inconsistent state is possible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import ContractViolation, QueryError
from .hypergraph import Hypergraph


def _ctmod(k: int, l: int) -> int:
    d = k - l
    return (k // d) * d


def _check_kl(k: int, l: int) -> None:
    if k < 2 or not 1 <= l <= k - 1:
        raise ContractViolation(f"need k >= 2 and 1 <= l <= k-1, got k={k}, l={l}")


@dataclass(frozen=True)
class LPath:
    """Ordered l-path; vertices distinct, count n = m(k-l) + l >= k."""

    k: int
    l: int
    vertices: tuple[int, ...]

    def __post_init__(self):
        _check_kl(self.k, self.l)
        vs = tuple(int(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        n = len(vs)
        d = self.k - self.l
        if n < self.k:
            raise ContractViolation(f"l-path needs at least k={self.k} vertices")
        if (n - self.l) % d != 0:
            raise ContractViolation(
                f"l-path vertex count must be l mod (k-l): n={n}, k={self.k}, l={self.l}"
            )
        if len(set(vs)) != n:
            raise ContractViolation("l-path vertices must be distinct")

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def length(self) -> int:
        """Number of edges m, with n = m(k-l) + l."""
        return (self.n - self.l) // (self.k - self.l)

    def window_starts(self) -> range:
        return range(0, self.n - self.k + 1, self.k - self.l)

    def edges(self) -> list[tuple[int, ...]]:
        """Window edges in canonical (sorted) form, in path order."""
        return [
            tuple(sorted(self.vertices[s : s + self.k])) for s in self.window_starts()
        ]

    def ends(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """The first l and last l vertices, as ordered tuples."""
        return self.vertices[: self.l], self.vertices[-self.l :]


@dataclass(frozen=True)
class LCycle:
    """Cyclic l-path; stores a canonical rotation so equality is decidable.

    The canonical representative is the lexicographically smallest vertex
    sequence among all window-preserving rotations (shifts by multiples of
    k-l) and reversals of the input.  For tight cycles this starts at the
    minimum vertex; for k-l >= 2 only stride-aligned rotations are valid,
    so the minimum vertex may not sit first.
    """

    k: int
    l: int
    vertices: tuple[int, ...]
    _canonical: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        _check_kl(self.k, self.l)
        vs = tuple(int(v) for v in self.vertices)
        n = len(vs)
        d = self.k - self.l
        if n < self.k:
            raise ContractViolation(f"l-cycle needs at least k={self.k} vertices")
        if n % d != 0:
            raise ContractViolation(f"(k-l)={d} must divide the cycle length n={n}")
        if len(set(vs)) != n:
            raise ContractViolation("l-cycle vertices must be distinct")
        if not self._canonical:
            vs = self._canonicalize(vs)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "_canonical", True)

    def _canonicalize(self, vs: tuple[int, ...]) -> tuple[int, ...]:
        n = len(vs)
        target = frozenset(_cycle_edges(self.k, self.l, vs))
        best = vs
        for base in (vs, vs[::-1]):
            for shift in range(n):
                cand = base[shift:] + base[:shift]
                if cand >= best:
                    continue
                if frozenset(_cycle_edges(self.k, self.l, cand)) == target:
                    best = cand
        return best

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def length(self) -> int:
        return self.n // (self.k - self.l)

    def window_starts(self) -> range:
        return range(0, self.n, self.k - self.l)

    def edges(self) -> list[tuple[int, ...]]:
        return _cycle_edges(self.k, self.l, self.vertices)


def _cycle_edges(k: int, l: int, vs: tuple[int, ...]) -> list[tuple[int, ...]]:
    n = len(vs)
    out = []
    for s in range(0, n, k - l):
        out.append(tuple(sorted(vs[(s + j) % n] for j in range(k))))
    return out


def abstract_path(k: int, l: int, m: int) -> LPath:
    """Template l-path of length m on labels 0..m(k-l)+l-1 in natural order."""
    if m < 1:
        raise ContractViolation(f"path length must be >= 1, got {m}")
    return LPath(k, l, tuple(range(m * (k - l) + l)))


def validate_lpath(H: Hypergraph, path: LPath) -> bool:
    """True iff every window of the path is an edge of H."""
    for v in path.vertices:
        if not 0 <= v < H.n:
            raise QueryError(f"path vertex {v} outside the host vertex set")
    if path.k != H.k:
        return False
    return all(H.has_edge(e) for e in path.edges())


def is_hamilton_lcycle(H: Hypergraph, cycle: LCycle) -> bool:
    """True iff the cycle visits every vertex of H once and all windows are edges."""
    if cycle.k != H.k or cycle.n != H.n:
        return False
    if set(cycle.vertices) != set(range(H.n)):
        return False
    return all(H.has_edge(e) for e in cycle.edges())


def ends(path: LPath):
    return path.ends()


def concatenate(p: LPath, q: LPath) -> LPath:
    """Merge paths sharing exactly one end: second end of p == first end of q."""
    if (p.k, p.l) != (q.k, q.l):
        raise ContractViolation("concatenation requires identical (k, l)")
    shared = p.ends()[1]
    if q.ends()[0] != shared:
        raise ContractViolation("second end of the first path must equal the first end of the second")
    overlap = set(p.vertices) & set(q.vertices)
    if overlap != set(shared):
        raise ContractViolation("paths may share exactly their common end")
    return LPath(p.k, p.l, p.vertices + q.vertices[p.l :])


# ----------------------------------------------------------------------
# vertex partitions of paths and cycles


def cover_partition(obj: LPath | LCycle) -> list[frozenset]:
    """Partition of the vertices into consecutive blocks of size ctmod
    (at most one smaller), each contained in a window edge."""
    c = _ctmod(obj.k, obj.l)
    vs = obj.vertices
    return [frozenset(vs[i : i + c]) for i in range(0, len(vs), c)]


class SisWitness(NamedTuple):
    """Formula value and constructive witness for the largest strong
    independent set of an l-path.

    ``claimed`` is ceil(n/ctmod).  ``positions`` follows the constructive
    index formula (offset k-l-1, stride ctmod, indices beyond the path
    ignored) and is simultaneously strong independent and a vertex cover.
    At boundary residues (last partial block shorter than k-l) the formula
    index overflows the path, so len(positions) == claimed - 1 there and
    the true maximum is len(positions), not ``claimed``.
    """

    claimed: int
    positions: tuple[int, ...]


def max_sis_in_path(k: int, l: int, n: int) -> SisWitness:
    _check_kl(k, l)
    d = k - l
    if n < k or (n - l) % d != 0:
        raise ContractViolation(f"invalid l-path vertex count n={n} for (k,l)=({k},{l})")
    c = _ctmod(k, l)
    claimed = -(-n // c)
    positions = tuple(p for p in range(d - 1, n, c))
    return SisWitness(claimed, positions)


def unbalanced_partition_pattern(k: int, l: int, n: int) -> list[int]:
    """Class index (0..k-1) per path position: class 0 is the strong
    independent vertex cover; the rest are assigned round-robin mod k-1.

    Every window then meets each class exactly once, and class sizes obey
    |U_1| = (k-1)/W * n +- 1 and |U_i| = (ctmod-1)/W * n +- 2.
    """
    witness = set(max_sis_in_path(k, l, n).positions)
    pattern = [0] * n
    j = 0
    for p in range(n):
        if p in witness:
            continue
        pattern[p] = 1 + (j % (k - 1))
        j += 1
    return pattern


def unbalanced_partition(path: LPath) -> list[frozenset]:
    """The k vertex classes of the path, per `unbalanced_partition_pattern`."""
    pattern = unbalanced_partition_pattern(path.k, path.l, path.n)
    classes = [set() for _ in range(path.k)]
    for pos, cls in enumerate(pattern):
        classes[cls].add(path.vertices[pos])
    return [frozenset(c) for c in classes]

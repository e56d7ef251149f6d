"""Weighted perfect fractional matchings with exact Farkas certificates.

The weight vector is w = (k-1, ctmod-1, ..., ctmod-1): an ordered edge
places k-1 units of weight on its first vertex and ctmod-1 on each other
vertex, scaled by its value q(e).  Since positions 2..k share one weight,
all orderings of an edge with the same first vertex are interchangeable and
collapse into a single variable per (edge, head) pair: k variables per edge
instead of k! ordered copies.  Expanding a collapsed solution uniformly
over the (k-1)! orderings per head reproduces a matching in the uncollapsed
sense, and symmetrising any uncollapsed solution lands back in the
collapsed space, so feasibility is unchanged.

A matching is perfect when every vertex carries total weight exactly 1,
equivalently when the values sum to n/W.  Infeasibility is witnessed by a
rational vertex vector y with y.chi <= 0 for every variable's incidence
vector chi and y.1 > 0; both objects are verified in exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import ContractViolation
from .hypergraph import Hypergraph
from .params import ThresholdParams
from .simplex import _Tableau

ZERO = Fraction(0)
ONE = Fraction(1)


class OrderedEdgeVar(NamedTuple):
    """A collapsed ordered edge: canonical edge plus the vertex in position 1."""

    edge: tuple[int, ...]
    head: int


@dataclass(frozen=True)
class WeightedFractionalMatching:
    """Nonnegative rational values on collapsed ordered edges."""

    assignment: dict  # OrderedEdgeVar -> Fraction

    def total(self) -> Fraction:
        return sum(self.assignment.values(), ZERO)

    def max_value(self) -> Fraction:
        return max(self.assignment.values(), default=ZERO)

    def per_vertex_sums(self, h: Hypergraph, params: ThresholdParams) -> list:
        head_w = Fraction(params.weights[0])
        tail_w = Fraction(params.weights[1])
        sums = [ZERO] * h.n
        for (edge, head), q in self.assignment.items():
            for v in edge:
                sums[v] += (head_w if v == head else tail_w) * q
        return sums


@dataclass(frozen=True)
class FarkasCertificate:
    """Rational vertex vector witnessing infeasibility of the matching LP."""

    y: tuple


def _variables(h: Hypergraph):
    for edge in map(tuple, h.edges.tolist()):
        for head in edge:
            yield OrderedEdgeVar(edge, head)


def _build_tableau(h: Hypergraph, params: ThresholdParams, b_value, upper):
    t = _Tableau(h.n, [b_value] * h.n)
    variables = []
    head_w, tail_w = params.weights[0], params.weights[1]
    for var in _variables(h):
        entries = [(v, head_w if v == var.head else tail_w) for v in var.edge]
        t.add_column(entries, ZERO, upper)
        variables.append(var)
    return t, variables


def find_weighted_pfm(h: Hypergraph, params: ThresholdParams):
    """A perfect matching or a Farkas certificate; exactly one verifies.

    Pure feasibility: phase-1 simplex on the per-vertex equality system.
    """
    if h.n == 0:
        raise ContractViolation("matching LP needs a nonempty vertex set")
    t, variables = _build_tableau(h, params, ONE, None)
    out = t.solve()
    if out.status == "infeasible":
        cert = FarkasCertificate(tuple(out.farkas))
        assert verify_certificate(h, params, cert.y)
        return cert
    assignment = {
        var: q for var, q in zip(variables, out.x) if q != 0
    }
    pfm = WeightedFractionalMatching(assignment)
    assert verify_pfm(h, params, pfm)
    return pfm


def find_min_max_pfm(h: Hypergraph, params: ThresholdParams):
    """Among perfect matchings, one minimising the largest value.

    Solved through the reciprocal LP  max s  s.t.  A q = s.1, 0 <= q <= 1:
    a perfect matching with maximum value M exists iff s = 1/M is
    attainable, so the optimum M* equals 1/s* and q* = q/s*.  This keeps
    the row count at n instead of adding one bound row per variable.

    Returns ``(matching, M)`` or a FarkasCertificate.
    """
    if h.n == 0:
        raise ContractViolation("matching LP needs a nonempty vertex set")
    t, variables = _build_tableau(h, params, ZERO, ONE)
    t.add_column([(v, -1) for v in range(h.n)], ONE, None)  # the scale variable s
    out = t.solve()
    assert out.status == "optimal"
    sigma = out.x[-1]
    if sigma == 0:
        cert = find_weighted_pfm(h, params)
        assert isinstance(cert, FarkasCertificate)
        return cert
    m_value = 1 / sigma
    assignment = {
        var: q / sigma for var, q in zip(variables, out.x) if q != 0
    }
    pfm = WeightedFractionalMatching(assignment)
    assert verify_pfm(h, params, pfm)
    assert pfm.max_value() == m_value
    return pfm, m_value


def verify_pfm(h: Hypergraph, params: ThresholdParams, matching) -> bool:
    """Exact check: nonnegative, all per-vertex sums 1, total n/W."""
    if isinstance(matching, WeightedFractionalMatching):
        assignment = matching.assignment
    else:
        assignment = matching
    norm = {}
    for var, q in assignment.items():
        if not isinstance(var, OrderedEdgeVar):
            var = OrderedEdgeVar(tuple(var[0]), var[1])
        if var.head not in var.edge or not h.has_edge(var.edge):
            raise ContractViolation(f"unknown matching variable {var}")
        norm[var] = Fraction(q)
    if any(q < 0 for q in norm.values()):
        return False
    wfm = WeightedFractionalMatching(norm)
    if any(s != 1 for s in wfm.per_vertex_sums(h, params)):
        return False
    return wfm.total() == Fraction(h.n, params.W)


def verify_certificate(h: Hypergraph, params: ThresholdParams, y) -> bool:
    """Exact check of y.chi <= 0 over all incidence vectors and y.1 > 0."""
    y = [Fraction(v) for v in y]
    if len(y) != h.n:
        raise ContractViolation("certificate length must equal the vertex count")
    if sum(y) <= 0:
        return False
    head_w, tail_w = params.weights[0], params.weights[1]
    for var in _variables(h):
        dot = sum((head_w if v == var.head else tail_w) * y[v] for v in var.edge)
        if dot > 0:
            return False
    return True

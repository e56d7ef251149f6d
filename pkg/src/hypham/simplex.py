"""Exact rational simplex for small equality-form LPs.

Solves   maximize c.x   s.t.  A x = b,  0 <= x_j <= u_j  (u_j may be None)

with ``Fraction`` arithmetic throughout: feasibility answers are exact and
phase-1 failures yield an exact Farkas vector.  Bland's smallest-index rule
guarantees termination.  The basis inverse is kept explicitly (revised
simplex); problem sizes here are a few dozen rows and a few thousand
columns, where this is comfortably fast.

Farkas extraction: when phase 1 ends with a negative objective and no
column has a finite upper bound, the vector y = -(c_B B^-1) satisfies
y . A_j <= 0 for every column j and y . b > 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class SimplexOutcome:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: list  # primal values per column (original columns only)
    objective: Fraction
    farkas: list | None  # set when status == "infeasible"


class _Tableau:
    """Bounded-variable revised simplex state."""

    def __init__(self, n_rows, b):
        self.m = n_rows
        self.b = [Fraction(v) for v in b]
        if any(v < 0 for v in self.b):
            raise ValueError("right-hand side must be nonnegative")
        self.cols = []  # sparse columns: list[(row, Fraction)]
        self.c = []
        self.upper = []  # Fraction or None

    def add_column(self, entries, cost, upper=None) -> int:
        self.cols.append([(i, Fraction(v)) for i, v in entries if v != 0])
        self.c.append(Fraction(cost))
        self.upper.append(None if upper is None else Fraction(upper))
        return len(self.cols) - 1

    # -- simplex core ---------------------------------------------------

    def _duals(self, basis, binv, costs):
        m = self.m
        y = [ZERO] * m
        for j in range(m):
            cb = costs[basis[j]]
            if cb == 0:
                continue
            row = binv[j]
            for i in range(m):
                if row[i] != 0:
                    y[i] += cb * row[i]
        return y

    def _col_dot(self, y, j):
        return sum(y[i] * v for i, v in self.cols[j])

    def _ftran(self, binv, j):
        m = self.m
        w = [ZERO] * m
        for i, v in self.cols[j]:
            for r in range(m):
                if binv[r][i] != 0:
                    w[r] += binv[r][i] * v
        return w

    def _run(self, basis, binv, xb, costs, eligible, at_upper):
        """Iterate to optimality from the given basic feasible state."""
        m = self.m
        while True:
            y = self._duals(basis, binv, costs)
            in_basis = set(basis)
            enter = -1
            direction = 0
            for j in eligible:
                if j in in_basis:
                    continue
                r = costs[j] - self._col_dot(y, j)
                if not at_upper[j] and r > 0:
                    enter, direction = j, 1
                    break
                if at_upper[j] and r < 0:
                    enter, direction = j, -1
                    break
            if enter < 0:
                return "optimal", y

            w = self._ftran(binv, enter)
            # ratio test; blocking candidates as (t, blocking_index, row)
            best_t = None
            block_idx = None
            block_row = -1
            if self.upper[enter] is not None:
                best_t, block_idx, block_row = self.upper[enter], enter, -1
            for r in range(m):
                wr = w[r] * direction
                if wr > 0:
                    t = xb[r] / wr
                elif wr < 0:
                    ub = self.upper[basis[r]]
                    if ub is None:
                        continue
                    t = (ub - xb[r]) / (-wr)
                else:
                    continue
                if best_t is None or t < best_t or (t == best_t and basis[r] < block_idx):
                    best_t, block_idx, block_row = t, basis[r], r
            if best_t is None:
                return "unbounded", y

            t = best_t
            for r in range(m):
                xb[r] -= direction * t * w[r]
            if block_row < 0:
                at_upper[enter] = not at_upper[enter]  # bound flip, basis unchanged
                continue
            leave = basis[block_row]
            enter_val = t if direction > 0 else self.upper[enter] - t
            wr = w[block_row]
            pivot_row = binv[block_row]
            inv = ONE / wr
            binv[block_row] = [v * inv for v in pivot_row]
            for r in range(m):
                if r != block_row and w[r] != 0:
                    fr = w[r]
                    row = binv[r]
                    prow = binv[block_row]
                    binv[r] = [row[i] - fr * prow[i] for i in range(m)]
            basis[block_row] = enter
            xb[block_row] = enter_val
            at_upper[enter] = False
            # the leaving variable was moving up iff w_r * direction < 0
            at_upper[leave] = self.upper[leave] is not None and wr * direction < 0

    def solve(self) -> SimplexOutcome:
        m = self.m
        n = len(self.cols)
        # phase 1: artificial basis
        art = list(range(n, n + m))
        for i in range(m):
            self.cols.append([(i, ONE)])
            self.c.append(ZERO)
            self.upper.append(None)
        costs1 = [ZERO] * n + [Fraction(-1)] * m
        basis = art[:]
        binv = [[ONE if i == j else ZERO for i in range(m)] for j in range(m)]
        xb = self.b[:]
        at_upper = [False] * (n + m)
        status, y = self._run(basis, binv, xb, costs1, range(n + m), at_upper)
        assert status == "optimal", "phase 1 cannot be unbounded"
        obj1 = sum(costs1[basis[r]] * xb[r] for r in range(m))
        if obj1 < 0:
            farkas = [-v for v in y]
            self._pop_artificials(n)
            return SimplexOutcome("infeasible", [ZERO] * n, obj1, farkas)

        # phase 2: lock artificials at zero and optimize the real objective
        for j in art:
            self.upper[j] = ZERO
        costs2 = self.c[:n] + [ZERO] * m
        status, _ = self._run(basis, binv, xb, costs2, range(n), at_upper)
        if status == "unbounded":
            self._pop_artificials(n)
            return SimplexOutcome("unbounded", [ZERO] * n, ZERO, None)
        x = [ZERO] * (n + m)
        for j in range(n):
            if at_upper[j] and self.upper[j] is not None:
                x[j] = self.upper[j]
        for r in range(m):
            x[basis[r]] = xb[r]
        obj = sum(costs2[j] * x[j] for j in range(n))
        self._pop_artificials(n)
        return SimplexOutcome("optimal", x[:n], obj, None)

    def _pop_artificials(self, n):
        del self.cols[n:], self.c[n:], self.upper[n:]


def solve_lp(n_rows, b, columns, costs, uppers) -> SimplexOutcome:
    """One-shot interface: columns as sparse [(row, coeff), ...] lists."""
    t = _Tableau(n_rows, b)
    for col, c, u in zip(columns, costs, uppers):
        t.add_column(col, c, u)
    return t.solve()

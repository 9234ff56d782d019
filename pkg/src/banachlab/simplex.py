"""Exact rational simplex over dynamically added columns.

Standard form: minimize c^T t subject to A t = b, t >= 0.  Bland's rule
is used for both the entering and the leaving choice, which rules out
cycling, and every number is a `fractions.Fraction`, so the optimum and
the dual vector are exact.  The basis inverse is maintained explicitly;
the row count here is a support size, ten or less.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class SimplexError(Exception):
    pass


class StandardFormSimplex:
    def __init__(self, rhs: list[Fraction]):
        self.m = len(rhs)
        self.b = [Fraction(v) for v in rhs]
        self.cols: list[list[Fraction]] = []
        self.costs: list[Fraction] = []
        self.basis: list[int] = []
        self.binv: list[list[Fraction]] = []
        self.xb: list[Fraction] = []

    def add_column(self, column: list[Fraction], cost: Fraction) -> int:
        if len(column) != self.m:
            raise SimplexError("column length mismatch")
        self.cols.append([Fraction(v) for v in column])
        self.costs.append(Fraction(cost))
        return len(self.cols) - 1

    def set_basis(self, indices: list[int]) -> None:
        """Install a starting basis; its columns must be invertible and
        the implied basic solution nonnegative."""
        if len(indices) != self.m:
            raise SimplexError("basis size must equal the row count")
        self.basis = list(indices)
        self.binv = _invert([[self.cols[j][i] for j in indices] for i in range(self.m)])
        self.xb = _mat_vec(self.binv, self.b)
        if any(v < 0 for v in self.xb):
            raise SimplexError("starting basis is infeasible")

    def duals(self) -> list[Fraction]:
        """y with y^T B = c_B^T."""
        return [
            sum((self.costs[self.basis[i]] * self.binv[i][r] for i in range(self.m)), ZERO)
            for r in range(self.m)
        ]

    def objective(self) -> Fraction:
        return sum(
            (self.costs[self.basis[i]] * self.xb[i] for i in range(self.m)), ZERO
        )

    def primal(self) -> dict[int, Fraction]:
        return {self.basis[i]: self.xb[i] for i in range(self.m)}

    def solve(self, max_pivots: int = 100000) -> Fraction:
        for _ in range(max_pivots):
            y = self.duals()
            entering = -1
            in_basis = set(self.basis)
            for j in range(len(self.cols)):
                if j in in_basis:
                    continue
                reduced = self.costs[j] - _dot(y, self.cols[j])
                if reduced < 0:
                    entering = j
                    break
            if entering < 0:
                return self.objective()
            direction = _mat_vec(self.binv, self.cols[entering])
            leaving = -1
            best = None
            for i in range(self.m):
                if direction[i] > 0:
                    ratio = self.xb[i] / direction[i]
                    if (
                        best is None
                        or ratio < best
                        or (ratio == best and self.basis[i] < self.basis[leaving])
                    ):
                        best, leaving = ratio, i
            if leaving < 0:
                raise SimplexError("unbounded linear program")
            self._pivot(entering, leaving, direction)
        raise SimplexError("pivot limit exceeded")

    def _pivot(self, entering: int, row: int, direction: list[Fraction]) -> None:
        pivot = direction[row]
        self.binv[row] = [v / pivot for v in self.binv[row]]
        self.xb[row] = self.xb[row] / pivot
        for i in range(self.m):
            if i != row and direction[i]:
                factor = direction[i]
                pivot_row = self.binv[row]
                self.binv[i] = [
                    self.binv[i][r] - factor * pivot_row[r] for r in range(self.m)
                ]
                self.xb[i] = self.xb[i] - factor * self.xb[row]
        self.basis[row] = entering


def maximize_over_unit_polytope(
    objective: list[Fraction], rows: list[list[Fraction]]
) -> Fraction:
    """maximize objective . y subject to row . y <= 1 for every row, y free.

    Reference solver for cross-checks: y is split into u - v and every
    constraint gets a slack, then the standard-form machinery runs on the
    dense tableau.  The slack basis is feasible because every right-hand
    side is 1, so no phase-1 is needed.  Exponential-size input, test use
    only.
    """
    m = len(rows)
    n = len(objective)
    sx = StandardFormSimplex([ONE] * m)
    for j in range(n):
        sx.add_column([rows[i][j] for i in range(m)], -objective[j])
    for j in range(n):
        sx.add_column([-rows[i][j] for i in range(m)], objective[j])
    slack_start = 2 * n
    for i in range(m):
        column = [ZERO] * m
        column[i] = ONE
        sx.add_column(column, ZERO)
    sx.set_basis(list(range(slack_start, slack_start + m)))
    return -sx.solve()


def _invert(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(matrix)
    work = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot_row is None:
            raise SimplexError("singular basis matrix")
        work[col], work[pivot_row] = work[pivot_row], work[col]
        pivot = work[col][col]
        work[col] = [v / pivot for v in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [work[r][k] - factor * work[col][k] for k in range(2 * n)]
    return [row[n:] for row in work]


def _mat_vec(matrix: list[list[Fraction]], vec: list[Fraction]) -> list[Fraction]:
    return [_dot(row, vec) for row in matrix]


def _dot(a: list[Fraction], b: list[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b) if x and y), ZERO)

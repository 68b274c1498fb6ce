"""Two-phase simplex over exact rationals with Bland's anti-cycling rule.

The solver handles the small LPs that arise in cell geometry and estimator
synthesis. All arithmetic is done with :class:`fractions.Fraction`, so the
optimal value and the returned vertex are exact.

Example
-------
>>> res = solve_lp([-1, -1], A_ub=[[1, 2], [3, 1]], b_ub=[4, 6])
>>> res.status, res.value, res.x
('optimal', Fraction(-14, 5), [Fraction(8, 5), Fraction(6, 5)])
"""
from dataclasses import dataclass
from fractions import Fraction

__all__ = ["LPResult", "solve_lp", "is_feasible"]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass
class LPResult:
    status: str
    x: list | None = None
    value: Fraction | None = None

    @property
    def ok(self):
        return self.status == OPTIMAL


class _Tableau:
    """Dense tableau ``T x = rhs`` with an explicit basis."""

    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r, c, cost):
        row = self.rows[r]
        piv = row[c]
        if piv != _ONE:
            self.rows[r] = row = [x / piv for x in row]
            self.rhs[r] /= piv
        rr = self.rhs[r]
        nz = [j for j, y in enumerate(row) if y]
        for i, other in enumerate(self.rows):
            if i != r:
                f = other[c]
                if f != 0:
                    for j in nz:
                        other[j] -= f * row[j]
                    self.rhs[i] -= f * rr
        f = cost[c]
        if f != 0:
            for j in nz:
                cost[j] -= f * row[j]
            cost[-1] -= f * rr
        self.basis[r] = c

    def run(self, cost, allowed):
        """Minimize with reduced-cost row ``cost`` (last entry = -objective).

        Returns False if unbounded.
        """
        while True:
            enter = next((j for j in allowed if cost[j] < 0), None)
            if enter is None:
                return True
            best = None
            leave = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        best, leave = ratio, i
            if leave is None:
                return False
            self.pivot(leave, enter, cost)


def solve_lp(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, free=(), maximize=False):
    """Solve ``min c.x`` subject to ``A_ub x <= b_ub``, ``A_eq x = b_eq``.

    Variables are nonnegative unless their index is listed in ``free``.

    Returns
    -------
    LPResult
        ``status`` is one of ``"optimal"``, ``"infeasible"``, ``"unbounded"``.
        ``x`` and ``value`` are exact and only set when optimal.
    """
    n = len(c)
    c = [Fraction(v) for v in c]
    if maximize:
        c = [-v for v in c]
    A_ub = [list(map(Fraction, r)) for r in (A_ub or [])]
    A_eq = [list(map(Fraction, r)) for r in (A_eq or [])]
    b_ub = [Fraction(v) for v in (b_ub or [])]
    b_eq = [Fraction(v) for v in (b_eq or [])]
    free = sorted(set(free))

    # column layout: original vars, negative parts of free vars, slacks, artificials
    neg_col = {j: n + k for k, j in enumerate(free)}
    n_struct = n + len(free)
    n_slack = len(A_ub)
    m = len(A_ub) + len(A_eq)
    n_real = n_struct + n_slack
    ncols = n_real + m

    rows, rhs = [], []
    for i, (a, b) in enumerate(list(zip(A_ub, b_ub)) + list(zip(A_eq, b_eq))):
        row = [_ZERO] * ncols
        for j, v in enumerate(a):
            row[j] = v
            if j in neg_col:
                row[neg_col[j]] = -v
        if i < n_slack:
            row[n_struct + i] = _ONE
        if b < 0:
            row = [-x for x in row]
            b = -b
        row[n_real + i] = _ONE
        rows.append(row)
        rhs.append(b)

    tab = _Tableau(rows, rhs, [n_real + i for i in range(m)])

    # phase 1: minimize the sum of artificials
    cost = [_ZERO] * (ncols + 1)
    for row, b in zip(rows, rhs):
        for j in range(n_real):
            cost[j] -= row[j]
        cost[-1] -= b
    tab.run(cost, range(ncols))
    if cost[-1] != 0:
        return LPResult(INFEASIBLE)

    # drive artificials out of the basis; drop redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= n_real:
            j = next((j for j in range(n_real) if tab.rows[i][j] != 0), None)
            if j is None:
                del tab.rows[i], tab.rhs[i], tab.basis[i]
                continue
            tab.pivot(i, j, cost)
        i += 1

    # phase 2
    full_c = c + [-c[j] for j in free] + [_ZERO] * (n_slack + m)
    cost = full_c[:ncols] + [_ZERO]
    for row, b, bj in zip(tab.rows, tab.rhs, tab.basis):
        cb = full_c[bj]
        if cb != 0:
            cost[:-1] = [x - cb * y for x, y in zip(cost[:-1], row)]
            cost[-1] -= cb * b
    if not tab.run(cost, range(n_real)):
        return LPResult(UNBOUNDED)

    sol = [_ZERO] * ncols
    for b, bj in zip(tab.rhs, tab.basis):
        sol[bj] = b
    x = [sol[j] - (sol[neg_col[j]] if j in neg_col else 0) for j in range(n)]
    value = -cost[-1]
    if maximize:
        value = -value
    return LPResult(OPTIMAL, x, value)


def is_feasible(A_ub=None, b_ub=None, A_eq=None, b_eq=None, n=None, free=()):
    if n is None:
        n = len((A_ub or A_eq)[0])
    return solve_lp([0] * n, A_ub, b_ub, A_eq, b_eq, free=free).ok

"""Exact linear algebra over rationals.

Matrices are lists of rows of :class:`fractions.Fraction`. Everything here is
small and dense; the games this package deals with have at most a few dozen
actions and outcomes.
"""
from fractions import Fraction

__all__ = [
    "as_fraction_matrix", "rref", "rank", "nullspace", "dot", "matvec", "solve_square",
    "project_onto_kernel",
]


def as_fraction_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``pivots`` lists the pivot column of each
    nonzero row of ``R``.
    """
    m = [list(map(Fraction, row)) for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows, ncols=None):
    """Basis of ``{x : M x = 0}`` as a list of vectors."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ncols = len(rows[0])
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -R[i][f]
        basis.append(x)
    return basis


def dot(x, y):
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def matvec(rows, x):
    return [dot(row, x) for row in rows]


def solve_square(A, b):
    """Solve a nonsingular square system exactly."""
    n = len(A)
    aug = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(A, b)]
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return [R[i][n] for i in range(n)]


def project_onto_kernel(rows, x, ncols):
    """Orthogonal projection of ``x`` onto ``ker(rows)``."""
    basis = nullspace(rows, ncols)
    if not basis:
        return [Fraction(0)] * ncols
    gram = [[dot(p, q) for q in basis] for p in basis]
    coef = solve_square(gram, [dot(p, x) for p in basis])
    out = [Fraction(0)] * ncols
    for c, p in zip(coef, basis):
        for j in range(ncols):
            out[j] += c * p[j]
    return out

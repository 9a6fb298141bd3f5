"""Small exact linear-algebra routines over the Gaussian rationals.

Everything here works on lists of lists of Scalar and is only meant for the
desk-scale matrices this package produces (dimensions in the tens).
"""

from .scalars import Scalar

ZERO_S = Scalar.zero()
ONE_S = Scalar.one()


def row_reduce(rows, ncols):
    """In-place reduced row echelon form; returns the list of pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for k in range(r, len(rows)):
            if rows[k][c]:
                pivot_row = k
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inv()
        rows[r] = [v * inv for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(rows, ncols):
    work = [list(row) for row in rows]
    return len(row_reduce(work, ncols))


def nullspace(rows, ncols):
    """Basis of the right kernel, one coordinate list per basis vector."""
    work = [list(row) for row in rows]
    pivots = row_reduce(work, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [ZERO_S] * ncols
        vec[fc] = ONE_S
        for r, pc in enumerate(pivots):
            v = work[r][fc]
            if v:
                vec[pc] = -v
        basis.append(vec)
    return basis

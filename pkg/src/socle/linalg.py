"""Dense Gaussian elimination over an exact field (lists of lists)."""


def row_echelon(rows, field):
    """Reduced row echelon form. Returns (rows, pivot_columns)."""
    norm, inv = field.norm, field.inv
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pr = rows[r]
        s = inv(pr[c])
        pr[:] = [norm(x * s) for x in pr]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri = rows[i]
                rows[i] = [norm(a - f * b) for a, b in zip(ri, pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows, field):
    return len(row_echelon(rows, field)[1])


def nullspace(rows, ncols, field):
    """Basis of {v : M v = 0} for M given by ``rows`` with ``ncols`` columns."""
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    ech, pivots = row_echelon(rows, field)
    norm = field.norm
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, p in zip(ech, pivots):
            v[p] = norm(-row[f])
        basis.append(v)
    return basis

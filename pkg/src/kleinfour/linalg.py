"""Exact linear algebra over any field context.

Matrices are lists of rows of field elements. Pivoting takes the first
nonzero entry in a column; there is no magnitude pivoting since arithmetic is
exact.
"""


def rref(rows, field):
    """Reduced row echelon form. Returns (matrix, pivot_columns)."""
    M = [[field(x) for x in row] for row in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        inv = field.one / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows, field):
    return len(rref(rows, field)[1])


def nullspace(rows, field, ncols=None):
    """Basis of {z : rows @ z = 0}, as a list of column vectors."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)] for j in range(ncols)]
    R, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        z = [field.zero] * ncols
        z[f] = field.one
        for row, pc in zip(R, pivots):
            z[pc] = -row[f]
        basis.append(z)
    return basis


def span_basis(vectors, field):
    """Canonical (RREF) basis of the span of ``vectors``."""
    if not vectors:
        return []
    return rref(vectors, field)[0]


def same_span(U, V, field):
    return span_basis(U, field) == span_basis(V, field)


def intersect(U, V, field, dim):
    """Intersection of two subspaces given by spanning lists of length-``dim`` vectors."""
    if not U or not V:
        return []
    # z = sum a_i U_i = sum b_j V_j
    cols = [list(u) for u in U] + [[-x for x in v] for v in V]
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(dim)]
    out = []
    for coeffs in nullspace(rows, field, len(cols)):
        z = [field.zero] * dim
        for a, u in zip(coeffs[: len(U)], U):
            z = [zi + a * ui for zi, ui in zip(z, u)]
        out.append(z)
    return span_basis(out, field)


def matmul(A, B):
    return [[sum((a * b for a, b in zip(row, col)), start=row[0] * 0) for col in zip(*B)] for row in A]


def matvec(A, x):
    return [sum((a * b for a, b in zip(row, x)), start=row[0] * 0) for row in A]


def det(M, field):
    M = [[field(x) for x in row] for row in M]
    n = len(M)
    d = field.one
    for c in range(n):
        pivot = next((i for i in range(c, n) if M[i][c] != 0), None)
        if pivot is None:
            return field.zero
        if pivot != c:
            M[c], M[pivot] = M[pivot], M[c]
            d = -d
        d = d * M[c][c]
        inv = field.one / M[c][c]
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def trace(M):
    return sum((M[i][i] for i in range(1, len(M))), start=M[0][0])


def identity(n, field):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]

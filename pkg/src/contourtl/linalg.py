"""Exact linear algebra over a field (typically Cyc elements).

Matrices are lists of rows; a row is a list of field elements supporting
+, -, *, /, is_zero(). A sparse variant stores rows as {column: value}.
"""

from __future__ import annotations


def _is_zero(x) -> bool:
    return x.is_zero() if hasattr(x, "is_zero") else x == 0


def rref(mat):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [list(r) for r in mat]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if not _is_zero(rows[i][c])), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not _is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(mat) -> int:
    return len(rref(mat)[1])


def nullspace(mat, zero, one):
    """Basis of the right null space of mat; vectors as lists."""
    if not mat:
        return []
    ncols = len(mat[0])
    rows, pivots = rref(mat)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        basis.append(v)
    return basis


def solve(mat, rhs):
    """One solution x of mat @ x = rhs, or None if inconsistent."""
    if not mat:
        return []
    ncols = len(mat[0])
    aug = [list(row) + [b] for row, b in zip(mat, rhs)]
    rows, pivots = rref(aug)
    for r in range(len(rows)):
        if all(_is_zero(x) for x in rows[r][:ncols]) and not _is_zero(rows[r][ncols]):
            return None
    zero = rhs[0] - rhs[0] if rhs else None
    x = [zero] * ncols
    for r, p in enumerate(pivots):
        if p < ncols:
            x[p] = rows[r][ncols]
    return x


def invert(mat, zero, one):
    """Inverse of a square matrix, or None if singular."""
    n = len(mat)
    aug = [list(row) + [one if i == j else zero for j in range(n)]
           for i, row in enumerate(mat)]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in rows[:n]]


def mat_mul(a, b):
    if not a or not b:
        return []
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            s = None
            for t in range(k):
                term = a[i][t] * b[t][j]
                s = term if s is None else s + term
            row.append(s)
        out.append(row)
    return out


def sparse_rank(rows) -> int:
    """Rank of a matrix given as a list of {column: value} sparse rows."""
    echelon = {}  # pivot column -> reduced row dict
    rk = 0
    for row in rows:
        row = {c: v for c, v in row.items() if not _is_zero(v)}
        while row:
            p = min(row)
            if p in echelon:
                f = row[p]
                other = echelon[p]
                for c, v in other.items():
                    nv = row.get(c)
                    nv = -f * v if nv is None else nv - f * v
                    if _is_zero(nv):
                        row.pop(c, None)
                    else:
                        row[c] = nv
            else:
                inv = row[p]
                echelon[p] = {c: v / inv for c, v in row.items()}
                rk += 1
                break
    return rk

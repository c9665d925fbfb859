"""Small exact linear-algebra helpers over `fractions.Fraction`.

Dense Gaussian elimination is all the cone/cylinder machinery needs:
the matrices here have at most a few dozen rows.  Matrices are lists of
row lists; callers own copies.
"""

from __future__ import annotations

from fractions import Fraction


def _to_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows):
    """Reduced row echelon form.

    Returns (matrix, pivot_columns).
    """
    mat = _to_matrix(rows)
    if not mat:
        return mat, []
    n_rows, n_cols = len(mat), len(mat[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if mat[i][c] != 0), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [inv * x for x in mat[r]]
        for i in range(n_rows):
            if i != r and mat[i][c] != 0:
                factor = mat[i][c]
                mat[i] = [x - factor * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return mat, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def solve(rows, rhs):
    """One exact solution of A x = b with free variables set to zero.

    Returns the solution vector, or None when the system is inconsistent.
    """
    mat = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(mat)
    n_cols = len(rows[0]) if rows else 0
    if n_cols in pivots:
        return None
    x = [Fraction(0)] * n_cols
    for r, c in enumerate(pivots):
        x[c] = reduced[r][-1]
    return x


def nullspace(rows):
    """Basis of the kernel of A, one vector per free column."""
    reduced, pivots = rref(rows)
    n_cols = len(rows[0]) if rows else 0
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -reduced[r][f]
        basis.append(v)
    return basis


def solve_affine(rows, rhs):
    """Full solution set of A x = b as (particular, kernel_basis).

    Returns None when inconsistent.
    """
    particular = solve(rows, rhs)
    if particular is None:
        return None
    return particular, nullspace(rows)


def invert(rows):
    """Exact inverse of a square matrix; raises ValueError if singular."""
    n = len(rows)
    aug = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
           for i, row in enumerate(rows)]
    reduced, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in reduced]


def is_negative_definite(gram) -> bool:
    """Sylvester test: (-1)^k * det(leading k x k minor) > 0 for all k."""
    n = len(gram)
    for k in range(1, n + 1):
        minor = [row[:k] for row in gram[:k]]
        if (-1) ** k * determinant(minor) <= 0:
            return False
    return True


def determinant(rows) -> Fraction:
    mat = _to_matrix(rows)
    n = len(mat)
    det = Fraction(1)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if mat[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            mat[c], mat[pivot_row] = mat[pivot_row], mat[c]
            det = -det
        det *= mat[c][c]
        inv = 1 / mat[c][c]
        for i in range(c + 1, n):
            if mat[i][c] != 0:
                factor = mat[i][c] * inv
                mat[i] = [x - factor * y for x, y in zip(mat[i], mat[c])]
    return det

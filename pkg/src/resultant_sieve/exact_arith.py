"""Exact integer and rational linear algebra.

Matrices are plain lists of rows. Nothing here ever touches floating point.
"""
from fractions import Fraction

MAX_DIM = 64


def _check_square(m):
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    if n > MAX_DIM:
        raise ValueError(f"matrix dimension {n} exceeds cap {MAX_DIM}")
    return n


def det_exact(m):
    """Determinant of a square integer matrix by Bareiss elimination.

    Every intermediate quantity is a minor of the input, so all divisions
    are exact and the work stays in the integers.
    """
    n = _check_square(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def solve_linear_exact(a, v):
    """Solve ``a @ x = v`` over the rationals.

    Returns a list of Fractions, or None when ``a`` is singular. A singular
    system never yields a least-squares or otherwise approximate answer.
    """
    n = _check_square(a)
    if len(v) != n:
        raise ValueError(f"right-hand side has length {len(v)}, expected {n}")
    aug = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(a, v)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        pivot_row = [x / p for x in aug[col]]
        aug[col] = pivot_row
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], pivot_row)]
    return [row[n] for row in aug]


def mat_vec(a, x):
    return [sum(aij * xj for aij, xj in zip(row, x)) for row in a]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def delete_rows(m, rows):
    """Copy of ``m`` without the given 0-based row indices."""
    drop = set(rows)
    return [list(row) for k, row in enumerate(m) if k not in drop]

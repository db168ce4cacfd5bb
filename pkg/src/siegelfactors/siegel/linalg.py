"""Exact linear algebra over a field given by its Python arithmetic (Fraction or number-field elements)."""

from __future__ import annotations

from fractions import Fraction

__all__ = ["rref", "rank", "nullspace", "solve", "matmul", "char_poly"]


def rref(rows: list) -> tuple:
    """Reduced row echelon form. Returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col] if not isinstance(m[r][col], int) else Fraction(1, m[r][col])
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                factor = m[i][col]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: list) -> int:
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows: list, ncols: int) -> list:
    """Basis of {x : rows * x = 0}."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    m, pivots = rref(rows)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        basis.append(v)
    return basis


def solve(A: list, b: list) -> list:
    """Unique solution of A x = b (A square, invertible)."""
    n = len(A)
    m, pivots = rref([list(row) + [bi] for row, bi in zip(A, b)])
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return [m[i][n] for i in range(n)]


def matmul(A: list, B: list) -> list:
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0)) for j in range(len(B[0]))]
            for i in range(len(A))]


def char_poly(M: list) -> list:
    """Coefficients [c_0, ..., c_n] of det(x I - M) via Faddeev-LeVerrier."""
    n = len(M)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        Mk = matmul(M, [[Mk[i][j] + coeffs[n - k + 1] * ident[i][j] for j in range(n)] for i in range(n)])
        coeffs[n - k] = -sum(Mk[i][i] for i in range(n)) / k
    return coeffs

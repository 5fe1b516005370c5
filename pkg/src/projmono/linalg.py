"""Small exact linear algebra over Q(i): determinant, rank, nullspace, Gram-Schmidt."""
from __future__ import annotations

from fractions import Fraction

from .scalars import QQi, rational_approx, to_exact

ZERO = QQi(0)
ONE = QQi(1)


def _copy(rows):
    return [[to_exact(x) for x in row] for row in rows]


def det(matrix) -> QQi:
    """Determinant by Gaussian elimination in Q(i)."""
    a = _copy(matrix)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    result = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = -result
        p = a[col][col]
        result = result * p
        inv = ONE / p
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                row_r, row_c = a[r], a[col]
                for c in range(col + 1, n):
                    if row_c[c]:
                        row_r[c] = row_r[c] - f * row_c[c]
    return result


def row_reduce(matrix):
    """Reduced row echelon form; returns (rref rows, pivot columns)."""
    a = _copy(matrix)
    if not a:
        return a, []
    m, n = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = ONE / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def rank(matrix) -> int:
    return len(row_reduce(matrix)[1])


def nullspace(matrix, ncols=None):
    """Basis of {v : matrix @ v = 0} as lists of QQi."""
    if not matrix:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    rref, pivots = row_reduce(matrix)
    n = len(rref[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for row, pc in zip(rref, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def hdot(u, v):
    """Hermitian inner product sum(conj(u_i) * v_i)."""
    s = ZERO
    for a, b in zip(u, v):
        s = s + a.conjugate() * b
    return s


def gram_schmidt(vectors, normalize_den=10**7):
    """Orthogonalize (Hermitian) exactly, dropping dependent vectors.

    Each surviving vector is then scaled by a rational approximation of
    1/norm, so the result is orthonormal up to ~1/normalize_den**2 while
    staying exact.
    """
    basis = []
    for v in vectors:
        w = [to_exact(x) for x in v]
        for b in basis:
            coef = hdot(b, w) / hdot(b, b)
            w = [x - coef * y for x, y in zip(w, b)]
        if any(w):
            basis.append(w)
    out = []
    for w in basis:
        n2 = float(hdot(w, w).re)
        scale = rational_approx(1.0 / n2 ** 0.5, normalize_den)
        if scale == 0:
            scale = Fraction(1)
        out.append([x * scale for x in w])
    return out

"""Exact rational and integer linear algebra helpers.

Everything here works over `fractions.Fraction` or plain ints; no floating
point is used anywhere in the package.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Row = tuple[Fraction, ...]


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [row for row in mat[:r]], pivots


def rank(rows: list[list[Fraction]]) -> int:
    reduced, pivots = rref(rows)
    return len(pivots)


def affine_rank(points: list[tuple[int, ...]]) -> int:
    """Dimension of the affine hull of the given points (-1 for empty)."""
    if not points:
        return -1
    p0 = points[0]
    diffs = [[Fraction(a - b) for a, b in zip(p, p0)] for p in points[1:]]
    if not diffs:
        return 0
    return rank(diffs)


def nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of the right kernel {x : A x = 0}."""
    if not rows:
        return [[Fraction(1 if i == j else 0) for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r][f]
        basis.append(vec)
    return basis


def solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """One solution of A x = b, or None if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(aug)
    for row in reduced:
        if all(x == 0 for x in row[:-1]) and row[-1] != 0:
            return None
    # fully reduced rows with free variables set to 0: x[pivot] = rhs entry
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        if p == ncols:
            return None
        x[p] = reduced[r][-1]
    return x


def normalize_int_row(row: list[Fraction]) -> tuple[int, ...]:
    """Scale a rational row to coprime integers with positive leading entry."""
    denom = 1
    for x in row:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in row]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    for v in ints:
        if v != 0:
            if v < 0:
                ints = [-w for w in ints]
            break
    return tuple(ints)


def primitive_vector(vec: list[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (keeps direction)."""
    g = 0
    for v in vec:
        g = gcd(g, v)
    if g > 1:
        vec = [v // g for v in vec]
    return tuple(vec)


def hnf_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form; returns the nonzero rows."""
    mat = [list(r) for r in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        # gcd elimination below the pivot
        for i in range(r + 1, len(mat)):
            while mat[i][c] != 0:
                q = mat[r][c] // mat[i][c]
                mat[r] = [a - q * b for a, b in zip(mat[r], mat[i])]
                mat[r], mat[i] = mat[i], mat[r]
        if mat[r][c] < 0:
            mat[r] = [-x for x in mat[r]]
        # reduce entries above the pivot
        for i in range(r):
            q = mat[i][c] // mat[r][c]
            if q != 0:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return [row for row in mat if any(x != 0 for x in row)]


def integer_kernel(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of the saturated lattice {x in Z^ncols : A x = 0}."""
    mat = [list(r) for r in rows]
    u = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def col_combine(a: int, b: int, q: int) -> None:
        for row in mat:
            row[a] -= q * row[b]
        for row in u:
            row[a] -= q * row[b]

    def col_swap(a: int, b: int) -> None:
        for row in mat:
            row[a], row[b] = row[b], row[a]
        for row in u:
            row[a], row[b] = row[b], row[a]

    r = 0
    for i in range(len(mat)):
        pivot = None
        for c in range(r, ncols):
            if mat[i][c] != 0:
                pivot = c
                break
        if pivot is None:
            continue
        col_swap(r, pivot)
        for c in range(r + 1, ncols):
            while mat[i][c] != 0:
                q = mat[i][r] // mat[i][c]
                col_combine(r, c, q)
                col_swap(r, c)
        r += 1
    # columns r..ncols of u span the kernel lattice (automatically saturated)
    return [[u[i][c] for i in range(ncols)] for c in range(r, ncols)]


def saturated_basis(vectors: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of (R-span of the vectors) intersected with Z^ncols."""
    frac_rows = [[Fraction(v) for v in vec] for vec in vectors]
    if rank(frac_rows) == 0:
        return []
    ortho = nullspace(frac_rows, ncols) if frac_rows else []
    cmat = [list(normalize_int_row(row)) for row in ortho]
    return integer_kernel(cmat, ncols)


def det_int(rows: list[list[int]]) -> int:
    """Exact determinant of a square integer matrix (fraction-free via Fractions)."""
    n = len(rows)
    mat = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if mat[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            return 0
        if pivot != c:
            mat[c], mat[pivot] = mat[pivot], mat[c]
            det = -det
        det *= mat[c][c]
        inv = mat[c][c]
        for i in range(c + 1, n):
            if mat[i][c] != 0:
                f = mat[i][c] / inv
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[c])]
    assert det.denominator == 1
    return int(det)


def invert(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    """Exact inverse of a square rational matrix."""
    n = len(rows)
    aug = [list(r) + [Fraction(1 if i == j else 0) for j in range(n)] for i, r in enumerate(rows)]
    reduced, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in reduced]

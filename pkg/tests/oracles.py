"""Independent oracles and shared fixtures for the test suite.

Everything here deliberately recomputes quantities by routes different from
the library implementation: Whitney-style subset sums instead of the Moebius
recursion, pyramid volumes instead of Ehrhart counts, and an exact rational
simplex to decide whether *any* height function makes a triangulation regular.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from chisig import _linalg, lattice
from chisig.arrangements import (
    AFFINE,
    HyperplaneArrangement,
    affine_arrangement,
    projective_arrangement,
)
from chisig.lattice import LatticePolytope, Triangulation


# --- arrangements ------------------------------------------------------------


def whitney_characteristic_polynomial(arr: HyperplaneArrangement) -> tuple[int, ...]:
    """chi_A(t) as the Whitney sum over central subfamilies: for every subset
    of hyperplanes with nonempty intersection, add (-1)^|S| t^dim."""
    m = arr.dim
    coeffs = [0] * (m + 1)
    for r in range(arr.k + 1):
        for subset in itertools.combinations(range(arr.k), r):
            rows = []
            for j in subset:
                row = arr.hyperplanes[j]
                if arr.ambient == AFFINE:
                    rows.append([Fraction(c) for c in row[1:]] + [Fraction(-row[0])])
                else:
                    rows.append([Fraction(c) for c in row])
            if arr.ambient == AFFINE:
                lhs = [row[:-1] for row in rows]
                rhs = [row[-1] for row in rows]
                if rows and _linalg.solve(lhs, rhs) is None:
                    continue
                dim = m - _linalg.rank(lhs) if rows else m
            else:
                rank = _linalg.rank(rows) if rows else 0
                if rank > m:
                    continue
                dim = m - rank
            coeffs[dim] += (-1) ** r
    return tuple(coeffs)


def random_affine_arrangement(rng: random.Random, max_dim=4, max_k=6) -> HyperplaneArrangement:
    dim = rng.randint(1, max_dim)
    k = rng.randint(0, max_k)
    rows = []
    for _ in range(k):
        while True:
            row = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(dim + 1)]
            if any(c != 0 for c in row[1:]):
                rows.append(row)
                break
    return affine_arrangement(dim, rows)


def random_projective_arrangement(rng: random.Random, max_dim=4, max_k=6) -> HyperplaneArrangement:
    dim = rng.randint(1, max_dim)
    k = rng.randint(1, max_k)
    rows = []
    for _ in range(k):
        while True:
            row = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(dim + 1)]
            if any(c != 0 for c in row):
                rows.append(row)
                break
    return projective_arrangement(dim, rows)


# --- lattice geometry ---------------------------------------------------------


def normalized_volume_oracle(p: LatticePolytope) -> int:
    """dim! * volume via recursive pyramids over facets, no Ehrhart counts."""
    if p.dim == 1:
        return max(v[0] for v in p.vertices) - min(v[0] for v in p.vertices)
    apex = p.vertices[0]
    total = 0
    for face in lattice.faces(p):
        if face.dim != p.dim - 1:
            continue
        facet_ids = lattice.face_containing_facets(p, face)
        (a, b) = lattice.facets(p)[facet_ids[0]]
        height = b - sum(ac * xc for ac, xc in zip(a, apex))
        if height == 0:
            continue  # apex on the facet: flat pyramid
        total += abs(height) * normalized_volume_oracle(lattice.face_polytope(p, face))
    return total


def random_lattice_polytope(rng: random.Random, dim: int, span: int = 4, npts: int = 7) -> LatticePolytope:
    while True:
        pts = {tuple(rng.randint(0, span) for _ in range(dim)) for _ in range(npts)}
        if _linalg.affine_rank(sorted(pts)) == dim:
            return LatticePolytope.from_points(sorted(pts))


def random_unimodular_matrix(rng: random.Random, n: int) -> list[list[int]]:
    """Product of elementary integer shears and permutations; det = +-1."""
    mat = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(6):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        for col in range(n):
            mat[i][col] += c * mat[j][col]
    if rng.random() < 0.5 and n > 1:
        mat[0], mat[1] = mat[1], mat[0]
    return mat


def apply_affine(points, mat, shift):
    n = len(shift)
    out = []
    for pt in points:
        out.append(tuple(sum(mat[i][j] * pt[j] for j in range(n)) + shift[i] for i in range(n)))
    return out


# --- exact LP (regularity decider) -------------------------------------------


def lp_feasible(rows) -> bool:
    """Exact feasibility of {M h >= 1, h free}: phase-I simplex, Bland's rule.

    A triangulation admits *some* regularizing heights iff its fold system is
    feasible (strictness is scale-invariant, so >= 1 suffices).
    """
    m, n = len(rows), len(rows[0])
    if m == 0:
        return True
    ncols = 2 * n + 2 * m
    a = []
    for i, r in enumerate(rows):
        row = [Fraction(x) for x in r] + [Fraction(-x) for x in r]
        row += [Fraction(-1) if j == i else Fraction(0) for j in range(m)]
        row += [Fraction(1) if j == i else Fraction(0) for j in range(m)]
        a.append(row)
    b = [Fraction(1)] * m
    cost = [Fraction(0)] * (2 * n + m) + [Fraction(1)] * m
    basis = list(range(2 * n + m, ncols))
    iterations = 0
    while True:
        iterations += 1
        assert iterations < 20000, "simplex failed to terminate"
        y = [cost[basis[i]] for i in range(m)]
        entering = None
        for j in range(ncols):
            if j in basis:
                continue
            if cost[j] - sum(y[i] * a[i][j] for i in range(m)) < 0:
                entering = j
                break
        if entering is None:
            return sum(cost[basis[i]] * b[i] for i in range(m)) == 0
        best = None
        for i in range(m):
            if a[i][entering] > 0:
                ratio = b[i] / a[i][entering]
                if best is None or ratio < best[0] or (
                    ratio == best[0] and basis[i] < basis[best[1]]
                ):
                    best = (ratio, i)
        if best is None:
            return True
        r = best[1]
        piv = a[r][entering]
        a[r] = [x / piv for x in a[r]]
        b[r] = b[r] / piv
        for i in range(m):
            if i != r and a[i][entering] != 0:
                f = a[i][entering]
                a[i] = [x - f * z for x, z in zip(a[i], a[r])]
                b[i] = b[i] - f * b[r]
        basis[r] = entering


# --- fixtures -----------------------------------------------------------------


def whirlpool_square() -> Triangulation:
    """The classical spiral triangulation of [0,3]^2: unimodular, a valid
    complex, and certified non-regular by `lp_feasible` in the tests."""
    pts = sorted({(x, y) for x in range(4) for y in range(4)})
    idx = {p: i for i, p in enumerate(pts)}
    tris = []
    tris += [((0, 0), (1, 0), (1, 1)), ((1, 0), (2, 0), (1, 1)),
             ((2, 0), (3, 0), (1, 1)), ((3, 0), (2, 1), (1, 1))]
    tris += [((3, 0), (3, 1), (2, 1)), ((3, 1), (3, 2), (2, 1)),
             ((3, 2), (3, 3), (2, 1)), ((3, 3), (2, 2), (2, 1))]
    tris += [((3, 3), (2, 3), (2, 2)), ((2, 3), (1, 3), (2, 2)),
             ((1, 3), (0, 3), (2, 2)), ((0, 3), (1, 2), (2, 2))]
    tris += [((0, 3), (0, 2), (1, 2)), ((0, 2), (0, 1), (1, 2)),
             ((0, 1), (0, 0), (1, 2)), ((0, 0), (1, 1), (1, 2))]
    tris += [((1, 1), (2, 1), (2, 2)), ((1, 1), (2, 2), (1, 2))]
    sims = tuple(sorted(tuple(sorted(idx[p] for p in t)) for t in tris))
    return Triangulation(2, tuple(pts), sims)


def simplex_polytope(n: int, d: int = 1) -> LatticePolytope:
    verts = [tuple(0 for _ in range(n))]
    for i in range(n):
        verts.append(tuple(d if j == i else 0 for j in range(n)))
    return LatticePolytope.from_points(verts)

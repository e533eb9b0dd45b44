"""Exact lattice polytopes, face lattices, Ehrhart delta-vectors and
unimodular triangulations with regularity certificates.

Faces are enumerated by exhaustive supporting-hyperplane search over vertex
subsets, and lattice points by bounding-box scans with exact containment
tests; both are fine at desk scale (<= ~40 vertices, dimension <= ~4).
Re-coordinatization of a face uses a basis of the *saturated* lattice of its
affine span, so Ehrhart data of faces is computed in the correct induced
lattice.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, gcd

from . import _linalg


@dataclass(frozen=True)
class LatticePolytope:
    """Full-dimensional lattice polytope, stored by its exact vertex set."""

    dim: int
    vertices: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        verts = tuple(sorted(tuple(int(x) for x in v) for v in self.vertices))
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise ValueError("a polytope needs at least one vertex")
        if len({len(v) for v in verts}) != 1 or len(verts[0]) != self.dim:
            raise ValueError("vertex coordinates must match the ambient dimension")
        if _linalg.affine_rank(list(verts)) != self.dim:
            raise ValueError("degenerate vertex set: polytope is not full-dimensional")
        computed = _extreme_points(verts)
        if set(computed) != set(verts):
            raise ValueError("vertex list must consist of exactly the extreme points")

    @classmethod
    def from_points(cls, points) -> "LatticePolytope":
        pts = tuple(sorted({tuple(int(x) for x in p) for p in points}))
        if not pts:
            raise ValueError("no points given")
        dim = len(pts[0])
        if _linalg.affine_rank(list(pts)) != dim:
            raise ValueError("degenerate vertex set: points are not full-dimensional")
        return cls(dim, _extreme_points(pts))


@dataclass(frozen=True)
class Face:
    """Face of a polytope, identified by the sorted vertex indices spanning it."""

    vertex_ids: tuple[int, ...]
    dim: int


def _facet_candidates(points: tuple[tuple[int, ...], ...], dim: int):
    """Distinct supporting hyperplanes (a, b) with a.x <= b on all points."""
    if dim == 0:
        return ()
    seen = {}
    for subset in itertools.combinations(range(len(points)), dim):
        pts = [points[i] for i in subset]
        p0 = pts[0]
        diffs = [[Fraction(a - b) for a, b in zip(p, p0)] for p in pts[1:]]
        if diffs and _linalg.rank(diffs) != dim - 1:
            continue
        normals = _linalg.nullspace(diffs, dim) if diffs else _linalg.nullspace([], dim)
        if len(normals) != 1:
            continue
        a = _linalg.normalize_int_row(normals[0])
        b = sum(ai * xi for ai, xi in zip(a, p0))
        values = [sum(ai * xi for ai, xi in zip(a, p)) for p in points]
        if all(v <= b for v in values):
            pass
        elif all(v >= b for v in values):
            a = tuple(-x for x in a)
            b = -b
            values = [-v for v in values]
        else:
            continue
        contact = tuple(i for i, v in enumerate(values) if v == b)
        if _linalg.affine_rank([points[i] for i in contact]) == dim - 1:
            seen[(a, b)] = contact
    return tuple(sorted((a, b, c) for (a, b), c in seen.items()))


def _extreme_points(points: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    dim = len(points[0])
    if dim == 0:
        return (points[0],)
    facets = _facet_candidates(points, dim)
    extreme = []
    for i, p in enumerate(points):
        touching = [set(contact) for (a, b, contact) in facets if i in contact]
        if not touching:
            continue  # interior point
        minimal = set.intersection(*touching)
        if _linalg.affine_rank([points[j] for j in minimal]) == 0:
            extreme.append(p)
    return tuple(sorted(extreme))


@functools.lru_cache(maxsize=None)
def facets(p: LatticePolytope) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Facet inequalities (a, b), a.x <= b for all of P, one per facet."""
    return tuple((a, b) for (a, b, _c) in _facet_candidates(p.vertices, p.dim))


@functools.lru_cache(maxsize=None)
def faces(p: LatticePolytope) -> tuple[Face, ...]:
    """All faces of P (vertices up to P itself), sorted by (dim, vertex ids)."""
    all_ids = frozenset(range(len(p.vertices)))
    contact_sets = []
    for (a, b) in facets(p):
        contact_sets.append(
            frozenset(
                i
                for i, v in enumerate(p.vertices)
                if sum(ai * xi for ai, xi in zip(a, v)) == b
            )
        )
    found = {all_ids}
    frontier = {all_ids}
    while frontier:
        new = set()
        for f in frontier:
            for c in contact_sets:
                g = f & c
                if g and g not in found:
                    new.add(g)
        found |= new
        frontier = new
    out = []
    for ids in found:
        verts = [p.vertices[i] for i in ids]
        out.append(Face(tuple(sorted(ids)), _linalg.affine_rank(verts)))
    return tuple(sorted(out, key=lambda f: (f.dim, f.vertex_ids)))


def face_containing_facets(p: LatticePolytope, face: Face) -> tuple[int, ...]:
    """Indices of facets of P whose hyperplane contains the face."""
    out = []
    for idx, (a, b) in enumerate(facets(p)):
        if all(
            sum(ai * xi for ai, xi in zip(a, p.vertices[i])) == b
            for i in face.vertex_ids
        ):
            out.append(idx)
    return tuple(out)


def contains_point(p: LatticePolytope, point, dilation: int = 1, strict: bool = False) -> bool:
    for (a, b) in facets(p):
        v = sum(ai * xi for ai, xi in zip(a, point))
        if strict:
            if v >= dilation * b:
                return False
        elif v > dilation * b:
            return False
    return True


@functools.lru_cache(maxsize=None)
def lattice_points(p: LatticePolytope, dilation: int = 1, strict: bool = False):
    """Lattice points of dilation*P, by bounding-box scan with exact tests."""
    if dilation == 0:
        return ((0,) * p.dim,) if not strict else ()
    lo = [min(v[i] for v in p.vertices) * dilation for i in range(p.dim)]
    hi = [max(v[i] for v in p.vertices) * dilation for i in range(p.dim)]
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    return tuple(
        pt for pt in itertools.product(*ranges) if contains_point(p, pt, dilation, strict)
    )


@functools.lru_cache(maxsize=None)
def delta_vector(p: LatticePolytope) -> tuple[int, ...]:
    """Ehrhart h*-vector, from exact point counts of the dilates 0..dim."""
    d = p.dim
    counts = [len(lattice_points(p, t)) for t in range(d + 1)]
    delta = []
    for j in range(d + 1):
        delta.append(sum((-1) ** i * comb(d + 1, i) * counts[j - i] for i in range(j + 1)))
    return tuple(delta)


def normalized_volume(p: LatticePolytope) -> int:
    """dim! times the Euclidean volume; equals the sum of the delta-vector."""
    return sum(delta_vector(p))


def interior_point_count(p: LatticePolytope) -> int:
    return len(lattice_points(p, 1, True))


def ehrhart_value(delta: tuple[int, ...], dim: int, t: int) -> int:
    """Evaluate the Ehrhart polynomial encoded by a delta-vector at integer t."""
    total = Fraction(0)
    for i, di in enumerate(delta):
        num = 1
        for j in range(dim):
            num *= t + dim - i - j
        total += Fraction(di * num, factorial(dim))
    assert total.denominator == 1
    return int(total)


def interior_count_from_delta(delta: tuple[int, ...], dim: int, t: int) -> int:
    """Interior lattice points of t*P via Ehrhart reciprocity."""
    return (-1) ** dim * ehrhart_value(delta, dim, -t)


# --- face re-coordinatization --------------------------------------------


@functools.lru_cache(maxsize=None)
def face_lattice_chart(p: LatticePolytope, face: Face):
    """(base point, basis rows) of the saturated lattice of the face's span."""
    verts = [p.vertices[i] for i in face.vertex_ids]
    base = min(verts)
    diffs = [[v[i] - base[i] for i in range(p.dim)] for v in verts]
    basis = _linalg.saturated_basis(diffs, p.dim)
    return base, tuple(tuple(row) for row in basis)


def face_coordinates(p: LatticePolytope, face: Face, point) -> tuple[int, ...]:
    """Coordinates of an ambient lattice point of the face in its own lattice."""
    base, basis = face_lattice_chart(p, face)
    if not basis:
        return ()
    rows = [[Fraction(basis[j][i]) for j in range(len(basis))] for i in range(p.dim)]
    rhs = [Fraction(point[i] - base[i]) for i in range(p.dim)]
    sol = _linalg.solve(rows, rhs)
    if sol is None:
        raise ValueError("point does not lie on the face's affine span")
    out = []
    for x in sol:
        if x.denominator != 1:
            raise ValueError("point is not in the face lattice")
        out.append(int(x))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def face_polytope(p: LatticePolytope, face: Face) -> LatticePolytope:
    """The face as a full-dimensional polytope in its own lattice (dim >= 1)."""
    if face.dim == 0:
        raise ValueError("a vertex has no full-dimensional model")
    coords = [face_coordinates(p, face, p.vertices[i]) for i in face.vertex_ids]
    return LatticePolytope.from_points(coords)


# --- triangulations --------------------------------------------------------


@dataclass(frozen=True)
class Triangulation:
    """Triangulation data: points used as vertices, maximal simplices, heights.

    ``simplices`` are (dim+1)-tuples of point indices.  Heights, when present,
    are exact rationals, one per point.
    """

    dim: int
    points: tuple[tuple[int, ...], ...]
    simplices: tuple[tuple[int, ...], ...]
    heights: tuple[Fraction, ...] | None = None

    def __post_init__(self) -> None:
        pts = tuple(tuple(int(x) for x in pt) for pt in self.points)
        object.__setattr__(self, "points", pts)
        sims = tuple(tuple(sorted(int(i) for i in s)) for s in self.simplices)
        object.__setattr__(self, "simplices", sims)
        if self.heights is not None:
            hs = tuple(Fraction(h) for h in self.heights)
            if len(hs) != len(pts):
                raise ValueError("need exactly one height per point")
            object.__setattr__(self, "heights", hs)
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate points in triangulation")
        for s in sims:
            for i in s:
                if not 0 <= i < len(pts):
                    raise ValueError(f"simplex index {i} out of range")

    def with_heights(self, heights) -> "Triangulation":
        return Triangulation(self.dim, self.points, self.simplices, tuple(heights))


def _edge_matrix(t: Triangulation, simplex: tuple[int, ...]) -> list[list[int]]:
    p0 = t.points[simplex[0]]
    return [[t.points[i][c] - p0[c] for c in range(t.dim)] for i in simplex[1:]]


def simplex_determinant(t: Triangulation, simplex: tuple[int, ...]) -> int:
    if len(simplex) != t.dim + 1:
        raise ValueError(f"cell {simplex} is not a {t.dim}-simplex")
    return _linalg.det_int(_edge_matrix(t, simplex))


def check_unimodular(t: Triangulation) -> bool:
    """True iff every maximal simplex has edge determinant +-1."""
    for s in t.simplices:
        d = simplex_determinant(t, s)
        if d == 0:
            raise ValueError(f"cell {s} is degenerate, not a simplex")
        if abs(d) != 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def hull_of(t: Triangulation) -> LatticePolytope:
    return LatticePolytope.from_points(t.points)


def _bbox(t: Triangulation, s: tuple[int, ...]):
    pts = [t.points[i] for i in s]
    return (
        tuple(min(p[c] for p in pts) for c in range(t.dim)),
        tuple(max(p[c] for p in pts) for c in range(t.dim)),
    )


def _simplex_facet_inequalities(t: Triangulation, s: tuple[int, ...]):
    """For each vertex of s, the inequality cutting out s on its opposite facet."""
    out = []
    for omit in s:
        rest = [t.points[i] for i in s if i != omit]
        p0 = rest[0]
        diffs = [[Fraction(a - b) for a, b in zip(p, p0)] for p in rest[1:]]
        normal = _linalg.nullspace(diffs, t.dim)[0] if diffs else _linalg.nullspace([], t.dim)[0]
        a = _linalg.normalize_int_row(normal)
        b = sum(ai * xi for ai, xi in zip(a, p0))
        v = sum(ai * xi for ai, xi in zip(a, t.points[omit]))
        if v > b:
            a, b = tuple(-x for x in a), -b
        out.append((a, b))
    return out


def _in_simplex_hull(pts: list[tuple[int, ...]], q: list[Fraction]) -> bool:
    """Is q in the convex hull of affinely independent lattice points pts?"""
    if not pts:
        return False
    n = len(q)
    rows = [[Fraction(pts[j][i]) for j in range(len(pts))] for i in range(n)]
    rows.append([Fraction(1)] * len(pts))
    rhs = list(q) + [Fraction(1)]
    lam = _linalg.solve(rows, rhs)
    if lam is None:
        return False
    # affine independence makes the barycentric solution unique
    recon = [sum(lam[j] * pts[j][i] for j in range(len(pts))) for i in range(n)]
    if recon != list(q) or sum(lam) != 1:
        return False
    return all(x >= 0 for x in lam)


def _det_small(rows: list[list[int]]) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [[rows[i][c] for c in range(n) if c != j] for i in range(1, n)]
        total += (-1) ** j * rows[0][j] * _det_small(minor)
    return total


def _separated_with_contacts_inside_shared(
    t: Triangulation,
    s1: tuple[int, ...],
    s2: tuple[int, ...],
    ineqs1,
    ineqs2,
    shared_ids: set[int],
) -> bool:
    """Fast conclusive test: a functional with s1 on one side and s2 on the
    other, touching each only within the shared vertices.  Then the geometric
    intersection is contained in the hull of the shared vertices."""
    for (a, b) in ineqs1 + ineqs2:
        v1 = {i: sum(ac * xc for ac, xc in zip(a, t.points[i])) for i in s1}
        v2 = {i: sum(ac * xc for ac, xc in zip(a, t.points[i])) for i in s2}
        for sign in (1, -1):
            bb = sign * b
            if all(sign * v <= bb for v in v1.values()) and all(
                sign * v >= bb for v in v2.values()
            ):
                c1 = {i for i, v in v1.items() if sign * v == bb}
                c2 = {i for i, v in v2.items() if sign * v == bb}
                if c1 <= shared_ids and c2 <= shared_ids:
                    return True
    return False


def _proper_pair(t: Triangulation, s1, s2, ineqs1, ineqs2) -> bool:
    """conv(s1) and conv(s2) intersect exactly in the hull of shared vertices."""
    lo1, hi1 = _bbox(t, s1)
    lo2, hi2 = _bbox(t, s2)
    if any(hi1[c] < lo2[c] or hi2[c] < lo1[c] for c in range(t.dim)):
        return True
    shared_ids = set(s1) & set(s2)
    if _separated_with_contacts_inside_shared(t, s1, s2, ineqs1, ineqs2, shared_ids):
        return True
    # enumerate the vertices of the intersection polytope by integer Cramer rule
    shared = [t.points[i] for i in sorted(shared_ids)]
    shared_set = set(shared)
    constraints = ineqs1 + ineqs2
    n = t.dim
    checked: set[tuple] = set()
    for subset in itertools.combinations(range(len(constraints)), n):
        mat = [list(constraints[i][0]) for i in subset]
        den = _det_small(mat)
        if den == 0:
            continue
        nums = []
        for col in range(n):
            m2 = [
                [constraints[i][0][c] if c != col else constraints[i][1] for c in range(n)]
                for i in subset
            ]
            nums.append(_det_small(m2))
        if den < 0:
            den = -den
            nums = [-x for x in nums]
        g = den
        for x in nums:
            g = gcd(g, x)
        if g > 1:
            den //= g
            nums = [x // g for x in nums]
        key = (den, *nums)
        if key in checked:
            continue
        checked.add(key)
        feasible = all(
            sum(ac * xc for ac, xc in zip(a, nums)) <= b * den for (a, b) in constraints
        )
        if not feasible:
            continue
        if den == 1 and tuple(nums) in shared_set:
            continue  # a shared vertex itself
        pt = [Fraction(x, den) for x in nums]
        if not _in_simplex_hull(shared, pt):
            return False
    return True


@functools.lru_cache(maxsize=None)
def validate_triangulation(t: Triangulation) -> LatticePolytope:
    """Check covering, disjoint interiors and proper face-to-face intersections.

    Returns the convex hull of the triangulation points.
    """
    if not t.simplices:
        raise ValueError("triangulation has no maximal cells")
    p = hull_of(t)
    if p.dim != t.dim:
        raise ValueError("points do not span the ambient dimension")
    for pt in t.points:
        if not contains_point(p, pt):
            raise ValueError(f"point {pt} lies outside the hull")
    total = 0
    for s in t.simplices:
        d = simplex_determinant(t, s)
        if d == 0:
            raise ValueError(f"cell {s} is degenerate, not a simplex")
        total += abs(d)
    if total != normalized_volume(p):
        raise ValueError(
            f"cells have normalized volume {total}, hull has {normalized_volume(p)}: "
            "not a covering with disjoint interiors"
        )
    if len(set(t.simplices)) != len(t.simplices):
        raise ValueError("duplicate maximal cell")
    ineqs = {s: tuple(_simplex_facet_inequalities(t, s)) for s in t.simplices}
    for s1, s2 in itertools.combinations(t.simplices, 2):
        if not _proper_pair(t, s1, s2, ineqs[s1], ineqs[s2]):
            raise ValueError(f"cells {s1} and {s2} do not intersect in a common face")
    return p


# --- regularity -------------------------------------------------------------


def fold_constraints(t: Triangulation):
    """One linear functional per interior facet; the triangulation is regular
    for given heights iff every functional is strictly positive on them."""
    facet_owners: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for s in t.simplices:
        for omit in s:
            f = tuple(i for i in s if i != omit)
            facet_owners.setdefault(f, []).append(s)
    rows = []
    for f, owners in sorted(facet_owners.items()):
        if len(owners) > 2:
            raise ValueError(f"facet {f} is shared by more than two cells")
        if len(owners) != 2:
            continue
        s1, s2 = owners
        b = next(i for i in s2 if i not in f)
        # affine interpolation of the s1-lift evaluated at point b
        pts = [t.points[i] for i in s1]
        n = t.dim
        rows_m = [[Fraction(pts[j][c]) for j in range(n + 1)] for c in range(n)]
        rows_m.append([Fraction(1)] * (n + 1))
        rhs = [Fraction(x) for x in t.points[b]] + [Fraction(1)]
        lam = _linalg.solve(rows_m, rhs)
        coeff = {b: Fraction(1)}
        for j, i in enumerate(s1):
            coeff[i] = coeff.get(i, Fraction(0)) - lam[j]
        row = tuple(coeff.get(i, Fraction(0)) for i in range(len(t.points)))
        rows.append(row)
    return rows


def check_regular(t: Triangulation, heights=None) -> bool:
    """True iff the heights induce exactly this triangulation via the lower hull."""
    hs = t.heights if heights is None else tuple(Fraction(h) for h in heights)
    if hs is None:
        raise ValueError("no heights given")
    if len(hs) != len(t.points):
        raise ValueError("need exactly one height per point")
    for row in fold_constraints(t):
        if sum(c * h for c, h in zip(row, hs)) <= 0:
            return False
    return True


# --- face restriction -------------------------------------------------------


def points_on_face(t: Triangulation, p: LatticePolytope, face: Face) -> tuple[int, ...]:
    """Indices of triangulation points lying on the given face of the hull."""
    facet_list = facets(p)
    active = face_containing_facets(p, face)
    out = []
    for idx, pt in enumerate(t.points):
        if all(
            sum(a * x for a, x in zip(facet_list[i][0], pt)) == facet_list[i][1]
            for i in active
        ):
            out.append(idx)
    return tuple(out)


def face_restrict(t: Triangulation, signs, face: Face):
    """Restrict a triangulation and sign distribution to a face of the hull.

    Returns (triangulation in the face's own lattice, restricted signs).  A
    vertex face yields the empty-hypersurface marker: a 0-dimensional
    triangulation with a single point and no cells.
    """
    p = hull_of(t)
    signs = tuple(signs)
    if len(signs) != len(t.points):
        raise ValueError("need exactly one sign per point")
    on_face = points_on_face(t, p, face)
    index_map = {old: new for new, old in enumerate(on_face)}
    if face.dim == 0:
        new_points = ((),)
        return Triangulation(0, new_points, ()), (signs[on_face[0]],)
    new_points = tuple(
        face_coordinates(p, face, t.points[i]) for i in on_face
    )
    cells = set()
    on_face_set = set(on_face)
    for s in t.simplices:
        sub = tuple(sorted(index_map[i] for i in s if i in on_face_set))
        if len(sub) == face.dim + 1:
            pts = [new_points[i] for i in sub]
            if _linalg.affine_rank(pts) == face.dim:
                cells.add(sub)
    heights = None
    if t.heights is not None:
        heights = tuple(t.heights[i] for i in on_face)
    restricted = Triangulation(face.dim, new_points, tuple(sorted(cells)), heights)
    return restricted, tuple(signs[i] for i in on_face)


# --- fixture constructors ---------------------------------------------------


def segment_triangulation(k: int) -> Triangulation:
    """[0, k] subdivided into unit segments, with strictly convex heights."""
    if k < 1:
        raise ValueError("need k >= 1")
    points = tuple((i,) for i in range(k + 1))
    simplices = tuple((i, i + 1) for i in range(k))
    heights = tuple(Fraction(i * i) for i in range(k + 1))
    return Triangulation(1, points, simplices, heights)


def alcove_triangulation(n: int, d: int) -> Triangulation:
    """The staircase (alcove) triangulation of the dilated simplex d*Delta_n.

    Unimodular and regular; the supplied heights certify regularity.
    """
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    pts = []
    for x in itertools.product(range(d + 1), repeat=n):
        if sum(x) <= d:
            pts.append(x)
    pts = tuple(sorted(pts))
    index = {pt: i for i, pt in enumerate(pts)}

    def in_region(y):
        prev = 0
        for v in y:
            if v < prev:
                return False
            prev = v
        return y[-1] <= d

    def y_to_x(y):
        prev = 0
        out = []
        for v in y:
            out.append(v - prev)
            prev = v
        return tuple(out)

    simplices = set()
    for base in itertools.product(range(d), repeat=n):
        for perm in itertools.permutations(range(n)):
            ys = [tuple(base)]
            cur = list(base)
            for j in perm:
                cur[j] += 1
                ys.append(tuple(cur))
            if all(in_region(y) for y in ys):
                simplices.add(tuple(sorted(index[y_to_x(y)] for y in ys)))

    def height(x):
        ys = list(itertools.accumulate(x))
        h = sum(v * v for v in ys)
        h += sum((ys[j] - ys[i]) ** 2 for i in range(n) for j in range(i + 1, n))
        return Fraction(h)

    heights = tuple(height(pt) for pt in pts)
    return Triangulation(n, pts, tuple(sorted(simplices)), heights)

"""Patchworked hypersurfaces: real Euler characteristic from sign data and
complex signature from the Newton polytope, assembled per torus orbit.

Real side.  For a unimodular triangulation T of P in R^n and a sign on every
lattice point, the PL hypersurface inside one orthant copy of P has one open
(dim f - 1)-cell for every face f of T (dim >= 1, relative interior not in
the boundary of P) whose orthant-twisted signs are non-constant; chi^c is the
signed cell count over all 2^n orthants.

Complex side.  The chi_y genus of a nondegenerate hypersurface in the
n-torus with Newton polytope P is computed from Ehrhart data alone:

* for every face F (dim e >= 1) the compact hypersurface with polytope F has

      chi(Omega^p) = sum_{i=0..p} (-1)^i [a_{p-i}(-i) - a_{p-i}(-i-1)],

  where a_j(m) for m >= 1 counts interior lattice points of dilates of the
  faces of F weighted by binomial(dim, j) (the toric Bott-type formula),
  a_j(0) reads off the cohomology of the ambient toric variety from the face
  numbers, and negative arguments are resolved by Serre duality
  a_j(-m) = (-1)^e a_{e-j}(m);

* the compact pieces are assembled into the open hypersurface by Moebius
  inversion over the face lattice.

The result is gated by independent oracles (segment counts, hyperplane
arrangement cross-identities, and the signed-volume value at y = -1) before
being trusted; see the test suite.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from math import comb

from . import lattice
from .lattice import Face, LatticePolytope, Triangulation
from .motivic import ChiYPolynomial

MAX_ORTHANT_DIM = 6


def _check_signs(t: Triangulation, signs) -> tuple[int, ...]:
    signs = tuple(signs)
    if len(signs) != len(t.points):
        raise ValueError("need exactly one sign per triangulation point")
    if any(s not in (1, -1) for s in signs):
        raise ValueError("signs must be +1 or -1")
    return signs


def _triangulation_faces(t: Triangulation):
    """All faces of all maximal simplices with dim >= 1, as index tuples."""
    found: set[tuple[int, ...]] = set()
    for s in t.simplices:
        for size in range(2, len(s) + 1):
            for sub in itertools.combinations(s, size):
                found.add(sub)
    return sorted(found)


def real_euler_torus(t: Triangulation, signs) -> int:
    """chi^c of the patchworked hypersurface inside the open real torus."""
    if t.dim > MAX_ORTHANT_DIM:
        raise ValueError(
            f"ambient dimension {t.dim} exceeds the orthant-sum limit {MAX_ORTHANT_DIM}"
        )
    if t.dim == 0:
        return 0
    signs = _check_signs(t, signs)
    if not lattice.check_unimodular(t):
        raise ValueError("triangulation is not unimodular")
    p = lattice.validate_triangulation(t)
    facet_list = lattice.facets(p)

    def on_boundary(face_ids: tuple[int, ...]) -> bool:
        pts = [t.points[i] for i in face_ids]
        for (a, b) in facet_list:
            if all(sum(ai * xi for ai, xi in zip(a, q)) == b for q in pts):
                return True
        return False

    interior_faces = [f for f in _triangulation_faces(t) if not on_boundary(f)]
    total = 0
    for orthant in itertools.product((0, 1), repeat=t.dim):
        for f in interior_faces:
            first = None
            constant = True
            for i in f:
                pt = t.points[i]
                parity = sum(o * (x % 2) for o, x in zip(orthant, pt)) % 2
                val = signs[i] * (-1 if parity else 1)
                if first is None:
                    first = val
                elif val != first:
                    constant = False
                    break
            if not constant:
                total += (-1) ** (len(f) - 2)
    return total


# --- complex side: chi_y of the torus hypersurface from the polytope --------


def _binomial_int(x: int, k: int) -> int:
    """binomial(x, k) for possibly negative integer x (falling factorial)."""
    num = 1
    for j in range(k):
        num *= x - j
    den = 1
    for j in range(1, k + 1):
        den *= j
    q, r = divmod(num, den)
    assert r == 0
    return q


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@functools.lru_cache(maxsize=None)
def _face_data(p: LatticePolytope):
    """(faces, delta vectors of positive-dimensional faces in their own lattice)."""
    fl = lattice.faces(p)
    deltas = {}
    for f in fl:
        if f.dim >= 1:
            deltas[f] = lattice.delta_vector(lattice.face_polytope(p, f))
    return fl, deltas


def _interior_points_of_dilate(face: Face, deltas, m: int) -> int:
    if face.dim == 0:
        return 1
    return lattice.interior_count_from_delta(deltas[face], face.dim, m)


@functools.lru_cache(maxsize=None)
def _compact_hypersurface_euler_u(p: LatticePolytope, face: Face) -> tuple[int, ...]:
    """Coefficients in u of E(compact hypersurface with polytope `face`; u, 1)."""
    fl, deltas = _face_data(p)
    face_verts = set(face.vertex_ids)
    subfaces = [g for g in fl if set(g.vertex_ids) <= face_verts]
    e = face.dim

    def a(j: int, m: int) -> int:
        if m >= 1:
            return sum(
                comb(g.dim, j) * _interior_points_of_dilate(g, deltas, m)
                for g in subfaces
                if g.dim >= j
            )
        if m == 0:
            # coefficient of u^j in sum over subfaces of (u - 1)^dim, with sign
            coeff = sum(
                comb(g.dim, j) * (-1) ** (g.dim - j) for g in subfaces if g.dim >= j
            )
            return (-1) ** j * coeff
        return (-1) ** e * a(e - j, -m)

    chi_p = []
    for pdeg in range(e):
        chi_p.append(
            sum(
                (-1) ** i * (a(pdeg - i, -i) - a(pdeg - i, -i - 1))
                for i in range(pdeg + 1)
            )
        )
    return tuple(c if i % 2 == 0 else -c for i, c in enumerate(chi_p))


def chi_y_torus_hypersurface(p: LatticePolytope) -> ChiYPolynomial:
    """chi_y genus of a nondegenerate hypersurface of the torus with Newton
    polytope p; the zero polynomial for a point (empty hypersurface)."""
    d = p.dim
    if d == 0:
        return ChiYPolynomial(())
    fl, _deltas = _face_data(p)
    coeffs = [0] * d
    for f in fl:
        if f.dim < 1:
            continue
        eu = _compact_hypersurface_euler_u(p, f)
        sign = (-1) ** (d - f.dim)
        for i, c in enumerate(eu):
            coeffs[i] += sign * c
    # substitute u = -y
    return ChiYPolynomial(tuple(c if i % 2 == 0 else -c for i, c in enumerate(coeffs)))


def sigma_torus_hypersurface(p: LatticePolytope) -> int:
    return chi_y_torus_hypersurface(p).at(1)


# --- per-orbit assembly ------------------------------------------------------


@dataclass(frozen=True)
class PatchworkInput:
    """Triangulation, signs and an upward-closed face selection.

    Construction validates unimodularity, the complex structure, sign totality
    and the selection; heights are certified separately by the caller (regular
    versus combinatorial mode).
    """

    triangulation: Triangulation
    signs: tuple[int, ...]
    face_selection: object = "all"  # "all" | "torus" | iterable of vertex-id tuples

    def __post_init__(self) -> None:
        object.__setattr__(self, "signs", _check_signs(self.triangulation, self.signs))
        if not lattice.check_unimodular(self.triangulation):
            raise ValueError("triangulation is not unimodular")
        p = lattice.validate_triangulation(self.triangulation)
        resolved = resolve_face_selection(p, self.face_selection)
        if not isinstance(self.face_selection, str):
            object.__setattr__(
                self, "face_selection", tuple(f.vertex_ids for f in resolved)
            )

    def report(self) -> "PatchworkReport":
        return chi_sigma_faces(self.triangulation, self.signs, self.face_selection)


@dataclass(frozen=True)
class FaceContribution:
    face: tuple[int, ...]  # vertex ids of the hull
    dim: int
    real: int
    sigma: int


@dataclass(frozen=True)
class PatchworkReport:
    mode: str  # "regular" | "combinatorial"
    per_face: tuple[FaceContribution, ...]
    total_real: int
    total_sigma: int
    equal: bool


def resolve_face_selection(p: LatticePolytope, selection) -> tuple[Face, ...]:
    """Normalize a face selection and check upward closure (P always included)."""
    fl = lattice.faces(p)
    top = max(fl, key=lambda f: f.dim)
    if selection == "all":
        return fl
    if selection == "torus":
        return (top,)
    by_ids = {f.vertex_ids: f for f in fl}
    chosen = set()
    for item in selection:
        ids = tuple(sorted(int(i) for i in item))
        if ids not in by_ids:
            raise ValueError(f"{ids} is not a face of the polytope")
        chosen.add(by_ids[ids])
    if top not in chosen:
        raise ValueError("face selection must contain the polytope itself")
    for f in chosen:
        for g in fl:
            if set(f.vertex_ids) <= set(g.vertex_ids) and g not in chosen:
                raise ValueError(
                    f"face selection is not upward-closed: {g.vertex_ids} missing"
                )
    return tuple(sorted(chosen, key=lambda f: (f.dim, f.vertex_ids)))


def chi_sigma_faces(t: Triangulation, signs, selection="all") -> PatchworkReport:
    """Per-face real/complex invariants over an upward-closed face selection.

    Mode is "regular" when stored heights certify regularity of the
    triangulation, "combinatorial" otherwise (no heights); non-regular heights
    raise.  The report never raises on an inequality: the caller decides what
    is asserted.
    """
    signs = _check_signs(t, signs)
    if not lattice.check_unimodular(t):
        raise ValueError("triangulation is not unimodular")
    p = lattice.validate_triangulation(t)
    if t.heights is not None:
        if not lattice.check_regular(t):
            raise ValueError("heights do not certify regularity")
        mode = "regular"
    else:
        mode = "combinatorial"
    rows = []
    total_real = 0
    total_sigma = 0
    for face in resolve_face_selection(p, selection):
        if face.dim == 0:
            rows.append(FaceContribution(face.vertex_ids, 0, 0, 0))
            continue
        sub_t, sub_signs = lattice.face_restrict(t, signs, face)
        r = real_euler_torus(sub_t, sub_signs)
        s = sigma_torus_hypersurface(lattice.face_polytope(p, face))
        rows.append(FaceContribution(face.vertex_ids, face.dim, r, s))
        total_real += r
        total_sigma += s
    return PatchworkReport(
        mode=mode,
        per_face=tuple(rows),
        total_real=total_real,
        total_sigma=total_sigma,
        equal=total_real == total_sigma,
    )

"""Rational hyperplane arrangements in affine or projective ambient space.

The intersection poset is built by exact rational row reduction, the Moebius
function by the usual bottom-up recursion, and the characteristic polynomial
as sum of mu(flat) * t^dim(flat).  Complements are valued in Z[L]:

* affine ambient:      complement class = chi_A(L),
* projective, k >= 1:  decone at a chosen hyperplane, then as above,
* projective, k = 0:   1 + L + ... + L^m.

The real Euler characteristic of the complement is chi_A(-1) (Zaslavsky's
region count, signed per open cell); an independent region-count recursion
``region_count`` is provided as a cross-check oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import _linalg
from .motivic import MotivicClass

AFFINE = "affine"
PROJECTIVE = "projective"


def _parse_entry(x) -> Fraction:
    if isinstance(x, bool):
        raise ValueError("boolean is not a rational coefficient")
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    raise ValueError(f"cannot interpret {x!r} as an exact rational")


def _normalize_row(row: Sequence, expected_len: int) -> tuple[int, ...]:
    vals = [_parse_entry(x) for x in row]
    if len(vals) != expected_len:
        raise ValueError(f"hyperplane row must have {expected_len} entries, got {len(vals)}")
    out = _linalg.normalize_int_row(vals)
    if all(v == 0 for v in out):
        raise ValueError("hyperplane row must be nonzero")
    return out


@dataclass(frozen=True)
class HyperplaneArrangement:
    """Ambient `affine`/`projective` of dimension `dim`, with normalized rows.

    Affine rows read c0 + c1 x1 + ... + cm xm = 0; projective rows are
    homogeneous of length m + 1.  Rows are coprime-integer normalized with
    positive leading entry, and duplicates are merged silently.
    """

    ambient: str
    dim: int
    hyperplanes: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.hyperplanes)


def affine_arrangement(dim: int, rows: Iterable[Sequence]) -> HyperplaneArrangement:
    if dim < 0:
        raise ValueError("ambient dimension must be nonnegative")
    seen: list[tuple[int, ...]] = []
    for row in rows:
        r = _normalize_row(row, dim + 1)
        if all(v == 0 for v in r[1:]):
            raise ValueError(f"affine row {r} has no solutions (constant equation)")
        if r not in seen:
            seen.append(r)
    return HyperplaneArrangement(AFFINE, dim, tuple(seen))


def projective_arrangement(dim: int, rows: Iterable[Sequence]) -> HyperplaneArrangement:
    if dim < 0:
        raise ValueError("ambient dimension must be nonnegative")
    seen: list[tuple[int, ...]] = []
    for row in rows:
        r = _normalize_row(row, dim + 1)
        if dim == 0:
            raise ValueError("hyperplanes of a projective point are empty; use k = 0")
        if r not in seen:
            seen.append(r)
    return HyperplaneArrangement(PROJECTIVE, dim, tuple(seen))


def arrangement_from_json(data: dict) -> HyperplaneArrangement:
    """Build an arrangement from the documented JSON shape."""
    try:
        ambient = data["ambient"]
        dim = data["dim"]
        rows = data["hyperplanes"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"arrangement JSON is missing field: {exc}") from exc
    if not isinstance(dim, int):
        raise ValueError("'dim' must be an integer")
    if ambient == AFFINE:
        return affine_arrangement(dim, rows)
    if ambient == PROJECTIVE:
        return projective_arrangement(dim, rows)
    raise ValueError(f"unknown ambient {ambient!r}")


# --- intersection poset ------------------------------------------------------

FlatKey = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class Flat:
    """A nonempty intersection of hyperplanes, as a canonical linear system.

    ``equations`` is the reduced row echelon form of the defining system
    (affine: rows (a1..am | b) meaning a.x = b; projective: homogeneous rows).
    ``hyperplanes`` are the indices of all arrangement hyperplanes containing
    the flat, and ``dim`` its (projective) dimension.
    """

    equations: FlatKey
    dim: int
    hyperplanes: frozenset[int]
    mu: int


@dataclass(frozen=True)
class IntersectionPoset:
    arrangement: HyperplaneArrangement
    flats: tuple[Flat, ...]  # sorted by decreasing dim, ambient first

    def characteristic_polynomial(self) -> tuple[int, ...]:
        coeffs = [0] * (self.arrangement.dim + 1)
        for f in self.flats:
            coeffs[f.dim] += f.mu
        return tuple(coeffs)


def _hyperplane_system(arr: HyperplaneArrangement, idx: int) -> list[list[Fraction]]:
    row = arr.hyperplanes[idx]
    if arr.ambient == AFFINE:
        # store as (a1..am | b): a.x = b with b = -c0
        return [[Fraction(c) for c in row[1:]] + [Fraction(-row[0])]]
    return [[Fraction(c) for c in row]]


def _canonical_system(rows: list[list[Fraction]]) -> FlatKey:
    reduced, _ = _linalg.rref(rows)
    return tuple(tuple(r) for r in sorted(reduced))


def _system_consistent(arr: HyperplaneArrangement, key: FlatKey) -> tuple[bool, int]:
    """(nonempty?, dimension) for a canonical system."""
    m = arr.dim
    nrows = len(key)
    if arr.ambient == AFFINE:
        for row in key:
            if all(x == 0 for x in row[:-1]) and row[-1] != 0:
                return False, -1
        pivots = _linalg.rank([list(r)[:-1] for r in key]) if key else 0
        if pivots != nrows:
            # an inconsistent row was reduced away only if 0 = nonzero absent
            return False, -1
        return True, m - nrows
    # projective: nonempty iff kernel has dimension >= 1
    if nrows > m:
        return False, -1
    return True, m - nrows


def _flat_contains(outer: FlatKey, inner: FlatKey) -> bool:
    """outer flat contains inner flat (as subspaces): outer's equations hold on inner."""
    inner_rows = [list(r) for r in inner]
    n_in = len(inner_rows)
    rows = inner_rows + [list(r) for r in outer]
    return _linalg.rank(rows) == n_in


def intersection_poset(arr: HyperplaneArrangement) -> IntersectionPoset:
    """All nonempty intersections of subfamilies, with Moebius values."""
    ambient_key: FlatKey = ()
    info: dict[FlatKey, int] = {ambient_key: arr.dim if arr.ambient == AFFINE else arr.dim}
    queue = [ambient_key]
    while queue:
        key = queue.pop()
        base_rows = [list(r) for r in key]
        for j in range(arr.k):
            rows = base_rows + _hyperplane_system(arr, j)
            new_key = _canonical_system(rows)
            if new_key in info:
                continue
            ok, dim = _system_consistent(arr, new_key)
            if not ok:
                continue
            info[new_key] = dim
            queue.append(new_key)

    keys = sorted(info, key=lambda k: (-info[k], k))
    mu: dict[FlatKey, int] = {}
    for key in keys:
        if key == ambient_key:
            mu[key] = 1
            continue
        # flats strictly containing this one have strictly larger dimension
        acc = 0
        for other in keys:
            if info[other] > info[key] and _flat_contains(other, key):
                acc += mu[other]
        mu[key] = -acc

    flats = []
    for key in keys:
        containing = frozenset(
            j
            for j in range(arr.k)
            if _flat_contains(_canonical_system(_hyperplane_system(arr, j)), key)
        )
        flats.append(Flat(equations=key, dim=info[key], hyperplanes=containing, mu=mu[key]))
    return IntersectionPoset(arr, tuple(flats))


def characteristic_polynomial(arr: HyperplaneArrangement) -> tuple[int, ...]:
    """chi_A(t) coefficients, ascending in t."""
    return intersection_poset(arr).characteristic_polynomial()


# --- decone and complement invariants ---------------------------------------


def decone(arr: HyperplaneArrangement, index: int = 0) -> HyperplaneArrangement:
    """Affine arrangement seen in the chart where hyperplane `index` is at infinity."""
    if arr.ambient != PROJECTIVE:
        raise ValueError("decone applies to projective arrangements")
    if not 0 <= index < arr.k:
        raise ValueError(f"hyperplane index {index} out of range")
    m = arr.dim
    h0 = [Fraction(c) for c in arr.hyperplanes[index]]
    basis = [h0]
    for i in range(m + 1):
        e = [Fraction(1 if j == i else 0) for j in range(m + 1)]
        if _linalg.rank(basis + [e]) > len(basis):
            basis.append(e)
        if len(basis) == m + 1:
            break
    b_inv = _linalg.invert(basis)
    rows = []
    for j, h in enumerate(arr.hyperplanes):
        if j == index:
            continue
        g = [
            sum(Fraction(h[i]) * b_inv[i][c] for i in range(m + 1))
            for c in range(m + 1)
        ]
        rows.append(g)  # g0 + g1 u1 + ... + gm um = 0 in the chart u0 = 1
    return affine_arrangement(m, rows)


def complement_class(arr: HyperplaneArrangement) -> MotivicClass:
    """Class of the complement of the arrangement in Z[L]."""
    if arr.ambient == AFFINE:
        return MotivicClass(characteristic_polynomial(arr))
    if arr.k == 0:
        return MotivicClass(tuple([1] * (arr.dim + 1)))
    return MotivicClass(characteristic_polynomial(decone(arr, 0)))


def _eval_poly(coeffs: tuple[int, ...], t: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def real_complement_euler(arr: HyperplaneArrangement) -> int:
    """chi^c of the real complement."""
    if arr.ambient == AFFINE:
        return _eval_poly(characteristic_polynomial(arr), -1)
    if arr.k == 0:
        return 1 if arr.dim % 2 == 0 else 0
    return _eval_poly(characteristic_polynomial(decone(arr, 0)), -1)


# --- deletion and restriction ------------------------------------------------


def deletion_restriction(
    arr: HyperplaneArrangement, index: int
) -> tuple[HyperplaneArrangement, HyperplaneArrangement]:
    """(arrangement minus the hyperplane, traces of the others on it)."""
    if not 0 <= index < arr.k:
        raise ValueError(f"hyperplane index {index} out of range")
    minus_rows = [r for j, r in enumerate(arr.hyperplanes) if j != index]
    m = arr.dim

    if arr.ambient == AFFINE:
        minus = HyperplaneArrangement(AFFINE, m, tuple(minus_rows))
        row = arr.hyperplanes[index]
        c0 = Fraction(row[0])
        cs = [Fraction(c) for c in row[1:]]
        pivot = next(i for i, c in enumerate(cs) if c != 0)
        point = [Fraction(0)] * m
        point[pivot] = -c0 / cs[pivot]
        directions = []
        for i in range(m):
            if i == pivot:
                continue
            v = [Fraction(0)] * m
            v[i] = Fraction(1)
            v[pivot] = -cs[i] / cs[pivot]
            directions.append(v)
        traces = []
        for j, other in enumerate(arr.hyperplanes):
            if j == index:
                continue
            d0 = Fraction(other[0])
            ds = [Fraction(c) for c in other[1:]]
            const = d0 + sum(d * p for d, p in zip(ds, point))
            coeffs = [sum(d * v[i] for i, d in enumerate(ds)) for v in directions]
            if all(c == 0 for c in coeffs):
                continue  # parallel to the hyperplane: empty trace
            traces.append([const] + coeffs)
        return minus, affine_arrangement(m - 1, traces)

    minus = HyperplaneArrangement(PROJECTIVE, m, tuple(minus_rows))
    h0 = [[Fraction(c) for c in arr.hyperplanes[index]]]
    kernel = _linalg.nullspace(h0, m + 1)  # m independent directions in the hyperplane
    traces = []
    if m - 1 >= 1:
        for j, other in enumerate(arr.hyperplanes):
            if j == index:
                continue
            row = [
                sum(Fraction(other[i]) * w[i] for i in range(m + 1)) for w in kernel
            ]
            traces.append(row)
    # m - 1 == 0: all traces are empty points of a projective point; drop them
    return minus, projective_arrangement(m - 1, traces)


def region_count(arr: HyperplaneArrangement) -> int:
    """Number of open regions of a real affine arrangement.

    Independent deletion-restriction recursion r(A) = r(A - H) + r(A|_H);
    used to cross-check (-1)^m chi_A(-1).
    """
    if arr.ambient != AFFINE:
        raise ValueError("region counting is defined for affine arrangements")
    if arr.k == 0:
        return 1
    minus, restricted = deletion_restriction(arr, arr.k - 1)
    return region_count(minus) + region_count(restricted)

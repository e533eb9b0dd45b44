"""Smooth fans: validation, orbit-decomposition classes and real Euler numbers.

A fan is an abstract list of cones, each given by its primitive integer ray
generators (the zero cone is the empty tuple).  The toric variety itself is
never constructed; the orbit-cone correspondence gives

    class  = sum over cones of (L - 1)^(n - dim cone),
    chi^c  = sum over cones of (-2)^(n - dim cone)

for the complex and real points respectively.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import _linalg
from .motivic import MotivicClass, ONE, LEFSCHETZ

Cone = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Fan:
    dim: int
    cones: tuple[Cone, ...]

    def __post_init__(self) -> None:
        canon = []
        for cone in self.cones:
            rays = tuple(sorted(tuple(int(x) for x in ray) for ray in cone))
            for ray in rays:
                if len(ray) != self.dim:
                    raise ValueError(f"ray {ray} does not have length {self.dim}")
            canon.append(rays)
        if len(set(canon)) != len(canon):
            raise ValueError("duplicate cone in fan")
        object.__setattr__(self, "cones", tuple(canon))


def fan_from_json(data: dict) -> Fan:
    try:
        dim = data["dim"]
        cones = data["cones"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"fan JSON is missing field: {exc}") from exc
    if not isinstance(dim, int):
        raise ValueError("'dim' must be an integer")
    return Fan(dim, tuple(tuple(tuple(r) for r in cone) for cone in cones))


def _cone_is_unimodular(cone: Cone, dim: int) -> bool:
    k = len(cone)
    if k == 0:
        return True
    rows = [[ray[i] for i in range(dim)] for ray in cone]
    if _linalg.rank([[Fraction(x) for x in r] for r in rows]) != k:
        return False
    g = 0
    for cols in itertools.combinations(range(dim), k):
        minor = _linalg.det_int([[rows[i][c] for c in cols] for i in range(k)])
        g = gcd(g, abs(minor))
    return g == 1


@dataclass(frozen=True)
class FanReport:
    smooth: bool
    bad_cones: tuple[Cone, ...]
    face_closed: bool
    missing_faces: tuple[Cone, ...]
    complete: bool | None  # None means "unchecked"

    @property
    def valid(self) -> bool:
        return self.smooth and self.face_closed


def validate_fan(fan: Fan) -> FanReport:
    """Smoothness per cone, closure under faces, completeness when decidable."""
    bad = []
    for cone in fan.cones:
        primitive = all(
            ray == _linalg.primitive_vector(list(ray)) and any(ray) for ray in cone
        )
        if not primitive or not _cone_is_unimodular(cone, fan.dim):
            bad.append(cone)
    cone_set = set(fan.cones)
    missing = set()
    for cone in fan.cones:
        for r in range(len(cone)):
            for sub in itertools.combinations(cone, r):
                if tuple(sub) not in cone_set:
                    missing.add(tuple(sub))

    complete: bool | None = None
    if not bad and not missing and fan.dim <= 3:
        complete = _complete_by_facet_pairing(fan)
    return FanReport(
        smooth=not bad,
        bad_cones=tuple(bad),
        face_closed=not missing,
        missing_faces=tuple(sorted(missing)),
        complete=complete,
    )


def _complete_by_facet_pairing(fan: Fan) -> bool:
    """A pure full-dimensional fan with perfectly paired facets covers R^n."""
    n = fan.dim
    maximal = [c for c in fan.cones if len(c) == n]
    if not maximal:
        return n == 0
    for cone in fan.cones:
        if len(cone) < n and not any(set(cone) < set(m) for m in maximal):
            return False  # a non-maximal cone not on the boundary of a big one
    facet_count: dict[tuple[tuple[int, ...], ...], int] = {}
    for m in maximal:
        for sub in itertools.combinations(m, n - 1):
            facet_count[tuple(sorted(sub))] = facet_count.get(tuple(sorted(sub)), 0) + 1
    if any(v != 2 for v in facet_count.values()):
        return False
    # facet-connectivity of the maximal cones
    adj = {i: set() for i in range(len(maximal))}
    for i, j in itertools.combinations(range(len(maximal)), 2):
        if len(set(maximal[i]) & set(maximal[j])) == n - 1:
            adj[i].add(j)
            adj[j].add(i)
    seen = {0}
    stack = [0]
    while stack:
        cur = stack.pop()
        for nxt in adj[cur]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen) == len(maximal)


def _require_valid(fan: Fan) -> None:
    report = validate_fan(fan)
    if not report.valid:
        raise ValueError(
            f"invalid fan: bad cones {report.bad_cones}, missing faces {report.missing_faces}"
        )


def toric_class(fan: Fan) -> MotivicClass:
    """Orbit decomposition: sum over cones of (L - 1)^(n - dim cone)."""
    _require_valid(fan)
    torus = LEFSCHETZ - ONE
    total = MotivicClass(())
    for cone in fan.cones:
        total = total + torus ** (fan.dim - len(cone))
    return total


def toric_real_euler(fan: Fan) -> int:
    """Real orbit decomposition: sum over cones of (-2)^(n - dim cone)."""
    _require_valid(fan)
    return sum((-2) ** (fan.dim - len(cone)) for cone in fan.cones)


def subfan_restrict(fan: Fan, cone_indices) -> Fan:
    """The subfan spanned by the selected cones; must be closed under faces."""
    selected = {fan.cones[i] for i in cone_indices}
    for cone in selected:
        for r in range(len(cone)):
            for sub in itertools.combinations(cone, r):
                if tuple(sub) not in selected:
                    raise ValueError(
                        f"selection is not face-closed: face {tuple(sub)} of {cone} missing"
                    )
    return Fan(fan.dim, tuple(sorted(selected)))


def projective_fan(n: int) -> Fan:
    """The complete smooth fan of n-dimensional projective space."""
    if n < 1:
        raise ValueError("need n >= 1")
    rays = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones: list[Cone] = []
    for r in range(n + 1):
        for sub in itertools.combinations(rays, r):
            cones.append(tuple(sorted(sub)))
    return Fan(n, tuple(sorted(set(cones))))

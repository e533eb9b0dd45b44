"""Combinatorial central fiber of a totally real semi-stable degeneration.

A `DualComplex` records, for each nonempty subset I of the component label
set, the invariants of the open stratum (intersection of the components in I
minus all others).  The two gluing formulas

    sigma(general fiber)  = sum over I of 2^(|I|-1) * sigma(stratum),
    chi^c(real fiber)     = sum over I of 2^(|I|-1) * chi^c(real stratum)

and the nearby-fiber class  sum over I of [stratum] * (1 - L)^(|I|-1)  are
evaluated exactly.  Strata may be given at three fidelity levels: a class in
Z[L], a chi_y polynomial, or a reference to a hyperplane-arrangement
complement (from which both the class and the real Euler number are derived).
"""

from __future__ import annotations

from dataclasses import dataclass

from .arrangements import (
    HyperplaneArrangement,
    complement_class,
    real_complement_euler,
)
from .motivic import ChiYPolynomial, MotivicClass, ONE, LEFSCHETZ


@dataclass(frozen=True)
class StratumRecord:
    """Stratum payload; exactly one complex source, real Euler optional."""

    motivic: MotivicClass | None = None
    chi_y: ChiYPolynomial | None = None
    arrangement: HyperplaneArrangement | None = None
    real_euler: int | None = None

    def __post_init__(self) -> None:
        sources = [
            self.motivic is not None,
            self.chi_y is not None,
            self.arrangement is not None,
        ]
        if sum(sources) != 1:
            raise ValueError(
                "stratum needs exactly one complex payload "
                "(class, chi_y polynomial, or arrangement reference)"
            )
        if self.arrangement is not None and self.real_euler is not None:
            raise ValueError(
                "contradictory payload: real Euler number of an arrangement "
                "complement is derived, not supplied"
            )

    def resolved_class(self) -> MotivicClass | None:
        if self.motivic is not None:
            return self.motivic
        if self.arrangement is not None:
            return complement_class(self.arrangement)
        return None

    def resolved_chi_y(self) -> ChiYPolynomial:
        if self.chi_y is not None:
            return self.chi_y
        return self.resolved_class().chi_y()

    def resolved_real_euler(self) -> int | None:
        if self.arrangement is not None:
            return real_complement_euler(self.arrangement)
        return self.real_euler


@dataclass(frozen=True)
class DualComplex:
    components: tuple[str, ...]
    strata: tuple[tuple[tuple[str, ...], StratumRecord], ...]

    def __post_init__(self) -> None:
        comps = tuple(str(c) for c in self.components)
        if len(set(comps)) != len(comps):
            raise ValueError("duplicate component labels")
        object.__setattr__(self, "components", comps)
        canon = tuple(
            sorted(
                ((tuple(sorted(labels)), rec) for labels, rec in self.strata),
                key=lambda item: item[0],
            )
        )
        object.__setattr__(self, "strata", canon)
        comp_set = set(comps)
        seen = set()
        for labels, _rec in canon:
            if not labels:
                raise ValueError("stratum index set must be nonempty")
            if len(set(labels)) != len(labels):
                raise ValueError(f"repeated component in stratum key {labels}")
            unknown = [l for l in labels if l not in comp_set]
            if unknown:
                raise ValueError(f"unknown component(s) {unknown} in stratum key")
            if labels in seen:
                raise ValueError(f"duplicate stratum key {labels}")
            seen.add(labels)


@dataclass(frozen=True)
class DualComplexReport:
    ok: bool
    errors: tuple[str, ...]
    class_fidelity: bool  # every stratum has a class in Z[L]
    strata_missing_real: tuple[tuple[str, ...], ...]


def validate(dc: DualComplex) -> DualComplexReport:
    """Structural report; construction already rejects malformed complexes."""
    missing_real = tuple(
        labels for labels, rec in dc.strata if rec.resolved_real_euler() is None
    )
    class_fidelity = all(rec.resolved_class() is not None for _l, rec in dc.strata)
    return DualComplexReport(
        ok=True, errors=(), class_fidelity=class_fidelity,
        strata_missing_real=missing_real,
    )


def motivic_nearby_fiber(dc: DualComplex) -> MotivicClass:
    """sum over strata of [stratum] * (1 - L)^(|I| - 1)."""
    total = MotivicClass(())
    one_minus_l = ONE - LEFSCHETZ
    for labels, rec in dc.strata:
        cls = rec.resolved_class()
        if cls is None:
            raise ValueError(
                f"stratum {labels} is given only as a chi_y polynomial; "
                "the nearby-fiber class needs classes in Z[L]"
            )
        total = total + cls * one_minus_l ** (len(labels) - 1)
    return total


def chi_y_nearby(dc: DualComplex) -> ChiYPolynomial:
    """sum over strata of (1 + y)^(|I| - 1) * chi_y(stratum)."""
    total = ChiYPolynomial(())
    one_plus_y = ChiYPolynomial((1, 1))
    for labels, rec in dc.strata:
        total = total + one_plus_y ** (len(labels) - 1) * rec.resolved_chi_y()
    return total


def sigma_glued(dc: DualComplex) -> int:
    """sum over strata of 2^(|I| - 1) * sigma(stratum)."""
    return sum(
        2 ** (len(labels) - 1) * rec.resolved_chi_y().at(1) for labels, rec in dc.strata
    )


def real_euler_glued(dc: DualComplex) -> int:
    """sum over strata of 2^(|I| - 1) * chi^c(real stratum)."""
    total = 0
    for labels, rec in dc.strata:
        re = rec.resolved_real_euler()
        if re is None:
            raise ValueError(f"stratum {labels} has no real Euler number")
        total += 2 ** (len(labels) - 1) * re
    return total


@dataclass(frozen=True)
class StratumVerdict:
    labels: tuple[str, ...]
    sigma: int
    real_euler: int | None
    equal: bool | None


@dataclass(frozen=True)
class GluingReport:
    sigma_glued: int
    real_euler_glued: int | None
    per_stratum: tuple[StratumVerdict, ...]
    all_strata_equal: bool | None
    equal: bool | None
    euler_complex_depth_one: int  # chi_y_nearby at y = -1; only |I| = 1 survives


def chi_sigma_report(dc: DualComplex) -> GluingReport:
    """Glued invariants, per-stratum chi = sigma flags and the global verdict."""
    rows = []
    have_real = True
    for labels, rec in dc.strata:
        s = rec.resolved_chi_y().at(1)
        re = rec.resolved_real_euler()
        if re is None:
            have_real = False
        rows.append(
            StratumVerdict(
                labels=labels,
                sigma=s,
                real_euler=re,
                equal=None if re is None else s == re,
            )
        )
    sg = sigma_glued(dc)
    reg = real_euler_glued(dc) if have_real else None
    all_eq = None if not have_real else all(r.equal for r in rows)
    return GluingReport(
        sigma_glued=sg,
        real_euler_glued=reg,
        per_stratum=tuple(rows),
        all_strata_equal=all_eq,
        equal=None if reg is None else sg == reg,
        euler_complex_depth_one=chi_y_nearby(dc).at(-1),
    )

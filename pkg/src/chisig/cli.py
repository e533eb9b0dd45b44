"""Command-line front end.

Subcommands: ``arr``, ``degen``, ``patch``, ``toric``, ``selftest``.  With
``--json`` the report is a single canonically ordered JSON document and
repeated runs are byte-identical (no timestamps).  Exit code 0 means every
asserted verdict passed; 1 means an asserted equality failed; 2 means the
input could not be parsed or validated.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time
from fractions import Fraction

from . import arrangements, degeneration, lattice, patchwork, toric
from .motivic import (
    ChiYPolynomial,
    LEFSCHETZ,
    MotivicClass,
    ONE,
    RealMotivicDatum,
    check_chi_sigma,
)

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _read_json(path: str) -> tuple[dict, str]:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    digest = hashlib.sha256(raw).hexdigest()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: top-level JSON value must be an object")
    return data, digest


def _emit(report: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        print(json.dumps(report, sort_keys=True, separators=(",", ":")))
    else:
        for line in lines:
            print(line)


def _threads_env() -> int:
    raw = os.environ.get("CHISIG_THREADS", "0")
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputError(f"CHISIG_THREADS must be an integer, got {raw!r}") from exc
    if value < 0:
        raise InputError("CHISIG_THREADS must be >= 0")
    return value


# --- arr ---------------------------------------------------------------------


def cmd_arr(args) -> int:
    data, digest = _read_json(args.file)
    try:
        arr = arrangements.arrangement_from_json(data)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"invalid arrangement: {exc}") from exc
    chi = arrangements.characteristic_polynomial(arr)
    cls = arrangements.complement_class(arr)
    chi_y = cls.chi_y()
    sigma = cls.signature()
    real = arrangements.real_complement_euler(arr)
    equal = sigma == real
    report = {
        "command": "arr",
        "input_sha256": digest,
        "ambient": arr.ambient,
        "dim": arr.dim,
        "hyperplane_count": arr.k,
        "char_poly": list(chi),
        "complement_class": {"lefschetz_poly": list(cls.coeffs)},
        "chi_y": list(chi_y.coeffs),
        "sigma": sigma,
        "real_euler": real,
        "chi_eq_sigma": equal,
    }
    lines = [
        f"arrangement: {arr.ambient}({arr.dim}), {arr.k} hyperplanes",
        f"char poly (ascending): {list(chi)}",
        f"complement class: {cls}",
        f"chi_y: {chi_y}",
        f"sigma = {sigma}, real chi^c = {real}, chi = sigma: {equal}",
    ]
    if args.verbose:
        poset = arrangements.intersection_poset(arr)
        lines.append(f"flats: {len(poset.flats)}")
        for f in poset.flats:
            lines.append(f"  dim {f.dim}  mu {f.mu}  hyperplanes {sorted(f.hyperplanes)}")
    _emit(report, args.json, lines)
    return EXIT_OK if equal else EXIT_VERDICT


# --- degen -------------------------------------------------------------------


def _stratum_from_json(entry: dict) -> tuple[tuple[str, ...], degeneration.StratumRecord]:
    if "I" not in entry:
        raise InputError("stratum entry is missing 'I'")
    labels = tuple(str(x) for x in entry["I"])
    complex_payload = entry.get("complex")
    if not isinstance(complex_payload, dict) or len(complex_payload) != 1:
        raise InputError(
            f"stratum {labels}: 'complex' must hold exactly one of "
            "'lefschetz_poly', 'chi_y', 'arrangement'"
        )
    kind, value = next(iter(complex_payload.items()))
    real = entry.get("real_euler")
    if real is not None and not isinstance(real, int):
        raise InputError(f"stratum {labels}: real_euler must be an integer")
    try:
        if kind == "lefschetz_poly":
            rec = degeneration.StratumRecord(
                motivic=MotivicClass(tuple(value)), real_euler=real
            )
        elif kind == "chi_y":
            rec = degeneration.StratumRecord(
                chi_y=ChiYPolynomial(tuple(value)), real_euler=real
            )
        elif kind == "arrangement":
            rec = degeneration.StratumRecord(
                arrangement=arrangements.arrangement_from_json(value), real_euler=real
            )
        else:
            raise InputError(f"stratum {labels}: unknown complex payload {kind!r}")
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"stratum {labels}: {exc}") from exc
    return labels, rec


def cmd_degen(args) -> int:
    data, digest = _read_json(args.file)
    try:
        components = tuple(str(c) for c in data["components"])
        strata = tuple(_stratum_from_json(e) for e in data["strata"])
        dc = degeneration.DualComplex(components, strata)
    except InputError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"invalid dual complex: {exc}") from exc
    info = degeneration.validate(dc)
    rep = degeneration.chi_sigma_report(dc)
    psi = None
    if info.class_fidelity:
        psi = degeneration.motivic_nearby_fiber(dc)
    report = {
        "command": "degen",
        "input_sha256": digest,
        "components": list(dc.components),
        "psi": None if psi is None else {"lefschetz_poly": list(psi.coeffs)},
        "chi_y_nearby": list(degeneration.chi_y_nearby(dc).coeffs),
        "sigma_glued": rep.sigma_glued,
        "real_euler_glued": rep.real_euler_glued,
        "euler_complex_depth_one": rep.euler_complex_depth_one,
        "per_stratum": [
            {
                "I": list(r.labels),
                "sigma": r.sigma,
                "real_euler": r.real_euler,
                "chi_eq_sigma": r.equal,
            }
            for r in rep.per_stratum
        ],
        "all_strata_chi_sigma": rep.all_strata_equal,
        "equal": rep.equal,
    }
    lines = [
        f"dual complex with components {list(dc.components)}",
        f"psi (nearby fiber): {psi if psi is not None else 'unavailable (chi_y-only strata)'}",
        f"chi_y of nearby fiber: {degeneration.chi_y_nearby(dc)}",
        f"sigma glued = {rep.sigma_glued}",
        f"real chi^c glued = "
        + ("unavailable (missing real data)" if rep.real_euler_glued is None else str(rep.real_euler_glued)),
        f"verdict: " + ("unavailable" if rep.equal is None else ("equal" if rep.equal else "NOT equal")),
    ]
    if args.verbose:
        for r in rep.per_stratum:
            lines.append(
                f"  stratum {list(r.labels)}: sigma {r.sigma}, real {r.real_euler}, "
                f"chi=sigma {r.equal}"
            )
    _emit(report, args.json, lines)
    # Prop. 2.1 asserts equality only when every stratum satisfies chi = sigma.
    if rep.all_strata_equal and rep.equal is False:
        return EXIT_VERDICT
    return EXIT_OK


# --- patch -------------------------------------------------------------------


def _triangulation_from_json(data: dict) -> tuple[lattice.Triangulation, tuple[int, ...]]:
    try:
        dim = data["dim"]
        points = tuple(tuple(int(x) for x in pt) for pt in data["points"])
        simplices = tuple(tuple(int(i) for i in s) for s in data["simplices"])
        signs = tuple(int(s) for s in data["signs"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"invalid patchwork input: {exc}") from exc
    heights = None
    if data.get("heights") is not None:
        try:
            heights = tuple(Fraction(str(h)) for h in data["heights"])
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"invalid heights: {exc}") from exc
    try:
        t = lattice.Triangulation(dim, points, simplices, heights)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return t, signs


def cmd_patch(args) -> int:
    data, digest = _read_json(args.file)
    t, signs = _triangulation_from_json(data)
    selection = data.get("face_selection", "all")
    if args.faces is not None:
        if args.faces in ("all", "torus"):
            selection = args.faces
        else:
            try:
                selection = json.loads(args.faces)
            except json.JSONDecodeError as exc:
                raise InputError(f"--faces must be all, torus or a JSON list: {exc}") from exc
    try:
        if not lattice.check_unimodular(t):
            raise InputError("triangulation is not unimodular")
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    try:
        lattice.validate_triangulation(t)
    except ValueError as exc:
        raise InputError(str(exc)) from exc

    regular = None
    if t.heights is not None:
        regular = lattice.check_regular(t)
        if not regular and not args.allow_nonregular:
            raise InputError(
                "heights do not certify a regular triangulation "
                "(rerun with --allow-nonregular for combinatorial mode)"
            )
    working = t
    if t.heights is not None and not regular:
        # combinatorial mode was requested explicitly; drop the failed certificate
        working = lattice.Triangulation(t.dim, t.points, t.simplices, None)
    try:
        rep = patchwork.chi_sigma_faces(working, signs, selection)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report = {
        "command": "patch",
        "input_sha256": digest,
        "mode": rep.mode,
        "per_face": [
            {"face": list(r.face), "dim": r.dim, "real": r.real, "sigma": r.sigma}
            for r in rep.per_face
        ],
        "total_real": rep.total_real,
        "total_sigma": rep.total_sigma,
        "equal": rep.equal,
    }
    lines = [
        f"mode: {rep.mode}"
        + ("" if rep.mode == "regular" else "  (not covered by the regular-case theorem; verdict not asserted)"),
        f"total real chi^c = {rep.total_real}, total sigma = {rep.total_sigma}, "
        f"equal: {rep.equal}",
    ]
    if args.verbose:
        for r in rep.per_face:
            lines.append(f"  face {list(r.face)} dim {r.dim}: real {r.real}, sigma {r.sigma}")
    _emit(report, args.json, lines)
    if rep.mode == "regular" and not rep.equal:
        return EXIT_VERDICT
    return EXIT_OK


# --- toric -------------------------------------------------------------------


def cmd_toric(args) -> int:
    data, digest = _read_json(args.file)
    try:
        fan = toric.fan_from_json(data)
    except (ValueError, TypeError) as exc:
        raise InputError(f"invalid fan: {exc}") from exc
    rep = toric.validate_fan(fan)
    if not rep.valid:
        raise InputError(
            f"invalid fan: non-unimodular or non-primitive cones {list(rep.bad_cones)}, "
            f"missing faces {list(rep.missing_faces)}"
        )
    cls = toric.toric_class(fan)
    sigma = cls.signature()
    real = toric.toric_real_euler(fan)
    equal = sigma == real
    complete = rep.complete if rep.complete is not None else "unchecked"
    report = {
        "command": "toric",
        "input_sha256": digest,
        "dim": fan.dim,
        "cones": len(fan.cones),
        "smooth": rep.smooth,
        "complete": complete,
        "class": {"lefschetz_poly": list(cls.coeffs)},
        "sigma": sigma,
        "real_euler": real,
        "equal": equal,
    }
    lines = [
        f"fan in dimension {fan.dim} with {len(fan.cones)} cones",
        f"smooth: {rep.smooth}, complete: {complete}",
        f"class: {cls}",
        f"sigma = {sigma}, real chi^c = {real}, equal: {equal}",
    ]
    _emit(report, args.json, lines)
    return EXIT_OK if equal else EXIT_VERDICT


# --- selftest ----------------------------------------------------------------


def _selftest_example_table() -> dict:
    cases = 0
    for n in range(9):
        datum = RealMotivicDatum.from_class(LEFSCHETZ ** n, (-1) ** n)
        assert check_chi_sigma(datum).equal
        cases += 1
    torus = LEFSCHETZ - ONE
    for n in range(7):
        datum = RealMotivicDatum.from_class(torus ** n, (-2) ** n)
        assert check_chi_sigma(datum).equal
        cases += 1
    return {"name": "affine-and-torus-table", "cases": cases, "passed": True}


def _random_affine_arrangement(rng: random.Random):
    dim = rng.randint(1, 3)
    k = rng.randint(0, 4)
    rows = []
    for _ in range(k):
        while True:
            row = [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(dim + 1)]
            if any(c != 0 for c in row[1:]):
                rows.append(row)
                break
    return arrangements.affine_arrangement(dim, rows)


def _selftest_arrangements(rng: random.Random) -> dict:
    cases = 0
    for _ in range(40):
        arr = _random_affine_arrangement(rng)
        cls = arrangements.complement_class(arr)
        assert arrangements.real_complement_euler(arr) == cls.signature()
        regions = arrangements.region_count(arr)
        chi = arrangements.characteristic_polynomial(arr)
        val = sum(c * (-1) ** i for i, c in enumerate(chi))
        assert regions == (-1) ** arr.dim * val
        cases += 1
    return {"name": "arrangement-chi-sigma-and-regions", "cases": cases, "passed": True}


def _selftest_degeneration() -> dict:
    chain = degeneration.DualComplex(
        ("E1", "E2"),
        (
            (("E1",), degeneration.StratumRecord(motivic=LEFSCHETZ, real_euler=-1)),
            (("E2",), degeneration.StratumRecord(motivic=LEFSCHETZ, real_euler=-1)),
            (("E1", "E2"), degeneration.StratumRecord(motivic=ONE, real_euler=1)),
        ),
    )
    rep = degeneration.chi_sigma_report(chain)
    assert rep.sigma_glued == 0 and rep.real_euler_glued == 0 and rep.equal
    torus = LEFSCHETZ - ONE
    triangle = degeneration.DualComplex(
        ("E1", "E2", "E3"),
        tuple(((c,), degeneration.StratumRecord(motivic=torus, real_euler=-2)) for c in ("E1", "E2", "E3"))
        + tuple(
            (pair, degeneration.StratumRecord(motivic=ONE, real_euler=1))
            for pair in (("E1", "E2"), ("E1", "E3"), ("E2", "E3"))
        ),
    )
    rep = degeneration.chi_sigma_report(triangle)
    assert rep.sigma_glued == 0 and rep.real_euler_glued == 0 and rep.equal
    psi = degeneration.motivic_nearby_fiber(triangle)
    assert psi.chi_y() == degeneration.chi_y_nearby(triangle)
    return {"name": "gluing-fixtures", "cases": 2, "passed": True}


def _selftest_patchwork(rng: random.Random) -> dict:
    cases = 0
    for k in range(1, 5):
        t = lattice.segment_triangulation(k)
        for bits in range(2 ** (k + 1)):
            signs = tuple(1 if bits >> i & 1 else -1 for i in range(k + 1))
            rep = patchwork.chi_sigma_faces(t, signs, "all")
            assert rep.mode == "regular" and rep.equal and rep.total_real == k
            cases += 1
    for d in (1, 2, 3):
        t = lattice.alcove_triangulation(2, d)
        for _ in range(5):
            signs = tuple(rng.choice((1, -1)) for _ in t.points)
            full = patchwork.chi_sigma_faces(t, signs, "all")
            part = patchwork.chi_sigma_faces(t, signs, "torus")
            assert full.equal and full.total_real == 0
            assert part.equal and part.total_real == -3 * d
            cases += 1
    return {"name": "patchwork-corpus", "cases": cases, "passed": True}


def _selftest_negative_fixtures() -> dict:
    torus = LEFSCHETZ - ONE
    twisted = RealMotivicDatum.from_class(torus, 0)  # real structure z -> 1/conj(z)
    res = check_chi_sigma(twisted)
    assert res.sigma == -2 and res.real_euler == 0 and not res.equal
    ellipsoid = RealMotivicDatum.from_class((ONE + LEFSCHETZ) ** 2, 2)
    res = check_chi_sigma(ellipsoid)
    assert res.sigma == 0 and res.real_euler == 2 and not res.equal
    return {"name": "twisted-counterexamples", "cases": 2, "passed": True}


def _selftest_toric() -> dict:
    cases = 0
    for n in (1, 2, 3):
        fan = toric.projective_fan(n)
        cls = toric.toric_class(fan)
        assert cls.signature() == toric.toric_real_euler(fan)
        cases += 1
    return {"name": "toric-table", "cases": cases, "passed": True}


def cmd_selftest(args) -> int:
    rng = random.Random(20250810)
    suites = []
    ok = True
    started = time.perf_counter()
    for runner in (
        _selftest_example_table,
        lambda: _selftest_arrangements(rng),
        _selftest_degeneration,
        lambda: _selftest_patchwork(rng),
        _selftest_negative_fixtures,
        _selftest_toric,
    ):
        try:
            suites.append(runner())
        except AssertionError as exc:
            name = getattr(runner, "__name__", "suite")
            suites.append({"name": name, "cases": 0, "passed": False})
            ok = False
    report = {"command": "selftest", "suites": suites, "all_passed": ok}
    lines = [
        f"{s['name']}: {'pass' if s['passed'] else 'FAIL'} ({s['cases']} cases)"
        for s in suites
    ]
    lines.append(f"all suites passed: {ok}")
    if args.verbose and not args.json:
        lines.append(f"elapsed: {time.perf_counter() - started:.2f}s")
    _emit(report, args.json, lines)
    return EXIT_OK if ok else EXIT_VERDICT


# --- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chisig",
        description="Exact chi^c / signature invariants of combinatorially described varieties",
    )
    parser.add_argument("--json", action="store_true", help="emit a machine-readable JSON report")
    parser.add_argument("--verbose", action="store_true", help="more detail in human-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p_arr = sub.add_parser("arr", help="hyperplane arrangement invariants")
    p_arr.add_argument("file")
    p_arr.set_defaults(func=cmd_arr)

    p_degen = sub.add_parser("degen", help="semi-stable gluing of a dual complex")
    p_degen.add_argument("file")
    p_degen.set_defaults(func=cmd_degen)

    p_patch = sub.add_parser("patch", help="patchworked hypersurface chi = sigma check")
    p_patch.add_argument("file")
    p_patch.add_argument("--faces", default=None, help="all | torus | JSON list of vertex-id lists")
    p_patch.add_argument("--allow-nonregular", action="store_true")
    p_patch.set_defaults(func=cmd_patch)

    p_toric = sub.add_parser("toric", help="toric variety invariants from a fan")
    p_toric.add_argument("file")
    p_toric.set_defaults(func=cmd_toric)

    p_self = sub.add_parser("selftest", help="run the built-in verification corpus")
    p_self.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _threads_env()  # validated; the library is sequential and deterministic
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

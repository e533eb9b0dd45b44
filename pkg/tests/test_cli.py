import json
import subprocess
import sys
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


def run_cli(*args, env=None):
    cmd = [sys.executable, "-m", "chisig.cli", *args]
    return subprocess.run(cmd, capture_output=True, text=True, env=env)


def run_json(*args):
    proc = run_cli("--json", *args)
    payload = json.loads(proc.stdout) if proc.stdout.strip() else None
    return proc.returncode, payload, proc.stderr


def test_arr_two_lines():
    code, rep, _ = run_json("arr", str(FIXTURES / "two_lines_affine.json"))
    assert code == 0
    assert rep["sigma"] == 4 and rep["real_euler"] == 4 and rep["chi_eq_sigma"]
    assert rep["char_poly"] == [1, -2, 1]


def test_arr_three_points():
    code, rep, _ = run_json("arr", str(FIXTURES / "three_points_p1.json"))
    assert code == 0
    assert rep["sigma"] == -3 and rep["real_euler"] == -3 and rep["chi_eq_sigma"]


def test_arr_malformed_rational(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"ambient": "affine", "dim": 1, "hyperplanes": [["1/0", "1"]]}))
    proc = run_cli("arr", str(bad))
    assert proc.returncode == 2
    assert "error" in proc.stderr


def test_arr_unreadable_file():
    proc = run_cli("arr", "/nonexistent/file.json")
    assert proc.returncode == 2


def test_degen_chain():
    code, rep, _ = run_json("degen", str(FIXTURES / "conic_degeneration.json"))
    assert code == 0
    assert rep["sigma_glued"] == 0 and rep["real_euler_glued"] == 0 and rep["equal"]
    assert rep["psi"] == {"lefschetz_poly": [1, 1]}
    assert rep["all_strata_chi_sigma"]


def test_degen_missing_real(tmp_path):
    doc = {
        "components": ["E1"],
        "strata": [{"I": ["E1"], "complex": {"lefschetz_poly": [0, 1]}}],
    }
    f = tmp_path / "d.json"
    f.write_text(json.dumps(doc))
    code, rep, _ = run_json("degen", str(f))
    assert code == 0
    assert rep["real_euler_glued"] is None and rep["equal"] is None
    assert rep["sigma_glued"] == -1


def test_degen_twisted_stratum_not_an_error(tmp_path):
    doc = {
        "components": ["E1"],
        "strata": [{"I": ["E1"], "complex": {"lefschetz_poly": [-1, 1]}, "real_euler": 0}],
    }
    f = tmp_path / "d.json"
    f.write_text(json.dumps(doc))
    code, rep, _ = run_json("degen", str(f))
    assert code == 0  # chi != sigma is reported, not an error
    assert rep["per_stratum"][0]["chi_eq_sigma"] is False
    assert rep["equal"] is False


def test_degen_unknown_component(tmp_path):
    doc = {
        "components": ["E1"],
        "strata": [{"I": ["E1", "E3"], "complex": {"lefschetz_poly": [1]}, "real_euler": 1}],
    }
    f = tmp_path / "d.json"
    f.write_text(json.dumps(doc))
    proc = run_cli("degen", str(f))
    assert proc.returncode == 2


def test_patch_cubic_regular():
    code, rep, _ = run_json("patch", str(FIXTURES / "cubic_curve_patchwork.json"))
    assert code == 0
    assert rep["mode"] == "regular"
    assert rep["equal"] and rep["total_real"] == 0 and rep["total_sigma"] == 0


def test_patch_cubic_torus_selection():
    code, rep, _ = run_json(
        "patch", str(FIXTURES / "cubic_curve_patchwork.json"), "--faces", "torus"
    )
    assert code == 0
    assert rep["total_real"] == -9 and rep["total_sigma"] == -9


def test_patch_nonregular_needs_flag():
    proc = run_cli("patch", str(FIXTURES / "whirlpool_nonregular.json"))
    assert proc.returncode == 2
    assert "allow-nonregular" in proc.stderr


def test_patch_nonregular_combinatorial_mode():
    code, rep, _ = run_json(
        "patch", str(FIXTURES / "whirlpool_nonregular.json"), "--allow-nonregular"
    )
    assert code == 0
    assert rep["mode"] == "combinatorial"
    assert rep["equal"] and rep["total_real"] == 0


def test_patch_nonunimodular_fatal(tmp_path):
    doc = {
        "dim": 2,
        "points": [[0, 0], [1, 0], [1, 2]],
        "simplices": [[0, 1, 2]],
        "signs": [1, 1, 1],
    }
    f = tmp_path / "p.json"
    f.write_text(json.dumps(doc))
    proc = run_cli("patch", str(f))
    assert proc.returncode == 2
    assert "unimodular" in proc.stderr


def test_patch_explicit_face_list(tmp_path):
    doc = json.loads((FIXTURES / "cubic_curve_patchwork.json").read_text())
    f = tmp_path / "p.json"
    f.write_text(json.dumps(doc))
    code, rep, _ = run_json("patch", str(f), "--faces", "torus")
    top_face = [row["face"] for row in rep["per_face"] if row["dim"] == 2][0]
    code2, rep2, _ = run_json("patch", str(f), "--faces", json.dumps([top_face]))
    assert code2 == 0
    assert rep2["total_real"] == rep["total_real"]


def test_toric_p2():
    code, rep, _ = run_json("toric", str(FIXTURES / "p2_fan.json"))
    assert code == 0
    assert rep["sigma"] == 1 and rep["real_euler"] == 1 and rep["equal"]
    assert rep["smooth"] and rep["complete"] is True


def test_toric_bad_cone(tmp_path):
    doc = {"dim": 2, "cones": [[], [[1, 0]], [[1, 2]], [[1, 0], [1, 2]]]}
    f = tmp_path / "f.json"
    f.write_text(json.dumps(doc))
    proc = run_cli("toric", str(f))
    assert proc.returncode == 2
    assert "1, 2" in proc.stderr  # the offending cone is listed


def test_selftest_passes():
    proc = run_cli("selftest")
    assert proc.returncode == 0
    assert "all suites passed: True" in proc.stdout


def test_selftest_json_deterministic():
    first = run_cli("--json", "selftest")
    second = run_cli("--json", "selftest")
    assert first.returncode == 0 and second.returncode == 0
    assert first.stdout == second.stdout


def test_threads_env_validated():
    import os

    env = dict(os.environ, CHISIG_THREADS="not-a-number")
    proc = run_cli("selftest", env=env)
    assert proc.returncode == 2
    env = dict(os.environ, CHISIG_THREADS="4")
    proc = run_cli("arr", str(FIXTURES / "two_lines_affine.json"), env=env)
    assert proc.returncode == 0

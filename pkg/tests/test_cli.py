"""End-to-end runs of every CLI subcommand against the fixture files."""

import json
import subprocess
import sys

import pytest

from quiverlab.cli import main
from quiverlab.quiverfile import parse_quiver_file

from conftest import FIXTURES

A2 = str(FIXTURES / "a2.quiver")
D4 = str(FIXTURES / "d4.quiver")
FRAMED_A1 = str(FIXTURES / "affine_a1_framed.quiver")
FRAMED_D4 = str(FIXTURES / "affine_d4_framed.quiver")
MODULES = FIXTURES / "modules"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


def test_basis(capsys):
    data = run_json(capsys, "basis", "--in", A2, "--cutoff", "3")
    assert data == {"cutoff": 3, "dimensions": [2, 2, 0, 0],
                    "finite_dimensional": True, "top_degree": 1}
    code, out = run(capsys, "basis", "--in", A2, "--cutoff", "3", "--format", "text")
    assert code == 0
    assert out.splitlines() == [
        "degree 0: 2", "degree 1: 2", "degree 2: 0", "degree 3: 0",
        "finite dimensional, top degree 1"]


def test_cocenter(capsys):
    data = run_json(capsys, "cocenter", "--in", A2, "--cutoff", "2")
    assert data == {"degree_dims": [2, 0, 0]}


def test_corner(capsys):
    data = run_json(capsys, "corner", "--in", FRAMED_A1, "--cutoff", "6")
    assert data["k_top_degree"] == 0
    assert data["degree_bound"] == 2
    assert [g["name"] for g in data["generators"]] == ["ι", "g1", "g2", "g3"]
    assert data["generators"][1] == {"name": "g1", "path": "a*.a", "degree": 2,
                                     "source": "0", "target": "0"}


def test_corner_present(capsys):
    data = run_json(capsys, "corner-present", "--in", FRAMED_A1, "--cutoff", "6")
    assert data["completeness"] == "truncated-at-6"
    weights = {a["name"]: a["weight"] for a in data["arrows"]}
    assert weights == {"ι": 1, "g1": 2, "g2": 2, "g3": 2}
    assert {a["name"]: a["ambient_path"] for a in data["arrows"]}["g2"] == "b*.a"
    # the text form is itself a parseable quiver file
    code, out = run(capsys, "corner-present", "--in", FRAMED_A1, "--cutoff", "6",
                    "--format", "text")
    assert code == 0
    qf = parse_quiver_file(out)
    assert [a.name for a in qf.quiver.arrows] == ["ι", "g1", "g2", "g3"]
    assert qf.weights == weights
    assert "# completeness: truncated-at-6" in out


def test_bimodule_gens(capsys):
    data = run_json(capsys, "bimodule-gens", "--in", FRAMED_A1, "--cutoff", "6")
    assert data["count"] == 4
    assert [g["name"] for g in data["generators"]] == ["e_0", "e_∞", "a", "b"]


def test_invariants(capsys):
    data = run_json(capsys, "invariants", "--in", A2)
    assert [g["expr"] for g in data["generators"]] == ["tr(a*.a)", "tr(a*.a.a*.a)"]
    assert data["variables"] == ["x_a_1_1", "x_a*_1_1"]


def test_rep_ideal_groebner_nilwitness_pipeline(capsys, tmp_path):
    data = run_json(capsys, "rep-ideal", "--in", A2)
    assert data["generators"] == ["-x_a_1_1*x_a*_1_1", "x_a_1_1*x_a*_1_1"]
    ideal_file = tmp_path / "ideal.json"
    ideal_file.write_text(json.dumps(data))
    gb = run_json(capsys, "groebner", "--in", str(ideal_file))
    assert gb["basis"] == ["x_a_1_1*x_a*_1_1"]
    wit = run_json(capsys, "nilwitness", "--in", str(ideal_file),
                   "--max-deg", "2", "--max-pow", "3")
    assert wit["witness"] is None   # the monomial ideal is radical
    # a groebner output document is itself a valid ideal input
    gb_file = tmp_path / "gb.json"
    gb_file.write_text(json.dumps(gb))
    wit2 = run_json(capsys, "nilwitness", "--in", str(gb_file),
                    "--max-deg", "2", "--max-pow", "3")
    assert wit2["witness"] is None


def test_nilwitness_finds_toy_witness(capsys, tmp_path):
    ideal_file = tmp_path / "sq.json"
    ideal_file.write_text(json.dumps(
        {"variables": ["x", "y"], "generators": ["x^2 + 2*x*y + y^2"]}))
    data = run_json(capsys, "nilwitness", "--in", str(ideal_file),
                    "--max-deg", "1", "--max-pow", "2")
    assert data["witness"] == {"element": "x + y", "power": 2}
    code, out = run(capsys, "nilwitness", "--in", str(ideal_file),
                    "--max-deg", "1", "--max-pow", "2", "--format", "text")
    assert code == 0 and "(x + y)^2" in out


def test_check_module(capsys, tmp_path):
    good = str(MODULES / "framed_a1_generated_1.json")
    data = run_json(capsys, "check-module", "--in", FRAMED_A1, "--module", good)
    assert data == {"valid": True, "residual_is_zero": [True, True]}
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dimension": {"∞": 1, "0": 1, "1": 1},
                               "arrows": {"a": [["1"]], "a*": [["1"]]}}))
    data = run_json(capsys, "check-module", "--in", FRAMED_A1, "--module", str(bad))
    assert data["valid"] is False


def test_induce(capsys, tmp_path):
    vh = tmp_path / "vh.json"
    vh.write_text(json.dumps({
        "dimension": {"∞": 1, "0": 1},
        "arrows": {"ι": [["1"]], "g1": [["0"]], "g2": [["0"]], "g3": [["0"]]},
    }))
    data = run_json(capsys, "induce", "--in", FRAMED_A1, "--cutoff", "8",
                    "--module", str(vh))
    assert data["dimension"] == {"∞": 1, "0": 1, "1": 2}
    assert data["arrows"]["ι"] == [["1"]]


def test_fingerprint(capsys, tmp_path):
    mod = tmp_path / "m.json"
    mod.write_text(json.dumps({"dimension": {"1": 1, "2": 1},
                               "arrows": {"a": [["2"]], "a*": [["1/2"]]}}))
    data = run_json(capsys, "fingerprint", "--in", A2, "--module", str(mod),
                    "--cycle-bound", "2", "--path-bound", "2")
    assert data == {"generators": ["tr(a*.a)"], "fingerprint": ["1"]}


def test_stability(capsys):
    data = run_json(capsys, "stability", "--in", FRAMED_A1,
                    "--module", str(MODULES / "framed_a1_generated_1.json"))
    assert data == {"generated_by_framing": True}
    data = run_json(capsys, "stability", "--in", FRAMED_A1,
                    "--module", str(MODULES / "framed_a1_ungenerated_1.json"))
    assert data == {"generated_by_framing": False}


def test_stability_rejects_non_modules(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dimension": {"∞": 1, "0": 1, "1": 1},
                               "arrows": {"a": [["1"]], "a*": [["1"]]}}))
    code, _ = run(capsys, "stability", "--in", FRAMED_A1, "--module", str(bad))
    assert code == 1


def test_delta(capsys):
    data = run_json(capsys, "delta", "--type", "D", "--rank", "4")
    assert data == {"delta": {"0": 1, "1": 1, "2": 2, "3": 1, "4": 1},
                    "delta_k": {"1": 1, "2": 2, "3": 1, "4": 1}}


def test_astar(capsys):
    data = run_json(capsys, "astar", "--in", FRAMED_A1)
    assert data["relations"] == ["-a*.a - b*.b", "a.a* + b.b*", "a*", "b*"]
    code, out = run(capsys, "astar", "--in", FRAMED_A1, "--format", "text")
    assert code == 0
    qf = parse_quiver_file(out)
    assert len(qf.relations) == 4


def test_acircledast(capsys):
    data = run_json(capsys, "acircledast", "--in", FRAMED_D4)
    assert [a["name"] for a in data["arrows"]] == ["a", "b", "b*", "c", "c*", "d", "d*"]
    assert {"name": "0", "tag": "F"} in data["vertices"]
    code, out = run(capsys, "acircledast", "--in", FRAMED_D4, "--format", "text")
    assert code == 0
    qf = parse_quiver_file(out)
    assert qf.quiver.tag("0") == "F"


def test_exit_code_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_exit_code_domain_error(capsys):
    assert main(["basis", "--in", "/nonexistent.quiver", "--cutoff", "2"]) == 1
    err = capsys.readouterr().err
    assert err.startswith("error:")


def test_exit_code_budget(capsys, tmp_path):
    ideal_file = tmp_path / "sq.json"
    ideal_file.write_text(json.dumps(
        {"variables": ["x", "y", "z"],
         "generators": ["x^3 - y*z", "y^2 - x*z", "z^2 - x^2*y"]}))
    assert main(["groebner", "--in", str(ideal_file), "--max-steps", "1"]) == 3
    err = capsys.readouterr().err
    assert err.startswith("budget exhausted:")
    assert main(["nilwitness", "--in", str(ideal_file),
                 "--max-deg", "2", "--max-pow", "2", "--max-ops", "1"]) == 3


def test_console_script_runs():
    out = subprocess.run(["quiverlab", "delta", "--type", "A", "--rank", "2"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout) == {"delta": {"0": 1, "1": 1, "2": 1},
                                      "delta_k": {"1": 1, "2": 1}}

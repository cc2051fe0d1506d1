import json
import subprocess
import sys
from pathlib import Path

import pytest

from translattice import cli, pipeline
from translattice.errors import CertificateError, InputError
from translattice.pipeline import ProblemFile, compute, load_problem, validate_report

EXAMPLES = Path(__file__).resolve().parents[1] / "examples" / "problems"
TOY = EXAMPLES / "toy_square_root.toml"


def toy_dict(**branch):
    b = {"expression": "y^2 - z", "fiber": "y", "base": "z", "removed": ["0"]}
    b.update(branch)
    return {"d": 0, "variables": ["y", "z"], "branch": b}


def test_load_example_files():
    flag = load_problem(EXAMPLES / "double_sextic_a10a9.toml")
    assert flag.d == 5 and flag.embeddings == ("plus", "minus")
    assert flag.branch_polynomial() == load_problem(pipeline.FLAGSHIP_PROBLEM).branch_polynomial()


@pytest.mark.parametrize("data, message", [
    ({"variables": ["y", "z"], "branch": {"expression": "y"}}, "missing"),
    ({**toy_dict(), "run": {"embedding": "left"}}, "embedding"),
    (toy_dict(expression="y^2 - z*Q"), "undefined"),
    (toy_dict(removed=["0", "0"]), "distinct"),
    (toy_dict(fiber="w"), "declared"),
    ({**toy_dict(), "run": {"base_point": [1]}}, "pair"),
])
def test_problem_validation(data, message):
    with pytest.raises(InputError, match=message):
        ProblemFile.from_dict(data)


def test_missing_and_malformed_files(tmp_path):
    with pytest.raises(InputError, match="not found"):
        load_problem(tmp_path / "none.toml")
    bad = tmp_path / "bad.toml"
    bad.write_text("d = = 5")
    with pytest.raises(InputError, match="TOML"):
        load_problem(bad)


def test_toy_report():
    data = compute(load_problem(TOY)).to_dict()
    validate_report(data)
    (e,) = data["embeddings"]
    assert e["quotient_rank"] == 0 and e["reduced_form"] is None
    assert e["curves"][0]["braid_word"] == "s1^-1"
    assert e["gram"] == [[0]]


def test_flagship_report(flagship):
    data = compute(flagship).to_dict()
    validate_report(data)
    forms = {e["embedding"]: e["reduced_form"] for e in data["embeddings"]}
    assert forms == {"plus": "[2,1,28]", "minus": "[8,3,8]"}
    assert data["assumptions"]
    for e in data["embeddings"]:
        assert e["kernel_rank"] == 3 and e["radical_rank"] == 1 and e["quotient_rank"] == 2
        assert e["genus"] == ["[2,1,28]", "[8,3,8]"]


def test_report_is_deterministic(flagship):
    assert compute(flagship).to_json() == compute(flagship).to_json()


def test_schema_rejects_extra_keys():
    import jsonschema
    data = compute(load_problem(TOY)).to_dict()
    data["surprise"] = 1
    with pytest.raises(jsonschema.ValidationError):
        validate_report(data)


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "translattice.cli", *args],
                          capture_output=True, text=True, timeout=300)


@pytest.mark.parametrize("gram, reduced", [(("40", "-5", "2"), "[2,1,28]"), (("2", "1", "28"), "[2,1,28]"),
                                           (("140", "-55", "22"), "[8,3,8]")])
def test_cli_reduce(gram, reduced):
    r = run_cli("reduce", *gram)
    assert r.returncode == 0 and r.stdout.strip() == reduced


def test_cli_reduce_verbose(capsys):
    assert cli.main(["reduce", "8", "11", "22", "-v"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["[8,3,8]", "det 55, real True"]


def test_cli_genus(capsys):
    assert cli.main(["genus", "--det", "55"]) == 0
    out = capsys.readouterr().out
    assert "genus 1: [2,1,28], [8,3,8]" in out
    assert "[4,1,14] (not real)" in out


def test_cli_discform(capsys):
    assert cli.main(["discform", "2", "1", "28"]) == 0
    out = capsys.readouterr().out
    assert "order 55 cyclic" in out and "q = 28/55 mod 2" in out


def test_cli_singtype(capsys):
    poly = "x^2 - 2*x*y^2 + y^4 - y^11"
    assert cli.main(["singtype", "--poly", poly, "--at", "0", "0"]) == 0
    assert capsys.readouterr().out.strip() == "A10"
    assert cli.main(["singtype", "--poly", "x^2*z - y^3", "--chart", "z", "--at", "0", "0"]) == 0
    assert capsys.readouterr().out.strip() == "A2"


def test_cli_compute(tmp_path):
    out = tmp_path / "report.json"
    svg = tmp_path / "svg"
    r = run_cli("compute", str(TOY), "--out", str(out), "--svg", str(svg))
    assert r.returncode == 0, r.stderr
    data = json.loads(out.read_text())
    validate_report(data)
    assert sorted(p.name for p in svg.iterdir()) == ["plus_loop_0.svg"]
    assert "plus: rank 0" in r.stderr


def test_exit_code_usage():
    assert run_cli("reduce", "1").returncode == 1
    assert run_cli("frobnicate").returncode == 1


def test_exit_code_input(tmp_path, capsys):
    assert cli.main(["compute", str(tmp_path / "missing.toml")]) == 1
    assert cli.main(["singtype", "--poly", "x^2 + y^2 + 1", "--at", "0", "0"]) == 1


def test_exit_code_assumption(tmp_path):
    p = tmp_path / "cusp.toml"
    p.write_text('d = 0\nvariables = ["y", "z"]\n[branch]\nexpression = "y^3 - z^2"\n')
    r = run_cli("compute", str(p))
    assert r.returncode == 3, r.stderr


def test_exit_code_certificate(monkeypatch, capsys):
    def fail(*args, **kwargs):
        raise CertificateError("forced", module="geometry")
    monkeypatch.setattr(pipeline, "compute", fail)
    assert cli.main(["compute", str(TOY)]) == 2
    assert "forced" in capsys.readouterr().err

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from roquette.harness.cli import main


def run(*args, env=None):
    return subprocess.run([sys.executable, "-m", "roquette.harness.cli", *args],
                          capture_output=True, text=True, env=env)


def test_build_text():
    r = run("build", "cyclic 8")
    assert r.returncode == 0
    assert "order: 8" in r.stdout


def test_parse_error_exit_code_and_caret():
    r = run("build", "semidirect cyclic:8 units:[5")
    assert r.returncode == 2
    lines = r.stderr.rstrip("\n").splitlines()
    assert lines[0].startswith("error: expected ']'")
    assert lines[-1] == "  " + " " * 28 + "^"


def test_unknown_constructor_in_process(capsys):
    assert main(["subgroups", "cyclc 8"]) == 2
    assert "unknown constructor" in capsys.readouterr().err


def test_subgroups_json(capsys):
    assert main(["subgroups", "quaternion 8", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["order"] == 8 and out["subgroups"] == 6


def test_expansive_json(capsys):
    assert main(["expansive", "dihedral 16", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["trivial_core_classes"] == 2 and out["expansive"] == 0


def test_expansive_trace(capsys):
    assert main(["expansive", "q8s3", "--json", "--trace"]) == 0
    json.loads(capsys.readouterr().out)


def test_roquette_verdict(capsys):
    assert main(["roquette", "q8s3"]) == 0
    assert "roquette=True" in capsys.readouterr().out
    assert main(["roquette", "direct (cyclic 2) (cyclic 2)", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["roquette"] is False


def test_cohomology_table(capsys):
    assert main(["cohomology", "--max-n", "12"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[0].split() == ["n", "p", "H1", "H2"]
    assert rows[1].split() == ["4", "2", "C2", "C2"]


def test_verify_json_to_file(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "q8-s3", "--format", "json", "-o", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["suite"] == "q8-s3" and data["overall"] == "pass"


def test_verify_failing_suite_exit_code(capsys):
    # one lemma in this suite fails as literally stated, so the suite must report failure
    assert main(["verify", "lemma-structure", "--format", "text"]) == 1
    text = capsys.readouterr().out
    assert "FAIL lemngtsp-normalizer-of-f1" in text


def test_verify_bad_n_list(capsys):
    assert main(["verify", "cyclic-fitting", "--n-list", "8,x"]) == 2
    assert "comma separated integers" in capsys.readouterr().err


def test_unknown_suite():
    r = run("verify", "nope")
    assert r.returncode == 2
    assert "invalid choice" in r.stderr


@pytest.mark.parametrize("args", [["--help"], ["verify", "--help"]])
def test_help(args):
    assert run(*args).returncode == 0

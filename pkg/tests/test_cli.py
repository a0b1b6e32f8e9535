import json
import subprocess
import sys

import pytest

from flagdom import cli
from flagdom.graphs import TricoloredGraph


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("level,count", [(3, 3), (4, 15), (5, 142)])
def test_enumerate(capsys, tmp_path, level, count):
    out_file = tmp_path / "basis.json"
    code, out, err = run(capsys, "enumerate", "--level", str(level), "--out", str(out_file))
    assert code == 0
    assert err.strip() == f"{count} classes"
    doc = json.loads(out)
    assert doc["count"] == count and len(doc["classes"]) == count
    assert json.loads(out_file.read_text())["classes"] == doc["classes"]
    assert doc["manifest"]["command"] == "enumerate"
    assert doc["manifest"]["flags"]["level"] == level


def test_usage_errors(capsys):
    assert run(capsys, "enumerate", "--level", "7")[0] == 64
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        cli.main(["enumerate"])
    assert exc.value.code == 64
    assert run(capsys, "construct", "--kind", "kierstead", "--n", "10")[0] == 64
    assert run(capsys, "verify", "--coeffs", "nonsense")[0] == 64
    assert run(capsys, "best-domination", "--graph", "/nonexistent.tcg")[0] == 64


def test_threads_env(monkeypatch):
    monkeypatch.setenv(cli.THREADS_ENV, "3")
    assert cli.build_parser().parse_args(["enumerate", "--level", "3"]).threads == 3


def test_check_theorem(capsys):
    code, out, err = run(capsys, "check-theorem", "--n", "4", "--exhaustive")
    assert code == 0
    assert "729 colorings, 0 counterexamples" in err
    assert json.loads(out)["counterexamples"] == 0
    assert run(capsys, "check-theorem", "--n", "4")[0] == 64


def test_internal_breach_exit_70(capsys, monkeypatch):
    from flagdom import domination

    def boom(n, threads=1):
        g = TricoloredGraph(3, [1, 2, 3])
        raise domination.CounterexampleFound(g, domination.best_domination(g, 3))

    monkeypatch.setattr(domination, "exhaustive_theorem_check", boom)
    code, _, err = run(capsys, "check-theorem", "--n", "3", "--exhaustive")
    assert code == 70
    assert "witness" in err and "1 2 3" in err


def test_construct_pipe_best_domination():
    construct = subprocess.run(
        [sys.executable, "-m", "flagdom.cli", "construct", "--kind", "kierstead", "--n", "9"],
        capture_output=True, text=True, check=True,
    )
    best = subprocess.run(
        [sys.executable, "-m", "flagdom.cli", "best-domination", "--t", "4"],
        input=construct.stdout, capture_output=True, text=True, check=True,
    )
    doc = json.loads(best.stdout)
    assert doc["size"] == 6
    assert doc["manifest"]["inputs"]["graph:<stdin>"].startswith("sha256:")


def test_construct_out(capsys, tmp_path):
    path = tmp_path / "rb.tcg"
    code, out, _ = run(capsys, "construct", "--kind", "rainbow", "--m", "3", "--out", str(path))
    assert code == 0
    assert TricoloredGraph.from_tcg(path.read_text()).n == 9


def test_blowup_eq2(capsys, tmp_path):
    path = tmp_path / "rainbow3.tcg"
    path.write_text("3\n1 2 3\n")
    code, out, _ = run(capsys, "blowup", "--graph", str(path), "--k", "80", "--check", "eq2", "--seed", "7",
                       "--samples", "50000")
    assert code == 0
    doc = json.loads(out)
    assert all(r["estimate"] >= -0.01 for r in doc["checks"]["eq2"]["squares"])
    assert doc["manifest"]["seeds"] == {"seed": 7}
    # slack needs a base with at least four vertices
    assert run(capsys, "blowup", "--graph", str(path), "--k", "20", "--check", "slack")[0] == 64


def test_verify_file_roundtrip(capsys, tmp_path, derived):
    report, _ = derived
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(report.to_json()))
    code, out, _ = run(capsys, "verify", "--coeffs", f"file:{path}")
    assert code == 0
    assert json.loads(out)["verdict"] == "valid"

    doc = report.to_json()
    doc["coefficients"][0] = {"num": "0", "den": "1"}
    path.write_text(json.dumps(doc))
    code, out, err = run(capsys, "verify", "--coeffs", f"file:{path}")
    assert code == 2
    assert "minimalViolation" in json.loads(out)
    assert "class" in err


def test_derive_exclude_squares(capsys):
    code, out, err = run(capsys, "derive", "--exclude-squares")
    doc = json.loads(out)
    assert code == (0 if doc["verdict"] == "valid" else 3)
    assert doc["metadata"]["stages"][0]["stage"] == "reference"


def test_verify_reference(capsys):
    code, out, err = run(capsys, "verify", "--coeffs", "paper")
    doc = json.loads(out)
    assert code == (0 if doc["verdict"] == "valid" else 2)
    if code == 2:
        assert "derive" in doc["suggestion"]
    assert len(doc["coefficients"]) == 14

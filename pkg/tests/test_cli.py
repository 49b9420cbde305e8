import json

import pytest

from nilgeo.cli import main


@pytest.fixture
def g3_file(tmp_path, g3_document):
    path = tmp_path / "g3.json"
    path.write_text(json.dumps(g3_document), encoding="utf-8")
    return path


def test_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "G5.2" in out
    assert len(out.strip().splitlines()) == 17


def test_usage_errors():
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["show", "Gxx"]) == 2
    assert main(["verify", "--samples", "0"]) == 2
    assert main(["show", "G3", "--param", "psi12"]) == 2
    assert main(["show", "G1", "--param", "t=1"]) == 2


def test_show_json(capsys):
    assert main(["show", "G1", "--json", "--param", "psi12=3"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["id"] == "G1"
    assert payload["structure"]["params"]["psi12"] == "3"
    assert payload["structure"]["params"]["psi34"] == "-6"


def test_show_panel(capsys):
    assert main(["show", "G5.2"]) == 0
    assert "G5.2" in capsys.readouterr().out


def test_compute(g3_file, capsys):
    assert main(["compute", "--input", str(g3_file)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["scalar"] == "0"
    assert payload["signature"] == [2, 4, 0]
    assert payload["nijenhuis_nonzero"] is True


def test_compute_to_file(g3_file, tmp_path):
    out = tmp_path / "report.json"
    assert main(["compute", "--input", str(g3_file), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["RR"] == "0"


def test_compute_rejects_bad_structure(tmp_path, g3_document):
    path = tmp_path / "bad.json"
    identity = [["1" if r == c else "0" for c in range(6)] for r in range(6)]
    path.write_text(json.dumps({**g3_document, "J": identity}), encoding="utf-8")
    assert main(["compute", "--input", str(path)]) == 2


def test_compute_missing_file(tmp_path):
    assert main(["compute", "--input", str(tmp_path / "missing.json")]) == 3


def test_verify_group(tmp_path, capsys):
    out = tmp_path / "summary.json"
    assert main(["verify", "--group", "G3", "--samples", "1", "--seed", "1", "--out", str(out)]) == 0
    summary = json.loads(out.read_text())
    assert summary["failures"] == 0
    assert summary["entries"] == ["G3"]
    assert "failing checks" in capsys.readouterr().out


def test_solve_reference(capsys):
    assert main(["solve", "--group", "G3"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["converged"] is True
    assert payload["J"][1][0] == -1.0


def test_solve_infeasible_pattern():
    assert main(["solve", "--group", "G3", "--zero", "2,1", "--zero", "6,1"]) == 4


def test_solve_source_is_required():
    assert main(["solve"]) == 2
    assert main(["solve", "--group", "G3", "--probe"]) == 2
    assert main(["solve", "--group", "G3", "--fix", "6,1=0", "--fix", "6,1=1"]) == 2


def test_zero_curvature_probe_cli(tmp_path, capsys):
    path = tmp_path / "flat.json"
    doc = {
        "algebra": {"dim": 4, "brackets": []},
        "omega": [{"i": 1, "j": 2, "value": "1"}, {"i": 3, "j": 4, "value": "1"}],
    }
    path.write_text(json.dumps(doc), encoding="utf-8")
    assert main(["solve", "--input", str(path), "--probe", "zero-curvature", "--trials", "3"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"] == 3


def test_solve_with_freed_noncentral_cell_is_inconclusive(tmp_path):
    out = tmp_path / "probe.json"
    argv = ["solve", "--group", "G1", "--fix", "6,1=0", "--fix", "6,1=0.5", "--free", "5,2",
            "--probe", "param-independence", "--out", str(out)]
    assert main(argv) == 4
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["status"] == "inconclusive"
    assert payload["riemann_deviation"] is None
    assert payload["solves"] == []

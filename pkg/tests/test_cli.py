import json
import subprocess
import sys
from pathlib import Path

from gdeg.cli import main

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def test_version(capsys):
    assert main(["version"]) == 0
    assert capsys.readouterr().out.startswith("gdeg ")


def test_analyze_text(capsys):
    assert main(["analyze", "--config", str(CONFIGS / "dihedral_d5.yaml")]) == 0
    out = capsys.readouterr().out
    assert "non-constant periodic solution with orbit type exactly" in out
    assert out.rstrip().endswith("status: ok")


def test_analyze_json_and_machine(capsys):
    path = str(CONFIGS / "trivial_dense.yaml")
    assert main(["analyze", "--config", path, "--format", "json"]) == 0
    pretty = capsys.readouterr().out
    assert main(["analyze", "--config", path, "--format", "machine"]) == 0
    compact = capsys.readouterr().out
    assert json.loads(pretty) == json.loads(compact)
    assert compact.count("\n") == 1


def test_degenerate_exit_code(capsys):
    assert main(["analyze", "--config", str(CONFIGS / "dihedral_d3.yaml"), "--format", "json"]) == 2
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] == "degenerate"


def test_degenerate_without_audit(tmp_path, capsys):
    text = (CONFIGS / "dihedral_d3.yaml").read_text().replace("audit: true", "audit: false")
    p = tmp_path / "c.yaml"
    p.write_text(text)
    assert main(["analyze", "--config", str(p)]) == 2
    assert "degenerate at (l=1, k=1)" in capsys.readouterr().err


def test_config_error_exit_code(tmp_path, capsys):
    text = (CONFIGS / "dihedral_d5.yaml").read_text().replace('"2*pi*1/7"', '"pi/2"')
    p = tmp_path / "c.yaml"
    p.write_text(text)
    assert main(["analyze", "--config", str(p)]) == 3
    assert "DelaySymmetryViolation" in capsys.readouterr().err
    assert main(["analyze", "--config", str(tmp_path / "none.yaml")]) == 3


def test_ccs_and_marks(capsys):
    assert main(["ccs", "--group", "D3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("D3: order 6, 4 classes, 6 subgroups")
    assert main(["marks", "--group", "dihedral:3", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["marks"][0] == [6, 3, 2, 1]
    assert main(["ccs", "--group", "product(D1,Z2,D3)", "--gap-compat", "--format", "json"]) == 0
    assert len(json.loads(capsys.readouterr().out)["classes"]) == 32


def test_basic_degrees(capsys):
    assert main(["basic-degrees", "--group", "dihedral:3", "--gamma-points", "3"]) == 0
    out = capsys.readouterr().out
    assert "deg[U0-] = (G) - (D1z x D3)" in out
    assert main(["basic-degrees", "--group", "trivial", "--gamma-points", "2", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [d["multiplicity"] for d in doc["degrees"]] == [2, 2]
    assert main(["basic-degrees", "--group", "dihedral:3", "--gamma-points", "4"]) == 3


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "gdeg", "version"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("gdeg ")

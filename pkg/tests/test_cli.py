"""Command line interface: outputs, exit codes and report schema."""

import json
from importlib import resources

import jsonschema
import pytest

from wardwick.cli import main

SCHEMA = json.loads((resources.files("wardwick") / "schema" / "report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_vev_text(capsys):
    code, out, _ = run(capsys, "vev", "tproduct(phis(x1), phi(x2))")
    assert code == 0
    assert out.splitlines()[0].startswith("# ")
    assert out.splitlines()[-1] == "hbar * DF(x1-x2)"


def test_commutator(capsys):
    _, out, _ = run(capsys, "commutator", "phi(x)", "phis(y)")
    assert out.splitlines()[-1] == "i * hbar * D(x-y)"
    _, out, _ = run(capsys, "commutator", "--raw", "phi(x)", "phis(y)")
    assert "DP" in out


def test_ward_check_exit_codes(capsys):
    code, out, _ = run(capsys, "ward-check", "phi^2(x1)", "phis^2(x2)")
    assert code == 0 and "verdict: Verified" in out
    code, _, err = run(capsys, "ward-check", "phi^2(x1)", "phis(")
    assert code == 2 and "position" in err
    code, _, _ = run(capsys, "ward-check", "phi(x1)", "phis(x1)")
    assert code == 2


def test_ward_check_trace_goes_to_stderr(capsys):
    code, out, err = run(capsys, "ward-check", "phi^2(x1)", "phis^2(x2)", "--trace")
    assert code == 0 and "[trace]" in err and "[trace]" not in out


def test_usage_errors(capsys):
    assert run(capsys, "dims", "L", "--dim", "2")[0] == 2
    assert run(capsys, "table1", "--n", "3")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "vev", "phi(x)", "--eta", "2")[0] == 2


def test_out_file_and_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"format": "json", "dim": 6}))
    out = tmp_path / "r.json"
    assert main(["dims", "L", "--config", str(cfg), "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["dim"] == 6 and data["items"] == [{"expr": "L", "dimension": "8"}]
    cfg.write_text(json.dumps({"colour": "red"}))
    assert main(["dims", "L", "--config", str(cfg)]) == 2


def test_eta_is_used_by_beta(capsys):
    _, out, _ = run(capsys, "expand", "beta(phi(x))", "--eta", "i")
    assert out.splitlines()[-1] == "i * phis(x)"


def test_deterministic_output(capsys):
    a = run(capsys, "anomaly-scan", "--n", "3", "--format", "json")[1]
    b = run(capsys, "anomaly-scan", "--n", "3", "--format", "json")[1]
    assert a == b


@pytest.mark.parametrize("argv", [
    ["expand", "box[y] DF(x-y)"],
    ["star", "phi(x)", "phis(z)"],
    ["star", "--feynman", "phi(x)", "phis(z)"],
    ["commutator", "phi(x)", "phis(z)"],
    ["tproduct", "L(x1)", "(phis*phi^2)(x2)"],
    ["vev", "tproduct(phis(x1), phi(x2))"],
    ["ward-check", "(phis*phi)(x1)", "j[nu](x2)"],
    ["furry-check", "j[mu](x1)", "L(x2)", "L(x3)"],
    ["charge-check", "phi(x1)", "phi(x2)"],
    ["anomaly-scan", "--n", "3"],
    ["case1-report", "--m", "2"],
    ["table1"],
    ["dims", "L", "j[mu]"],
    ["export-diagrams", "phi^2(x1)", "phis^2(x2)"],
])
def test_json_reports_match_schema(capsys, argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    assert "non-coincident" in data["assumption"]


def test_furry_text(capsys):
    _, out, _ = run(capsys, "furry-check", "j[mu](x1)", "L(x2)", "L(x3)")
    assert "ForcedZero" in out and "agrees: True" in out


def test_case1_text(capsys):
    _, out, _ = run(capsys, "case1-report")
    assert "certified: True" in out and "C1 = C2 - C3 + C4" in out


def test_dot_export(capsys):
    _, out, _ = run(capsys, "export-diagrams", "L(x1)", "(phis*phi^2)(x2)", "(phis^2*phi)(x3)", "--format", "dot")
    assert out.count("graph diagram_") == 2
    assert out.count(" -- ") == 2 * 5
    assert "multiplicity=16" in out and "multiplicity=4" in out

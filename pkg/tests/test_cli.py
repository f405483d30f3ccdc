import json
from pathlib import Path

from typer.testing import CliRunner

from src.app import app

runner = CliRunner()


def test_search_defaults_to_table1():
    result = runner.invoke(app, ["search"])
    assert result.exit_code == 0, result.output
    lines = result.stdout.strip().splitlines()
    assert lines[0] == "basket,r_X,rX_c1cubed,rX_c2c1,q,n,chi_minusK"
    assert [line.split(",")[-3] for line in lines[1:]] == ["61", "67", "71", "73"]


def test_search_with_postfilter_and_markdown():
    result = runner.invoke(app, ["search", "--postfilter", "--format", "md"])
    assert result.exit_code == 0, result.output
    assert "| B_X" in result.stdout
    assert "5329" not in result.stdout
    assert "5041" in result.stdout


def test_search_exact_bound_to_file(tmp_path: Path):
    out = tmp_path / "rows.json"
    result = runner.invoke(app, ["search", "--bound", "16/5", "--format", "json", "--out", str(out)])
    assert result.exit_code == 0, result.output
    rows = json.loads(out.read_text())
    assert len(rows) == 1
    assert rows[0]["rX_c1cubed"] == 3721


def test_search_stats_go_to_stderr():
    result = runner.invoke(app, ["search", "--bound", "3", "--stats"])
    assert result.exit_code == 0, result.output
    assert "step 1:" in result.output


def test_search_rejects_inexact_bound():
    result = runner.invoke(app, ["search", "--bound", "3.3"])
    assert result.exit_code == 2


def test_search_rejects_bound_with_non_gorenstein():
    result = runner.invoke(app, ["search", "--non-gorenstein", "--bound", "4"])
    assert result.exit_code == 2


def test_search_rejects_unknown_format():
    result = runner.invoke(app, ["search", "--format", "xml"])
    assert result.exit_code == 2


def test_non_gorenstein_search():
    result = runner.invoke(app, ["search", "--non-gorenstein", "--qmin", "45"])
    assert result.exit_code == 0, result.output
    lines = result.stdout.strip().splitlines()
    assert len(lines) > 1
    assert all(line.startswith('"[(4,1),(5,1),(5,2),(7,3)]",140,2025,531,45') for line in lines[1:])


def test_verify_unknown_target():
    result = runner.invoke(app, ["verify", "bogus"])
    assert result.exit_code == 2


def test_verify_minp_json():
    result = runner.invoke(app, ["verify", "minp", "--format", "json"])
    assert result.exit_code == 0, result.output
    reports = json.loads(result.stdout)
    assert reports[0]["name"] == "minp"
    assert reports[0]["status"] == "pass"


def test_verify_all():
    result = runner.invoke(app, ["verify", "all"])
    assert result.exit_code == 0, result.output
    assert "5 of 5 checks passed" in result.stdout
    assert "not machine-checked" in result.stdout


def test_postfilter_with_qmin_one_is_rejected_up_front():
    result = runner.invoke(app, ["search", "--qmin", "1", "--postfilter"])
    assert result.exit_code == 2

"""Command line entry point: exit codes, report schema, determinism."""

import json

import pytest

from affine_schur import cli


def test_compute_xstat(capsys):
    assert cli.main(["compute", "xstat", "--p", "n=2;D=2;[2,1]"]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_compute_canonical_t(capsys):
    assert cli.main(["compute", "canonical-t", "--p", "n=2;D=2;[2,1]"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["leading"] == [2, 1]
    assert len(payload["terms"]) == 2


def test_invalid_config_exits_2(capsys):
    assert cli.main(["run-suite", "schur", "--n", "0"]) == 2
    assert "invalid config" in capsys.readouterr().err


def test_run_suite_report_schema(capsys):
    assert cli.main(["run-suite", "relations", "--n", "2", "--D", "2",
                     "--word-len", "2"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["suite"] == "relations"
    assert report["config"]["n"] == 2
    # convention flags are embedded so reports are self-describing
    assert report["config"]["psi_flag"] == ["offset", -1]
    assert report["config"]["commutator"] == "upper"
    assert "eps_rho" in report["config"]
    for case in report["cases"]:
        assert set(case) == {"id", "status", "detail"}
        assert case["status"] in ("pass", "fail")
    ids = [c["id"] for c in report["cases"]]
    assert ids == sorted(ids)


def test_csv_format(capsys):
    assert cli.main(["run-suite", "schur", "--n", "2", "--D", "2",
                     "--word-len", "2", "--format", "csv"]) == 0
    lines = [ln for ln in capsys.readouterr().out.splitlines() if ln]
    assert lines[0] == "id,status,detail"
    assert all(line.split(",")[1] == "pass" for line in lines[1:])


def test_report_deterministic():
    cfg = cli.RunConfig(n=2, D=3, window=4, suite="crystal")
    a = cli.report_to_text(cli.run_suite(cfg), "json")
    b = cli.report_to_text(cli.run_suite(cfg), "json")
    assert a == b


def test_out_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert cli.main(["run-suite", "canonical", "--n", "2", "--D", "2",
                     "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    report = json.loads(out.read_text())
    assert all(c["status"] == "pass" for c in report["cases"])


def test_cache_warm_run_identical(tmp_path, capsys):
    args = ["compute", "canonical-s", "--s", "n=2;D=2;[[1,2,1],[2,2,1]]",
            "--cache", str(tmp_path)]
    assert cli.main(args) == 0
    cold = capsys.readouterr().out
    assert any(tmp_path.iterdir())
    assert cli.main(args) == 0
    assert capsys.readouterr().out == cold


def test_transfer_compute_requires_lowering():
    with pytest.raises(SystemExit):
        cli.main(["compute", "transfer", "--s", "n=2;D=2;[[1,1,1],[2,2,1]]"])

"""Command line subcommands through the public entry point."""
from __future__ import annotations

import json

import pytest

from loopeq.cli import main


def test_lambda_text(capsys):
    assert main(["lambda", "--h", "2"]) == 0
    out = capsys.readouterr().out
    assert "21/160 * y2^3 * y1^-5" in out


def test_lambda_json(capsys):
    assert main(["lambda", "--h", "2", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc) == 3


def test_lambda_verify(capsys):
    assert main(["lambda-verify", "--max-h", "3"]) == 0
    out = capsys.readouterr().out
    assert "order 2: match (3 terms)" in out
    assert "order 3: match (11 terms)" in out


def test_count_terms_rows(capsys):
    assert main(["count-terms", "--max-h", "3", "--csv"]) == 0
    assert capsys.readouterr().out.splitlines() == ["0,1", "1,-", "2,3", "3,11"]


def test_count_terms_grid(capsys):
    assert main(["count-terms", "--grid", "--max-k", "2", "--max-h", "1", "--csv"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert "2,1,4" in rows


def test_mset(capsys):
    assert main(["mset", "--k", "2", "--h", "1"]) == 0
    assert capsys.readouterr().out.splitlines() == ["0,2", "1,0,1", "1,1", "2"]


def test_diagrams_text(capsys):
    assert main(["diagrams", "--k", "1", "--h", "1"]) == 0
    out = capsys.readouterr().out
    assert out.strip().endswith("count 3")


def test_diagrams_excluded(capsys):
    assert main(["diagrams", "--k", "0", "--h", "0"]) == 1
    assert "error" in capsys.readouterr().err


def test_diagrams_json(capsys):
    assert main(["diagrams", "--k", "1", "--h", "1", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["count"] == 3


def test_diagrams_dot(tmp_path, capsys):
    target = tmp_path / "catalog.dot"
    assert main(["diagrams", "--k", "1", "--h", "1", "--dot", str(target)]) == 0
    assert target.read_text().startswith("graph catalog {")


def test_correlator(capsys):
    assert main(["correlator", "--k", "1", "--h", "1", "--s", "1"]) == 0
    assert "B1^0(p1)" in capsys.readouterr().out


def test_cross_check(capsys):
    assert main(["cross-check", "--h", "2", "--s", "1"]) == 0
    assert capsys.readouterr().out.startswith("EQUAL")


def test_curve_moments(tmp_path, capsys):
    cfg = tmp_path / "curve.json"
    cfg.write_text(json.dumps({"t": [0, 0.5], "s": 1}))
    assert main(["curve", "--config", str(cfg), "--moments", "2"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert rows[0] == "generator,value_re,value_im"
    assert len(rows) == 5
    label, re, im = rows[-1].split(",")
    assert label == "y2_2"
    assert float(re) == pytest.approx(0.25, abs=1e-10)
    assert float(im) == pytest.approx(0.0, abs=1e-10)


def test_curve_free_energy(tmp_path, capsys):
    cfg = tmp_path / "curve.json"
    cfg.write_text(json.dumps({"t": [0, 0.5], "s": 1}))
    assert main(["curve", "--config", str(cfg), "--free-energy", "2"]) == 0
    re, im = capsys.readouterr().out.strip().split(",")
    assert float(re) == pytest.approx(-1 / 240, abs=1e-9)
    assert float(im) == pytest.approx(0.0, abs=1e-9)


def test_curve_eval_needs_points(tmp_path, capsys):
    cfg = tmp_path / "curve.json"
    cfg.write_text(json.dumps({"t": [0, 0.5], "s": 1}))
    assert main(["curve", "--config", str(cfg), "--eval", "--k", "1", "--h", "1"]) == 2
    assert main(["curve", "--config", str(cfg), "--eval", "--k", "1", "--h", "1", "--at", "3.0"]) == 0


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["curve", "--config", "x.json", "--eval", "--k", "1"])
    assert info.value.code == 2


def test_verify_all_lines(capsys, monkeypatch):
    # exercise the report format on stubbed rows; the real battery runs in
    # the acceptance suite
    from loopeq import cli, verify

    monkeypatch.setattr(cli, "run_all", lambda: [(1, True, "ok"), (2, False, "bad")])
    assert main(["verify-all"]) == 1
    out = capsys.readouterr().out
    assert "CRITERION 1 PASS  ok" in out
    assert "CRITERION 2 FAIL  bad" in out
    assert len(verify.ALL_CRITERIA) == 9

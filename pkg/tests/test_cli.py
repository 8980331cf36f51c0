"""Command-line behaviour: output formats and exit codes (0 ok, 1 verify
failure, 2 parse error, 3 unsupported regime, 4 size guard)."""

import json

import pytest
from click.testing import CliRunner

from framedtoric.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def test_dual_scenario_json(runner):
    res = runner.invoke(main, ["dual", "--scenario", "y22"])
    assert res.exit_code == 0
    payload = json.loads(res.output)
    assert len(payload["dual_fan_matrix"]) == 3
    assert len(payload["dual_fan_matrix"][0]) == 8
    assert len(payload["polynomials"]) == 2
    assert all("psi" in p for p in payload["polynomials"])


def test_dual_scenario_text(runner):
    res = runner.invoke(main, ["dual", "--scenario", "y22",
                               "--format", "text"])
    assert res.exit_code == 0
    assert "dual_fan_matrix" in res.output


def test_dual_input_file(runner, tmp_path):
    data = {"fan_matrix": [[1, 0, -1], [0, 1, -1]],
            "blocks": [[1, 1, 1]]}
    path = tmp_path / "in.json"
    path.write_text(json.dumps(data))
    res = runner.invoke(main, ["dual", "--input", str(path)])
    assert res.exit_code == 0
    payload = json.loads(res.output)
    assert len(payload["dual_fan_matrix"][0]) >= 3


def test_dual_requires_exactly_one_source(runner, tmp_path):
    res = runner.invoke(main, ["dual"])
    assert res.exit_code == 2
    path = tmp_path / "in.json"
    path.write_text("{}")
    res = runner.invoke(main, ["dual", "--scenario", "y22",
                               "--input", str(path)])
    assert res.exit_code == 2


def test_dual_malformed_input(runner, tmp_path):
    path = tmp_path / "in.json"
    path.write_text("{not json")
    res = runner.invoke(main, ["dual", "--input", str(path)])
    assert res.exit_code == 2

    path.write_text(json.dumps({"fan_matrix": [[1, 0, -1], [0, 1, -1]],
                                "blocks": [[1, 1, 0], [0, 0, 2]]}))
    res = runner.invoke(main, ["dual", "--input", str(path)])
    assert res.exit_code == 3


def test_dual_unknown_scenario(runner):
    res = runner.invoke(main, ["dual", "--scenario", "nope"])
    assert res.exit_code == 2


def test_dual_unsupported_regime(runner):
    res = runner.invoke(main, ["dual", "--scenario", "y456"])
    assert res.exit_code == 3


def test_web_scan(runner):
    res = runner.invoke(main, ["web", "--scenario", "y22", "--find-w"])
    assert res.exit_code == 0
    payload = json.loads(res.output)
    assert len(payload["admissible_W"]) == 5
    passing = [w for w in payload["admissible_W"] if w["passes_C"]]
    assert len(passing) == 1
    assert [int(x) for x in passing[0]["columns"]] == [3, 4, 5, 6]


def test_web_with_subsets(runner):
    res = runner.invoke(main, ["web", "--scenario", "y22",
                               "--subsets", "1,2;"])
    assert res.exit_code == 0
    payload = json.loads(res.output)
    assert [int(x) for x in payload["chosen_W"]] == [3, 4, 5, 6]
    assert set(payload["models"]) == {"", "1,2"}


def test_web_bad_subsets(runner):
    res = runner.invoke(main, ["web", "--scenario", "y22",
                               "--subsets", "1,x"])
    assert res.exit_code == 2
    res = runner.invoke(main, ["web", "--scenario", "y22",
                               "--subsets", "3,4"])
    assert res.exit_code == 2


def test_web_regime_guard_for_subsets(runner):
    res = runner.invoke(main, ["web", "--scenario", "y456",
                               "--subsets", "1,2"])
    assert res.exit_code == 3


def test_web_size_guard(runner):
    res = runner.invoke(main, ["web", "--scenario", "ydd:11",
                               "--subsets", "all"])
    assert res.exit_code == 4


def test_web_unknown_scenario(runner):
    res = runner.invoke(main, ["web", "--scenario", "nope", "--find-w"])
    assert res.exit_code == 2


def test_verify_appendix_ok(runner):
    res = runner.invoke(main, ["verify-appendix", "A"])
    assert res.exit_code == 0
    assert "ok: True" in res.output


def test_verify_appendix_json(runner):
    res = runner.invoke(main, ["verify-appendix", "a", "--format", "json"])
    assert res.exit_code == 0
    payload = json.loads(res.output)
    assert len(payload) == 16
    assert all(entry["ok"] for entry in payload)


def test_verify_appendix_failure_exit(runner, tmp_path, monkeypatch):
    fx = {"entries": [{"A": [1], "polynomials": [[[0]]], "ideal": [[1]]}]}
    (tmp_path / "y22_intermediate_models.json").write_text(json.dumps(fx))
    monkeypatch.setenv("MIRRORWEB_FIXTURES", str(tmp_path))
    res = runner.invoke(main, ["verify-appendix", "A"])
    assert res.exit_code == 1

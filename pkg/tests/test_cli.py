"""Tests for the command-line interface."""

import json

import pytest
from click.testing import CliRunner

from cop_ahp.facade.cli import cli
from cop_ahp.facade.io import serialize_csv_document, serialize_json_document
from fixtures import EXCHANGEABLE_4, VIOLATING_4


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def exchangeable_file(tmp_path):
    path = tmp_path / "matrix.json"
    path.write_text(serialize_json_document(EXCHANGEABLE_4))
    return str(path)


@pytest.fixture()
def violating_file(tmp_path):
    path = tmp_path / "matrix.csv"
    path.write_text(serialize_csv_document(VIOLATING_4))
    return str(path)


class TestAnalyze:
    def test_json_output(self, runner, exchangeable_file):
        result = runner.invoke(cli, ["analyze", exchangeable_file, "--json"])
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["n"] == 4
        assert payload["index_exchangeable"] is True
        assert payload["cr"] == pytest.approx(0.0377, abs=1e-3)

    def test_text_output(self, runner, exchangeable_file):
        result = runner.invoke(cli, ["analyze", exchangeable_file])
        assert result.exit_code == 0
        assert "index_exchangeable: True" in result.output

    def test_violating_matrix(self, runner, violating_file):
        result = runner.invoke(cli, ["analyze", violating_file, "--json"])
        payload = json.loads(result.output)
        assert payload["index_exchangeable"] is False
        assert payload["witnesses"]

    def test_missing_file(self, runner):
        result = runner.invoke(cli, ["analyze", "no-such-file.json"])
        assert result.exit_code != 0


class TestPrioritize:
    def test_default_method(self, runner, exchangeable_file):
        result = runner.invoke(
            cli, ["prioritize", exchangeable_file, "--json"]
        )
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["method"] == "LLSM"
        assert len(payload["w"]) == 4
        assert sum(payload["w"]) == pytest.approx(1.0)

    def test_mnv_flag(self, runner, exchangeable_file):
        result = runner.invoke(
            cli, ["prioritize", exchangeable_file, "--method", "mem",
                  "--mnv", "--json"]
        )
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["nv"] == 0.0

    def test_unknown_method(self, runner, exchangeable_file):
        result = runner.invoke(
            cli, ["prioritize", exchangeable_file, "--method", "bogus"]
        )
        assert result.exit_code != 0


class TestRevise:
    def test_compliant_matrix(self, runner, exchangeable_file):
        result = runner.invoke(cli, ["revise", exchangeable_file, "--json"])
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["status"] == "Optimal"
        assert payload["npr"] == 0

    def test_repair_with_pin(self, runner, violating_file):
        result = runner.invoke(
            cli,
            ["revise", violating_file, "--gci-bar", "0.35",
             "--pin", "1,2=6", "--json"],
        )
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["status"] == "Optimal"
        assert payload["npr"] >= 1

    def test_infeasible_pins_exit_code(self, violating_file, monkeypatch):
        from cop_ahp.facade.cli import run

        monkeypatch.setattr(
            "sys.argv",
            ["cop-ahp", "revise", violating_file, "--pin", "1,2=9",
             "--pin", "2,3=9", "--pin", "1,3=1/9"],
        )
        assert run() == 2

    def test_bad_pin_syntax(self, runner, violating_file):
        result = runner.invoke(
            cli, ["revise", violating_file, "--pin", "nonsense"]
        )
        assert result.exit_code != 0


class TestSimulate:
    def test_nv_mode_csv(self, runner):
        result = runner.invoke(
            cli,
            ["simulate", "--n", "4", "--count", "4", "--seed", "11",
             "--methods", "LLSM"],
        )
        assert result.exit_code == 0
        lines = result.output.strip().splitlines()
        assert lines[0] == "n,method,mean_nv,mean_time_s,count,seed"
        assert lines[1].startswith("4,LLSM,")

    def test_revision_mode(self, runner):
        result = runner.invoke(
            cli, ["simulate", "--n", "4", "--count", "2", "--seed", "11",
                  "--mode", "revision"]
        )
        assert result.exit_code == 0
        assert result.output.startswith(
            "n,mean_npr,mean_aoc,mean_nv,count,skipped,widened"
        )

    def test_bad_cr_band(self, runner):
        result = runner.invoke(
            cli, ["simulate", "--n", "4", "--cr-band", "nonsense"]
        )
        assert result.exit_code != 0

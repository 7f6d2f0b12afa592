import json

import pytest
from click.testing import CliRunner

import src.cli.main as cli_module
from src.cli.main import cli, validate
from src.core.acceptance import ClaimResult
from src.report.writer import read_results


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def tiny_config(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({
        "k_users": 2,
        "m_streams": [1],
        "n_t_list": [8],
        "n_r_list": [4],
        "drops": 1,
    }))
    return path


def test_sweep_writes_samples_and_summary(runner, tiny_config, tmp_path):
    out = tmp_path / "results" / "run.csv"
    result = runner.invoke(cli, ["sweep", "--config", str(tiny_config), "--out", str(out),
                                 "--seed", "4", "--archs", "cm-fd,sw", "--threads", "1", "-q"])
    assert result.exit_code == 0, result.output
    metadata, frame = read_results(str(out))
    assert metadata["seed"] == 4
    assert list(frame["arch"]) == ["cm-fd", "sw"]
    assert (tmp_path / "results" / "run_summary.csv").exists()


def test_sweep_rejects_unknown_architecture(runner, tmp_path):
    result = runner.invoke(cli, ["sweep", "--archs", "mmse", "--out", str(tmp_path / "x.csv")])
    assert result.exit_code == 1
    assert "mmse" in result.output


def test_sweep_missing_config(runner, tmp_path):
    result = runner.invoke(cli, ["sweep", "--config", str(tmp_path / "missing.json")])
    assert result.exit_code == 1


def test_sweep_unwritable_output(runner, tiny_config, tmp_path):
    blocker = tmp_path / "file.txt"
    blocker.write_text("x")
    result = runner.invoke(cli, ["sweep", "--config", str(tiny_config), "--archs", "sw",
                                 "--out", str(blocker / "run.csv"), "-q"])
    assert result.exit_code == 1


def test_power_table(runner):
    result = runner.invoke(cli, ["power-table", "--n-t", "100", "--n-r", "30", "--k", "10",
                                 "--m", "1"])
    assert result.exit_code == 0, result.output
    assert "16.843" in result.output
    assert "33.343" in result.output
    assert "1.953" in result.output
    assert "0.518" in result.output


def test_validate(runner):
    result = runner.invoke(cli, ["validate", "--instances", "2"])
    assert result.exit_code == 0, result.output
    assert "❌" not in result.output


def test_info(runner):
    result = runner.invoke(cli, ["info"])
    assert result.exit_code == 0, result.output
    assert "NumPy" in result.output
    assert "pzf-hy" in result.output


def test_acceptance_reports_margins(runner, monkeypatch):
    calls = {}

    def fake_run(config, drops, progress=False):
        calls["drops"] = drops
        return [ClaimResult("pzf-fd com maior ASE média", True, 1.12, "N_T=25: ok"),
                ClaimResult("pzf-fd com maior GEE média", False, 0.325, "N_T=100: pzf-fd/sw-phsh")]

    monkeypatch.setattr(cli_module, "run_acceptance", fake_run)
    result = runner.invoke(cli, ["acceptance", "--drops", "3"])
    assert result.exit_code == 0, result.output
    assert calls["drops"] == 3
    assert "margem 0.325" in result.output
    assert "1 de 2" in result.output

    strict = runner.invoke(cli, ["acceptance", "--drops", "3", "--strict"])
    assert strict.exit_code == 1


def test_validate_default_instances():
    option = next(p for p in validate.params if p.name == "instances")
    assert option.default == 1000

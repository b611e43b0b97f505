import json

import pytest
from click.testing import CliRunner

from disentangler.cli import OUT_DIR_ENV, main


@pytest.fixture
def runner():
    return CliRunner()


class TestCheck:
    def test_consistent_exit_zero(self, runner):
        res = runner.invoke(main, ["check", "--alpha", "0.9", "--eta-y", "0.3"])
        assert res.exit_code == 0, res.output
        body = json.loads(res.output)
        assert body["case"] == "TA"
        assert body["consistent"] is True

    def test_domain_error_exit_two(self, runner):
        res = runner.invoke(main, ["check", "--alpha", "0.9", "--eta-y", "2.0"])
        assert res.exit_code == 2
        assert "error:" in res.output or "error:" in (res.stderr or "")

    def test_missing_required_option(self, runner):
        res = runner.invoke(main, ["check", "--alpha", "0.9"])
        assert res.exit_code == 2

    def test_asym_machines(self, runner):
        res = runner.invoke(
            main,
            ["check", "--alpha", "0.8", "--eta-y", "0.5", "--eta-x", "0.6", "--lambda-x", "0.2"],
        )
        assert res.exit_code == 0, res.output
        assert json.loads(res.output)["case"] == "ASYM"


class TestFigure1:
    def test_writes_csv(self, runner, tmp_path):
        out = tmp_path / "f1.csv"
        res = runner.invoke(
            main,
            ["figure1", "--lambda-sq", "0.0", "--grid-n", "201",
             "--refine-depth", "15", "--out", str(out)],
        )
        assert res.exit_code == 0, res.output
        lines = out.read_text().splitlines()
        assert lines[0] == "lambda_sq,eta_max,binding_s,grid_n,tol"
        assert len(lines) == 2
        eta_max = float(lines[1].split(",")[1])
        assert abs(eta_max - 3**-0.5) < 1e-3

    def test_rerun_deterministic(self, runner, tmp_path):
        args = ["figure1", "--lambda-sq", "0.25", "--grid-n", "201", "--refine-depth", "15"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert runner.invoke(main, args + ["--out", str(a)]).exit_code == 0
        assert runner.invoke(main, args + ["--out", str(b)]).exit_code == 0
        assert a.read_bytes() == b.read_bytes()

    def test_out_dir_env(self, runner, tmp_path, monkeypatch):
        monkeypatch.setenv(OUT_DIR_ENV, str(tmp_path))
        res = runner.invoke(
            main, ["figure1", "--lambda-sq", "0.0", "--grid-n", "201", "--refine-depth", "10"]
        )
        assert res.exit_code == 0, res.output
        assert (tmp_path / "figure1.csv").exists()


class TestFigure2:
    def test_writes_csv(self, runner, tmp_path):
        out = tmp_path / "f2.csv"
        res = runner.invoke(
            main,
            ["figure2", "--eta-x", "0.5", "--pair", "0,0", "--grid-n", "301",
             "--refine-depth", "20", "--out", str(out)],
        )
        assert res.exit_code == 0, res.output
        lines = out.read_text().splitlines()
        assert lines[0] == "lambda_x,lambda_y,eta_x,eta_y_max,binding_s"
        assert len(lines) == 2
        eta_y_max = float(lines[1].split(",")[3])
        assert abs(0.5 * eta_y_max - 1 / 3) < 1e-3

    def test_bad_pair_exit_two(self, runner):
        res = runner.invoke(main, ["figure2", "--eta-x", "0.5", "--pair", "oops"])
        assert res.exit_code == 2
        assert "--pair" in res.output


class TestVerify:
    def test_quick_pass(self, runner):
        res = runner.invoke(main, ["verify", "--suite", "quick", "--seed", "0"])
        assert res.exit_code == 0, res.output
        assert res.output.count("[PASS]") == 5
        assert "[FAIL]" not in res.output
        assert "overall=PASS" in res.output

    def test_bad_suite(self, runner):
        res = runner.invoke(main, ["verify", "--suite", "nope"])
        assert res.exit_code == 2

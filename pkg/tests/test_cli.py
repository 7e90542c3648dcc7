import json

import pytest
from click.testing import CliRunner

from opk.cli import cli, parse_n_range


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, list(args), obj={})


def read_csv(path):
    lines = path.read_text().strip().splitlines()
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


class TestTables:
    def test_coeffs_rows(self, runner, tmp_path):
        out = tmp_path / "coeffs.csv"
        result = invoke(runner, "coeffs", "--t", "0", "--lambda", "2", "--nmax", "1", "-o", str(out))
        assert result.exit_code == 0, result.output
        rows = read_csv(out)
        assert [r["n"] for r in rows] == ["0", "1"]
        assert rows[0]["beta_increasing"] == ""

    def test_moments_json(self, runner, tmp_path):
        out = tmp_path / "moments.json"
        result = invoke(runner, "moments", "--t", "0", "--lambda", "2", "--nmax", "2",
                        "--format", "json", "-o", str(out))
        assert result.exit_code == 0, result.output
        doc = json.loads(out.read_text())
        assert doc["columns"] == ["k", "t", "lambda", "moment"]
        assert doc["rows"][0]["moment"] == "1.0e+0"
        assert [r["k"] for r in doc["rows"]] == [0, 1, 2]

    def test_moments_oracle_columns(self, runner, tmp_path):
        out = tmp_path / "oracle.csv"
        result = invoke(runner, "moments", "--t", "0", "--lambda", "0", "--nmax", "1",
                        "--oracle", "--bits", "128", "-o", str(out))
        assert result.exit_code == 0, result.output
        rows = read_csv(out)
        assert "deviation" in rows[0]

    def test_t_range_expands(self, runner, tmp_path):
        out = tmp_path / "grid.csv"
        result = invoke(runner, "coeffs", "--t", "-1:1:1", "--lambda", "0,1", "--nmax", "1", "-o", str(out))
        assert result.exit_code == 0, result.output
        rows = read_csv(out)
        assert len(rows) == 3 * 2 * 2
        assert {r["t"] for r in rows} == {"-1.0", "0.0", "1.0"}

    def test_freud_zeros(self, runner, tmp_path):
        out = tmp_path / "zeros.csv"
        result = invoke(runner, "zeros", "--family", "freud6", "--t", "0", "--lambda", "0",
                        "--nmax", "3", "-o", str(out))
        assert result.exit_code == 0, result.output
        assert len(read_csv(out)) == 3

    @pytest.mark.parametrize("args", [
        ("coeffs", "--t", "abc"),
        ("coeffs", "--t", "1:0:0.5"),
        ("coeffs", "--bits", "8"),
        ("coeffs", "--family", "hermite"),
    ])
    def test_usage_errors(self, runner, args):
        assert invoke(runner, *args).exit_code == 2


class TestVerify:
    def test_small_run_passes(self, runner, tmp_path):
        out = tmp_path / "report.json"
        result = invoke(runner, "verify", "--only", "moment-ode", "--t", "0", "--lambda", "2",
                        "--nmax", "1", "--format", "json", "-o", str(out))
        assert result.exit_code == 0, result.output
        doc = json.loads(out.read_text())
        assert doc["summary"]["fail"] == 0
        assert doc["environment"]["suites"] == "moment-ode"

    def test_unknown_suite(self, runner):
        result = invoke(runner, "verify", "--only", "bogus", "--t", "0", "--lambda", "0")
        assert result.exit_code == 2

    def test_suite_of_other_family(self, runner):
        result = invoke(runner, "verify", "--family", "freud6", "--only", "string", "--t", "0", "--lambda", "0")
        assert result.exit_code == 2

    def test_bad_index_filter(self, runner):
        result = invoke(runner, "verify", "--only", "string", "--n", "1..x")
        assert result.exit_code == 2


def test_parse_n_range():
    assert parse_n_range("5") == (5, 5)
    assert parse_n_range("1..10") == (1, 10)


class TestConfigCommands:
    def test_set_then_get(self, runner):
        assert invoke(runner, "config", "set", "bits", "384").exit_code == 0
        result = invoke(runner, "config", "get", "bits")
        assert result.exit_code == 0
        assert "bits: 384" in result.output

    def test_get_all_lists_keys(self, runner):
        result = invoke(runner, "config", "get")
        assert result.exit_code == 0
        for key in ("bits", "jobs", "format", "n-max", "digits", "richardson-levels"):
            assert f"{key}:" in result.output

    def test_unknown_key(self, runner):
        assert invoke(runner, "config", "get", "colour").exit_code == 2
        assert invoke(runner, "config", "set", "colour", "red").exit_code == 2

    def test_bad_value(self, runner):
        assert invoke(runner, "config", "set", "bits", "8").exit_code == 2

    def test_reset(self, runner):
        invoke(runner, "config", "set", "n-max", "12")
        assert invoke(runner, "config", "reset").exit_code == 0
        assert "n-max: 10" in invoke(runner, "config", "get", "n-max").output

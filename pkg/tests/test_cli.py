"""Tests for the command-line interface."""

import json
from pathlib import Path

import pytest

from digitgoldbach.cli import main
from digitgoldbach.errors import EXIT_ACCEPTANCE, EXIT_ARGUMENT, EXIT_OK, EXIT_RESOURCE


def run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, str, str]:
    """Run main and return (status, stdout, stderr)."""
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


class TestCount:
    """Tests for the count and decompose commands."""

    def test_count(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test a representation count written as JSON."""
        status, out, _ = run(capsys, "--N", "1001", "count")
        data = json.loads(out)

        assert status == EXIT_OK
        assert data["query"]["T"] == 1001
        assert data["query"]["sys"] == {"g": 10, "b": 7, "k": 4}
        assert data["count"] > 0

    def test_csv(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test flattened CSV output."""
        status, out, _ = run(
            capsys, "--N", "1001", "--format", "csv", "count", "--m", "2"
        )
        header, row = out.strip().splitlines()

        assert status == EXIT_OK
        assert "count" in header.split(",")
        assert "query.sys.g" in header.split(",")
        assert len(row.split(",")) == len(header.split(","))

    def test_check_failure(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that a failed acceptance check exits with status 3."""
        status, out, err = run(capsys, "--check", "count", "--T", "2")

        assert status == EXIT_ACCEPTANCE
        assert json.loads(out)["count"] == 0
        assert "no representations of 2" in err

    def test_decompose_check(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that the decomposition mass passes its check."""
        status, out, _ = run(capsys, "--check", "decompose", "--T", "345")

        assert status == EXIT_OK
        assert json.loads(out)["target"] == 345

    def test_missing_target(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that a command needing N fails without it."""
        status, _, err = run(capsys, "count")

        assert status == EXIT_ARGUMENT
        assert "--N is required" in err

    def test_invalid_base(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that model validation errors exit with status 1."""
        status, _, err = run(capsys, "--g", "2", "--N", "5", "count")

        assert status == EXIT_ARGUMENT
        assert err.startswith("error:")

    def test_usage_error(self) -> None:
        """Test that argparse usage errors exit with status 1."""
        with pytest.raises(SystemExit) as excinfo:
            main(["count", "--m", "4"])

        assert excinfo.value.code == EXIT_ARGUMENT


class TestOutput:
    """Tests for output files, config files and timings."""

    def test_out_file(self, capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
        """Test that --out writes the report instead of printing it."""
        path = tmp_path / "count.json"
        status, out, _ = run(capsys, "--N", "500", "--out", str(path), "count")

        assert status == EXIT_OK
        assert out == ""
        assert json.loads(path.read_text(encoding="utf-8"))["query"]["T"] == 500

    def test_config_file(
        self, capsys: pytest.CaptureFixture[str], tmp_path: Path
    ) -> None:
        """Test that the config file supplies flags and the command line wins."""
        path = tmp_path / "run.conf"
        path.write_text(
            "# defaults\ng = 10\nb = 3\nN = 500\nformat = json\n", encoding="utf-8"
        )
        status, out, _ = run(capsys, "--config", str(path), "--b", "7", "count")
        data = json.loads(out)

        assert status == EXIT_OK
        assert data["query"]["T"] == 500
        assert data["query"]["sys"]["b"] == 7

    def test_bad_config_value(
        self, capsys: pytest.CaptureFixture[str], tmp_path: Path
    ) -> None:
        """Test that a malformed config value exits with status 1."""
        path = tmp_path / "run.conf"
        path.write_text("N = many\n", encoding="utf-8")
        status, _, err = run(capsys, "--config", str(path), "count")

        assert status == EXIT_ARGUMENT
        assert "invalid N" in err

    def test_timings_excluded_by_default(
        self, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Test that runtimes appear only with --timings."""
        _, out, _ = run(capsys, "--N", "101", "--p-max", "100", "verify")
        assert "runtime" not in json.loads(out)

        _, out, _ = run(capsys, "--N", "101", "--p-max", "100", "--timings", "verify")
        assert json.loads(out)["runtime"] is not None


class TestDeterminism:
    """Tests that output does not depend on the thread count."""

    @pytest.mark.parametrize(
        "argv",
        [
            ("--p-max", "300", "verify", "--range", "1001", "1011", "2"),
            (
                "charsum",
                "squares",
                "--sweep",
                "--primes",
                "2;3;5",
                "--max-power",
                "100",
            ),
            ("charsum", "weil", "--sweep", "--primes", "3;5", "--max-degree", "2"),
            ("--Q", "4", "approximant", "deviation", "--M", "300"),
            ("--seed", "5", "experiment", "divisibility", "--param", "N=5001"),
        ],
    )
    def test_byte_identical(
        self, capsys: pytest.CaptureFixture[str], argv: tuple[str, ...]
    ) -> None:
        """Test that JSON output is the same for 1, 4 and 8 threads."""
        outputs = []
        for threads in ("1", "4", "8"):
            status, out, _ = run(capsys, "--threads", threads, *argv)
            assert status == EXIT_OK
            outputs.append(out)

        assert outputs[0] == outputs[1] == outputs[2]
        assert outputs[0]


class TestVerify:
    """Tests for the verify command."""

    def test_single(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test one target with its acceptance check."""
        status, out, _ = run(
            capsys, "--N", "1001", "--p-max", "500", "--check", "verify"
        )
        data = json.loads(out)

        assert status == EXIT_OK
        assert data["lhs_weighted"] > 0
        assert data["P_max"] == 500

    def test_range(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test a range of targets without runtimes."""
        status, out, _ = run(
            capsys, "--p-max", "200", "verify", "--range", "1001", "1006", "2"
        )
        data = json.loads(out)

        assert status == EXIT_OK
        assert [r["N"] for r in data["reports"]] == [1001, 1003, 1005]
        assert all("runtime" not in r for r in data["reports"])

    def test_resource_cap(
        self, capsys: pytest.CaptureFixture[str], tmp_path: Path
    ) -> None:
        """Test that a resource cap exits with status 2."""
        path = tmp_path / "small.conf"
        path.write_text("max-scan-length = 100\n", encoding="utf-8")
        status, _, err = run(capsys, "--config", str(path), "--N", "1001", "verify")

        assert status == EXIT_RESOURCE
        assert "max_scan_length" in err


class TestOtherCommands:
    """Tests for the fourier, charsum, approximant and experiment commands."""

    def test_fourier_transform(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test a transform of the restricted-digit measure."""
        status, out, _ = run(
            capsys,
            "--check",
            "fourier",
            "transform",
            "--k",
            "3",
            "--a",
            "1",
            "--q",
            "3",
        )
        data = json.loads(out)

        assert status == EXIT_OK
        assert 0 <= data["ratio"] <= 1

    def test_charsum_sweep(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test a square-root sweep with its acceptance check."""
        status, out, _ = run(
            capsys,
            "--check",
            "charsum",
            "squares",
            "--sweep",
            "--primes",
            "2;3",
            "--max-power",
            "50",
        )
        data = json.loads(out)

        assert status == EXIT_OK
        assert data["name"] == "square_roots"
        assert data["failures"] == []

    def test_charsum_weil(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test a single Weil check."""
        status, out, _ = run(
            capsys, "--check", "charsum", "weil", "--p", "7", "--poly", "1;0;1"
        )

        assert status == EXIT_OK
        assert json.loads(out)["distinct_roots"] == 2

    def test_approximant(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test Λ_Q at a small level."""
        status, out, _ = run(capsys, "--Q", "2", "approximant", "lambda-q", "--n", "7")
        data = json.loads(out)

        assert status == EXIT_OK
        assert data["name"] == "lambda-q"
        assert data["value_real"] == pytest.approx(2.0)

    def test_experiment(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test an experiment with key=value parameters."""
        status, out, _ = run(
            capsys,
            "--check",
            "experiment",
            "lower-bound",
            "--param",
            "start=100",
            "--param",
            "stop=104",
        )
        rows = json.loads(out)

        assert status == EXIT_OK
        assert [row["T"] for row in rows] == [100, 101, 102, 103]

    def test_experiment_bad_param(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that a parameter without '=' is rejected."""
        status, _, err = run(capsys, "experiment", "lower-bound", "--param", "start")

        assert status == EXIT_ARGUMENT
        assert "key=value" in err

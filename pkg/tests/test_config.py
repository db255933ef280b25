"""Tests for the configuration module."""

from pathlib import Path

import pytest

from digitgoldbach.config import (
    DEFAULT_CONFIG,
    DEFAULT_SIGMA0,
    ToolkitConfig,
    config_from_mapping,
    load_config_file,
    parse_config_text,
)
from digitgoldbach.errors import DigitGoldbachConfigError, DigitGoldbachResourceError


class TestToolkitConfig:
    """Tests for ToolkitConfig class."""

    def test_default_config(self) -> None:
        """Test default configuration values."""
        config = ToolkitConfig()

        assert config.sigma0 == DEFAULT_SIGMA0 == 1e-3
        assert config.p_max == 10**5
        assert config.max_table_limit == 10**8
        assert config.max_sieve_q_squared == 10**6
        assert config.well_conditioned_b_max == 200
        assert config.seed == 0
        assert config.threads == 1
        assert config.output_format == "json"

    def test_custom_config(self) -> None:
        """Test custom configuration values."""
        config = ToolkitConfig(threads=4, p_max=1000, output_format="csv")

        assert config.threads == 4
        assert config.p_max == 1000
        assert config.output_format == "csv"

    def test_invalid_sigma0(self) -> None:
        """Test that sigma0 outside (0, 1) raises error."""
        with pytest.raises(DigitGoldbachConfigError, match="sigma0"):
            ToolkitConfig(sigma0=1.5)

    def test_invalid_threads(self) -> None:
        """Test that zero threads raises error."""
        with pytest.raises(DigitGoldbachConfigError, match="threads must be positive"):
            ToolkitConfig(threads=0)

    def test_invalid_cap(self) -> None:
        """Test that a non-positive cap raises error."""
        with pytest.raises(DigitGoldbachConfigError, match="max_table_limit"):
            ToolkitConfig(max_table_limit=0)

    def test_invalid_format(self) -> None:
        """Test that an unknown output format raises error."""
        with pytest.raises(DigitGoldbachConfigError, match="output_format"):
            ToolkitConfig(output_format="xml")  # type: ignore[arg-type]

    def test_invalid_p_max(self) -> None:
        """Test that a tiny singular-series cutoff raises error."""
        with pytest.raises(DigitGoldbachConfigError, match="p_max"):
            ToolkitConfig(p_max=2)

    def test_copy(self) -> None:
        """Test creating a modified copy."""
        config = DEFAULT_CONFIG.copy(seed=7)

        assert config.seed == 7
        assert DEFAULT_CONFIG.seed == 0

    def test_copy_unknown_key(self) -> None:
        """Test that copying with an unknown key raises error."""
        with pytest.raises(
            DigitGoldbachConfigError, match="Unknown configuration keys"
        ):
            DEFAULT_CONFIG.copy(colour="red")

    def test_copy_validates(self) -> None:
        """Test that copies are validated."""
        with pytest.raises(DigitGoldbachConfigError):
            DEFAULT_CONFIG.copy(seed=-1)

    def test_require_within_cap(self) -> None:
        """Test that requests within a cap pass."""
        ToolkitConfig(max_table_limit=100).require("max_table_limit", 100, "table")

    def test_require_exceeds_cap(self) -> None:
        """Test that requests above a cap raise a resource error."""
        config = ToolkitConfig(max_table_limit=100)
        with pytest.raises(DigitGoldbachResourceError, match="table exceeds") as info:
            config.require("max_table_limit", 101, "table")
        assert info.value.limit == 100
        assert info.value.requested == 101


class TestConfigFile:
    """Tests for key=value configuration files."""

    def test_parse_typed_values(self) -> None:
        """Test that known keys are typed and dashes normalised."""
        values = parse_config_text("threads = 4\n# comment\n\np-max=1000\nsigma0=0.01")

        assert values == {"threads": 4, "p_max": 1000, "sigma0": 0.01}

    def test_parse_scientific_int(self) -> None:
        """Test that integer caps accept scientific notation."""
        assert parse_config_text("max_table_limit=1e6") == {"max_table_limit": 10**6}

    def test_unknown_keys_kept_as_strings(self) -> None:
        """Test that flag keys pass through untouched."""
        assert parse_config_text("g=10\nzeros=z.txt") == {"g": "10", "zeros": "z.txt"}

    def test_missing_equals(self) -> None:
        """Test that a line without '=' raises error."""
        with pytest.raises(DigitGoldbachConfigError, match="Line 2"):
            parse_config_text("seed=1\nthreads 4")

    def test_bad_value(self) -> None:
        """Test that an unconvertible value raises error."""
        with pytest.raises(DigitGoldbachConfigError, match="Invalid value for seed"):
            parse_config_text("seed=abc")

    def test_load_file(self, tmp_path: Path) -> None:
        """Test reading a configuration file from disk."""
        path = tmp_path / "run.conf"
        path.write_text("seed=3\nthreads=2\n", encoding="utf-8")

        assert load_config_file(path) == {"seed": 3, "threads": 2}

    def test_load_missing_file(self, tmp_path: Path) -> None:
        """Test that an unreadable file raises error."""
        with pytest.raises(DigitGoldbachConfigError, match="Cannot read config file"):
            load_config_file(tmp_path / "missing.conf")

    def test_config_from_mapping(self) -> None:
        """Test that non-config keys are ignored when building a config."""
        config = config_from_mapping({"seed": 5, "g": 10}, ToolkitConfig(threads=2))

        assert config.seed == 5
        assert config.threads == 2

"""Tests for the main DigitGoldbachToolkit class."""

import pytest

from digitgoldbach import DEFAULT_CONFIG, DigitGoldbachToolkit
from digitgoldbach.counting import count_representations
from digitgoldbach.errors import DigitGoldbachArgumentError, DigitGoldbachConfigError
from digitgoldbach.experiments import LowerBoundExperiment
from digitgoldbach.models import DigitSystem, RepCountQuery
from digitgoldbach.verify import verify_target


class TestToolkitInitialization:
    """Tests for toolkit initialization."""

    def test_default_initialization(self) -> None:
        """Test default toolkit initialization."""
        toolkit = DigitGoldbachToolkit()

        assert toolkit.config is DEFAULT_CONFIG
        toolkit.close()

    def test_with_overrides(self) -> None:
        """Test toolkit with configuration overrides."""
        toolkit = DigitGoldbachToolkit(threads=2, seed=5, p_max=1000)

        assert toolkit.config.threads == 2
        assert toolkit.config.seed == 5
        assert toolkit.config.p_max == 1000
        toolkit.close()

    def test_invalid_override(self) -> None:
        """Test that invalid overrides are rejected."""
        with pytest.raises(DigitGoldbachConfigError, match="threads"):
            DigitGoldbachToolkit(threads=0)

    def test_context_manager(self) -> None:
        """Test toolkit as context manager."""
        with DigitGoldbachToolkit() as toolkit:
            assert toolkit is not None

    def test_repr(self) -> None:
        """Test toolkit string representation."""
        toolkit = DigitGoldbachToolkit(seed=3)
        assert repr(toolkit) == "DigitGoldbachToolkit(seed=3, threads=1)"


class TestToolkitCaches:
    """Tests for cached tables and convolutions."""

    def test_tables_grow(self) -> None:
        """Test that tables are rebuilt only for a larger limit."""
        toolkit = DigitGoldbachToolkit()
        small = toolkit.tables(100)

        assert toolkit.tables(50) is small
        assert toolkit.tables(300).limit >= 300

    def test_convolution_cached(self) -> None:
        """Test that one convolution is kept per digit system."""
        toolkit = DigitGoldbachToolkit()
        sys = DigitSystem(g=10, b=7, k=3)
        conv = toolkit.convolution(sys)

        assert toolkit.convolution(sys) is conv
        toolkit.close()
        assert toolkit.convolution(sys) is not conv


class TestToolkitComputations:
    """Tests for the toolkit's computations."""

    def test_count(self) -> None:
        """Test count against the counting module."""
        toolkit = DigitGoldbachToolkit()
        sys = DigitSystem.for_target(1001, 10, 7)

        assert toolkit.count(1001, 10, 7) == count_representations(
            RepCountQuery(T=1001, m=3, sys=sys)
        )
        with_zero = RepCountQuery(T=1001, m=2, sys=sys, include_zero=True)
        assert toolkit.count(
            1001, 10, 7, m=2, include_zero=True
        ) == count_representations(with_zero)

    def test_verify(self) -> None:
        """Test verify against verify_target with the configured P_max."""
        toolkit = DigitGoldbachToolkit(p_max=500)
        report = toolkit.verify(1001, 10, 7)

        assert report.P_max == 500
        assert report == verify_target(1001, 10, 7, 500)
        assert toolkit.verify(1003, 10, 7).k == report.k

    def test_verify_range(self) -> None:
        """Test batch verification with the configured threads."""
        toolkit = DigitGoldbachToolkit(p_max=500, threads=2)
        summary = toolkit.verify_range([101, 103, 105], 10, 7)

        assert [r.N for r in summary.reports] == [101, 103, 105]
        assert summary.errors == ()


class TestToolkitExperiments:
    """Tests for experiment lookup and runs."""

    def test_get_experiment(self) -> None:
        """Test that experiments are created once per name."""
        toolkit = DigitGoldbachToolkit()
        experiment = toolkit.get_experiment("lower-bound")

        assert isinstance(experiment, LowerBoundExperiment)
        assert toolkit.get_experiment("lower-bound") is experiment

    def test_unknown_experiment(self) -> None:
        """Test that an unknown name is an argument error."""
        with pytest.raises(DigitGoldbachArgumentError, match="unknown experiment"):
            DigitGoldbachToolkit().get_experiment("nonexistent")

    def test_experiment(self) -> None:
        """Test running an experiment by name."""
        rows = DigitGoldbachToolkit().experiment("lower-bound", start=100, stop=103)

        assert [row.T for row in rows] == [100, 101, 102]

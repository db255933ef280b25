"""Tests for the error handling module."""

import pytest

from digitgoldbach.errors import (
    EXIT_ACCEPTANCE,
    EXIT_ARGUMENT,
    EXIT_RESOURCE,
    DigitGoldbachAcceptanceError,
    DigitGoldbachArgumentError,
    DigitGoldbachConfigError,
    DigitGoldbachDiagnosticError,
    DigitGoldbachDomainError,
    DigitGoldbachEmptySupportError,
    DigitGoldbachError,
    DigitGoldbachParseError,
    DigitGoldbachRangeError,
    DigitGoldbachResourceError,
    exit_code_for,
)


class TestErrorHierarchy:
    """Tests for error class hierarchy."""

    def test_base_error(self) -> None:
        """Test base DigitGoldbachError."""
        error = DigitGoldbachError("Test error")
        assert str(error) == "Test error"
        assert error.message == "Test error"
        assert isinstance(error, Exception)

    def test_config_error(self) -> None:
        """Test DigitGoldbachConfigError."""
        error = DigitGoldbachConfigError("Invalid config")
        assert isinstance(error, DigitGoldbachError)
        assert str(error) == "Invalid config"

    def test_argument_error(self) -> None:
        """Test DigitGoldbachArgumentError with field and value."""
        error = DigitGoldbachArgumentError("p must be prime", field="p", value=9)

        assert error.field == "p"
        assert error.value == 9
        assert str(error) == "p must be prime | Field: p | Value: 9"

    def test_argument_error_message_only(self) -> None:
        """Test DigitGoldbachArgumentError without details."""
        assert str(DigitGoldbachArgumentError("bad")) == "bad"

    def test_range_and_domain_are_argument_errors(self) -> None:
        """Test that range and domain errors specialise argument errors."""
        assert isinstance(
            DigitGoldbachRangeError("n too large"), DigitGoldbachArgumentError
        )
        assert isinstance(DigitGoldbachDomainError("n = 0"), DigitGoldbachArgumentError)

    def test_resource_error(self) -> None:
        """Test DigitGoldbachResourceError."""
        error = DigitGoldbachResourceError("table too large", limit=100, requested=1000)

        assert error.limit == 100
        assert error.requested == 1000
        assert "Limit: 100" in str(error)
        assert "Requested: 1000" in str(error)

    def test_parse_error(self) -> None:
        """Test DigitGoldbachParseError with a line number."""
        error = DigitGoldbachParseError("malformed row", line=7)

        assert error.line == 7
        assert str(error) == "malformed row | Line: 7"
        assert str(DigitGoldbachParseError("empty")) == "empty"

    def test_other_errors(self) -> None:
        """Test the remaining error classes."""
        for cls in (
            DigitGoldbachEmptySupportError,
            DigitGoldbachDiagnosticError,
            DigitGoldbachAcceptanceError,
        ):
            error = cls("message")
            assert isinstance(error, DigitGoldbachError)
            assert str(error) == "message"


class TestExitCodeFor:
    """Tests for exit_code_for function."""

    def test_resource(self) -> None:
        """Test that resource caps map to exit code 2."""
        assert exit_code_for(DigitGoldbachResourceError("cap")) == EXIT_RESOURCE == 2

    def test_acceptance(self) -> None:
        """Test that failed checks map to exit code 3."""
        error = DigitGoldbachAcceptanceError("check")
        assert exit_code_for(error) == EXIT_ACCEPTANCE == 3

    @pytest.mark.parametrize(
        "error",
        [
            DigitGoldbachArgumentError("bad"),
            DigitGoldbachConfigError("bad"),
            DigitGoldbachParseError("bad", line=1),
            DigitGoldbachEmptySupportError("bad"),
            ValueError("bad"),
        ],
    )
    def test_argument(self, error: BaseException) -> None:
        """Test that every other error maps to exit code 1."""
        assert exit_code_for(error) == EXIT_ARGUMENT == 1

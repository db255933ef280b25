"""
Digit-Goldbach Exception Hierarchy.

This module defines the exceptions raised by the toolkit and the mapping
from exceptions to command-line exit codes.
"""

from __future__ import annotations

from typing import Any


EXIT_OK = 0
EXIT_ARGUMENT = 1
EXIT_RESOURCE = 2
EXIT_ACCEPTANCE = 3


class DigitGoldbachError(Exception):
    """
    Base exception for all toolkit errors.

    Every exception raised on purpose by the toolkit inherits from this
    class, so callers can catch toolkit failures with one except clause.
    """

    def __init__(self, message: str, *args: Any) -> None:
        """
        Initialize the base error.

        Args:
            message: Human-readable error description.
            *args: Additional positional arguments passed to Exception.
        """
        self.message = message
        super().__init__(message, *args)

    def __str__(self) -> str:
        """Return string representation of the error."""
        return self.message


class DigitGoldbachConfigError(DigitGoldbachError):
    """
    Invalid configuration or malformed configuration file.

    Raised when ToolkitConfig receives out-of-range values or when a
    key=value configuration file cannot be interpreted.
    """

    pass


class DigitGoldbachArgumentError(DigitGoldbachError):
    """
    A precondition of an operation was violated.

    Raised for non-prime moduli where a prime is required, inverted
    probability arguments, non-primitive characters and similar misuse.
    """

    def __init__(
        self,
        message: str,
        field: str | None = None,
        value: Any = None,
    ) -> None:
        """
        Initialize the argument error.

        Args:
            message: Human-readable error description.
            field: The argument that failed validation.
            value: The offending value.
        """
        super().__init__(message)
        self.field = field
        self.value = value

    def __str__(self) -> str:
        """Return string representation with argument details."""
        parts = [self.message]
        if self.field:
            parts.append(f"Field: {self.field}")
        if self.value is not None:
            parts.append(f"Value: {self.value!r}")
        return " | ".join(parts)


class DigitGoldbachRangeError(DigitGoldbachArgumentError):
    """
    A value lies outside the range of a digit system.

    Raised, for example, when n ≥ g^k is converted to k digits or a
    decomposition target exceeds 2·g^k.
    """

    pass


class DigitGoldbachDomainError(DigitGoldbachArgumentError):
    """A function was evaluated outside its domain (e.g. n = 0)."""

    pass


class DigitGoldbachResourceError(DigitGoldbachError):
    """
    A configured resource cap would be exceeded.

    Raised before any large allocation happens, so exceeding a cap never
    leaves partial state behind.
    """

    def __init__(
        self,
        message: str,
        limit: int | float | None = None,
        requested: int | float | None = None,
    ) -> None:
        """
        Initialize the resource error.

        Args:
            message: Human-readable error description.
            limit: The configured cap.
            requested: The size that was requested.
        """
        super().__init__(message)
        self.limit = limit
        self.requested = requested

    def __str__(self) -> str:
        """Return string representation with cap details."""
        parts = [self.message]
        if self.limit is not None:
            parts.append(f"Limit: {self.limit}")
        if self.requested is not None:
            parts.append(f"Requested: {self.requested}")
        return " | ".join(parts)


class DigitGoldbachParseError(DigitGoldbachError):
    """
    Input data could not be parsed.

    Carries the 1-based line number of the offending row when known.
    """

    def __init__(self, message: str, line: int | None = None) -> None:
        """
        Initialize the parse error.

        Args:
            message: Human-readable error description.
            line: 1-based line number in the input file.
        """
        super().__init__(message)
        self.line = line

    def __str__(self) -> str:
        """Return string representation with the line number."""
        if self.line is not None:
            return f"{self.message} | Line: {self.line}"
        return self.message


class DigitGoldbachEmptySupportError(DigitGoldbachError):
    """
    A distribution to sample from has no support.

    Raised when a representation count is zero but a uniform draw or an
    experiment over representations was requested.
    """

    pass


class DigitGoldbachDiagnosticError(DigitGoldbachError):
    """
    A numerical identity could not be set up.

    Raised when an auxiliary parameter (such as the additive parameter of a
    character on 1 + p^α·Z) cannot be solved for.
    """

    pass


class DigitGoldbachAcceptanceError(DigitGoldbachError):
    """An acceptance assertion evaluated in check mode failed."""

    pass


def exit_code_for(error: BaseException) -> int:
    """
    Map an exception to the command-line exit code.

    Args:
        error: The exception that terminated a command.

    Returns:
        2 for resource caps, 3 for failed acceptance checks and 1 for every
        other toolkit or argument error.

    Example:
        >>> exit_code_for(DigitGoldbachResourceError("too large"))
        2
    """
    if isinstance(error, DigitGoldbachResourceError):
        return EXIT_RESOURCE
    if isinstance(error, DigitGoldbachAcceptanceError):
        return EXIT_ACCEPTANCE
    return EXIT_ARGUMENT

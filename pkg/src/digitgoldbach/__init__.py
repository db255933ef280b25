"""
Digit Goldbach Toolkit.

Computations around the ternary Goldbach problem for primes whose base-g
expansion avoids one digit: exact representation counts and carry
decompositions, Fourier transforms of digit product measures, Dirichlet
character sums, Fourier approximants to the von Mangoldt function and
numerical circle-method verification.

Basic Usage:
    >>> from digitgoldbach import DigitGoldbachToolkit
    >>> toolkit = DigitGoldbachToolkit()
    >>> toolkit.count(1001, g=10, b=7) > 0
    True
    >>> report = toolkit.verify(1001, g=10, b=7)
    >>> print(f"ratio {report.ratio:.3f}")

Experiments:
    >>> rows = toolkit.experiment("divisibility", N=100_001, d="1;10;100")

Command line:
    $ digit-goldbach --g 10 --b 7 --N 1001 verify
    $ digit-goldbach charsum weil --sweep --primes "3;5;7" --max-degree 3
"""

from digitgoldbach.config import DEFAULT_CONFIG, ToolkitConfig
from digitgoldbach.errors import (
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
)
from digitgoldbach.models import (
    Block,
    CarryDecomposition,
    DigitSystem,
    DigitVector,
    ExperimentConfig,
    Frequency,
    ProductMeasure,
    RepCountQuery,
    VerificationReport,
    VerificationSummary,
    ZeroDatum,
    ZeroSet,
)
from digitgoldbach.toolkit import DigitGoldbachToolkit
from digitgoldbach.utils import render_report, setup_logging, write_report


__version__ = "0.1.0"
__all__ = [
    # Main toolkit
    "DigitGoldbachToolkit",
    "ToolkitConfig",
    "DEFAULT_CONFIG",
    # Errors
    "DigitGoldbachError",
    "DigitGoldbachAcceptanceError",
    "DigitGoldbachArgumentError",
    "DigitGoldbachConfigError",
    "DigitGoldbachDiagnosticError",
    "DigitGoldbachDomainError",
    "DigitGoldbachEmptySupportError",
    "DigitGoldbachParseError",
    "DigitGoldbachRangeError",
    "DigitGoldbachResourceError",
    # Models
    "Block",
    "CarryDecomposition",
    "DigitSystem",
    "DigitVector",
    "ExperimentConfig",
    "Frequency",
    "ProductMeasure",
    "RepCountQuery",
    "VerificationReport",
    "VerificationSummary",
    "ZeroDatum",
    "ZeroSet",
    # Utilities
    "render_report",
    "setup_logging",
    "write_report",
]

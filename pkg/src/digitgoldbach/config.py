"""
Digit-Goldbach Configuration.

This module provides configuration management for the toolkit: resource
caps guarding every large allocation, analytic defaults (σ₀, P_max, scan
plans) and run options such as seed, thread count and output format.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Literal

from digitgoldbach.errors import DigitGoldbachConfigError, DigitGoldbachResourceError


# Resource caps
DEFAULT_MAX_TABLE_LIMIT = 10**8
DEFAULT_MAX_GRID_POINTS = 2**26
DEFAULT_MAX_SIEVE_Q_SQUARED = 10**6
DEFAULT_MAX_CHARACTER_MODULUS = 10**6
DEFAULT_MAX_POLYNOMIAL_DEGREE = 8
DEFAULT_MAX_PRIME_POWER = 10**6
DEFAULT_MAX_SCAN_LENGTH = 10**7
DEFAULT_MAX_DIRECT_TARGET = 10**5
DEFAULT_MAX_F_CHI_MODULUS = 10**5

# Analytic defaults
DEFAULT_SIGMA0 = 1e-3
DEFAULT_P_MAX = 10**5
DEFAULT_FAREY_LIMIT = 64
DEFAULT_GRID_SIZE = 4096
DEFAULT_WELL_CONDITIONED_B_MAX = 200

# Run options
DEFAULT_SEED = 0
DEFAULT_THREADS = 1

_CAP_FIELDS = (
    "max_table_limit",
    "max_grid_points",
    "max_sieve_q_squared",
    "max_character_modulus",
    "max_polynomial_degree",
    "max_prime_power",
    "max_scan_length",
    "max_direct_target",
    "max_f_chi_modulus",
)


@dataclass(frozen=True)
class ToolkitConfig:
    """
    Configuration for the toolkit.

    Attributes:
        max_table_limit: Largest sieve limit for arithmetic tables.
        max_grid_points: Largest quadrature grid (oversampling·g^k).
        max_sieve_q_squared: Largest Q² accepted by large-sieve sums.
        max_character_modulus: Largest modulus for character groups.
        max_polynomial_degree: Largest polynomial degree in Weil checks.
        max_prime_power: Largest p^k scanned exhaustively.
        max_scan_length: Largest M for deviation scans and ternary sums.
        max_direct_target: Largest N for direct-enumeration experiments.
        max_f_chi_modulus: Largest q·Q in F_{χ,Q} evaluation.
        sigma0: Width of the zero window 1 − β ≤ σ₀.
        p_max: Truncation point of the singular series.
        farey_limit: Largest denominator sampled by deviation scans.
        grid_size: Uniform grid size sampled by deviation scans.
        well_conditioned_b_max: Cap on b in the well-conditioned fraction test.
        seed: Seed for every random experiment.
        threads: Worker threads for parallel sweeps.
        output_format: Report format ("json" or "csv").

    Example:
        >>> config = ToolkitConfig(threads=4, p_max=10**4)
        >>> config.copy(seed=7).seed
        7
    """

    max_table_limit: int = DEFAULT_MAX_TABLE_LIMIT
    max_grid_points: int = DEFAULT_MAX_GRID_POINTS
    max_sieve_q_squared: int = DEFAULT_MAX_SIEVE_Q_SQUARED
    max_character_modulus: int = DEFAULT_MAX_CHARACTER_MODULUS
    max_polynomial_degree: int = DEFAULT_MAX_POLYNOMIAL_DEGREE
    max_prime_power: int = DEFAULT_MAX_PRIME_POWER
    max_scan_length: int = DEFAULT_MAX_SCAN_LENGTH
    max_direct_target: int = DEFAULT_MAX_DIRECT_TARGET
    max_f_chi_modulus: int = DEFAULT_MAX_F_CHI_MODULUS
    sigma0: float = DEFAULT_SIGMA0
    p_max: int = DEFAULT_P_MAX
    farey_limit: int = DEFAULT_FAREY_LIMIT
    grid_size: int = DEFAULT_GRID_SIZE
    well_conditioned_b_max: int = DEFAULT_WELL_CONDITIONED_B_MAX
    seed: int = DEFAULT_SEED
    threads: int = DEFAULT_THREADS
    output_format: Literal["json", "csv"] = "json"

    def __post_init__(self) -> None:
        """Validate configuration after initialization."""
        self._validate()

    def _validate(self) -> None:
        """
        Validate configuration values.

        Raises:
            DigitGoldbachConfigError: If any configuration value is invalid.
        """
        for name in _CAP_FIELDS:
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise DigitGoldbachConfigError(
                    f"{name} must be a positive integer: {value!r}"
                )

        if not 0 < self.sigma0 < 1:
            raise DigitGoldbachConfigError(f"sigma0 must lie in (0, 1): {self.sigma0}")

        if self.p_max < 3:
            raise DigitGoldbachConfigError(f"p_max must be at least 3: {self.p_max}")

        if self.farey_limit < 1:
            raise DigitGoldbachConfigError(
                f"farey_limit must be positive: {self.farey_limit}"
            )

        if self.grid_size < 0:
            raise DigitGoldbachConfigError(
                f"grid_size cannot be negative: {self.grid_size}"
            )

        if self.well_conditioned_b_max < 2:
            raise DigitGoldbachConfigError(
                f"well_conditioned_b_max must be at least 2: "
                f"{self.well_conditioned_b_max}"
            )

        if self.seed < 0:
            raise DigitGoldbachConfigError(f"seed cannot be negative: {self.seed}")

        if self.threads < 1:
            raise DigitGoldbachConfigError(f"threads must be positive: {self.threads}")

        if self.output_format not in ("json", "csv"):
            raise DigitGoldbachConfigError(
                f"output_format must be 'json' or 'csv': {self.output_format}"
            )

    def require(self, cap: str, requested: int | float, what: str) -> None:
        """
        Check a requested size against one of the resource caps.

        Args:
            cap: Name of the cap attribute (e.g. "max_table_limit").
            requested: The size about to be allocated or scanned.
            what: Short description used in the error message.

        Raises:
            DigitGoldbachResourceError: If requested exceeds the cap.
        """
        limit = getattr(self, cap)
        if requested > limit:
            raise DigitGoldbachResourceError(
                f"{what} exceeds configured {cap}", limit=limit, requested=requested
            )

    def copy(self, **updates: Any) -> "ToolkitConfig":
        """
        Create a validated copy with some fields replaced.

        Args:
            **updates: Field values to override.

        Returns:
            A new ToolkitConfig.

        Raises:
            DigitGoldbachConfigError: If an unknown field is given or a value
                is invalid.
        """
        known = {f.name for f in dataclasses.fields(self)}
        unknown = set(updates) - known
        if unknown:
            raise DigitGoldbachConfigError(
                f"Unknown configuration keys: {', '.join(sorted(unknown))}"
            )
        return dataclasses.replace(self, **updates)


DEFAULT_CONFIG = ToolkitConfig()


def _coerce(name: str, raw: str) -> Any:
    """Convert a raw string to the type of the named config field."""
    kind = {f.name: f.type for f in dataclasses.fields(ToolkitConfig)}[name]
    try:
        if kind in ("int", int):
            return int(float(raw)) if "e" in raw.lower() else int(raw)
        if kind in ("float", float):
            return float(raw)
    except ValueError as exc:
        raise DigitGoldbachConfigError(
            f"Invalid value for {name}: {raw!r}"
        ) from exc
    return raw


def parse_config_text(text: str) -> dict[str, Any]:
    """
    Parse key=value configuration text.

    Blank lines and lines starting with ``#`` are ignored. Keys may use
    dashes or underscores. Keys that are not configuration fields are
    returned untouched so the CLI can treat them as flag defaults.

    Args:
        text: The file contents.

    Returns:
        A mapping of normalized keys to typed values.

    Raises:
        DigitGoldbachConfigError: If a line has no ``=`` or a value does
            not convert to the field type.

    Example:
        >>> parse_config_text("threads = 4\\n# comment\\np-max=1000")
        {'threads': 4, 'p_max': 1000}
    """
    known = {f.name for f in dataclasses.fields(ToolkitConfig)}
    values: dict[str, Any] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise DigitGoldbachConfigError(
                f"Line {number}: expected key=value, got {stripped!r}"
            )
        key, raw = (part.strip() for part in stripped.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        values[key] = _coerce(key, raw) if key in known else raw
    return values


def load_config_file(path: str | Path) -> dict[str, Any]:
    """
    Read a key=value configuration file.

    Args:
        path: Path to the file.

    Returns:
        The parsed mapping (see parse_config_text).

    Raises:
        DigitGoldbachConfigError: If the file cannot be read or parsed.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DigitGoldbachConfigError(
            f"Cannot read config file {path}: {exc}"
        ) from exc
    return parse_config_text(text)


def config_from_mapping(
    values: dict[str, Any], base: ToolkitConfig | None = None
) -> ToolkitConfig:
    """
    Build a ToolkitConfig from a mapping, ignoring non-config keys.

    Args:
        values: Parsed key/value pairs.
        base: Configuration to start from (defaults to DEFAULT_CONFIG).

    Returns:
        The validated configuration.
    """
    known = {f.name for f in dataclasses.fields(ToolkitConfig)}
    start = base or DEFAULT_CONFIG
    return start.copy(**{k: v for k, v in values.items() if k in known})

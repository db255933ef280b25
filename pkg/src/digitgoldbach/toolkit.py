"""
Digit Goldbach Toolkit - Main Entry Point.

This module provides the DigitGoldbachToolkit class, which bundles a
configuration with the computations and registered experiments that use it.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from typing import Any

from digitgoldbach.config import DEFAULT_CONFIG, ToolkitConfig, config_from_mapping
from digitgoldbach.counting import count_representations
from digitgoldbach.errors import DigitGoldbachArgumentError
from digitgoldbach.experiments import EXPERIMENTS, BaseExperiment
from digitgoldbach.models import (
    DigitGoldbachBaseModel,
    DigitSystem,
    ExperimentConfig,
    RepCountQuery,
    VerificationReport,
    VerificationSummary,
)
from digitgoldbach.numtheory import ArithmeticTables, build_tables
from digitgoldbach.verify import (
    LhsMode,
    TernaryConvolution,
    verify_range,
    verify_target,
)


logger = logging.getLogger("digitgoldbach")


class DigitGoldbachToolkit:
    """
    Facade over the toolkit's computations.

    The toolkit holds one ToolkitConfig, caches the arithmetic tables and
    ternary convolutions it builds, and creates registered experiments on
    first use.

    Example:
        >>> with DigitGoldbachToolkit(threads=2) as toolkit:
        ...     report = toolkit.verify(1001, g=10, b=7)
        >>> report.main_term > 0
        True

        Running an experiment:

        >>> rows = DigitGoldbachToolkit().experiment("lower-bound", start=100, stop=120)
    """

    def __init__(self, config: ToolkitConfig | None = None, **overrides: Any) -> None:
        """
        Initialize the toolkit.

        Args:
            config: Base configuration (defaults to DEFAULT_CONFIG).
            **overrides: ToolkitConfig fields to override.

        Raises:
            DigitGoldbachConfigError: If the configuration is invalid.
        """
        base = config or DEFAULT_CONFIG
        self._config = config_from_mapping(overrides, base) if overrides else base
        self._tables: ArithmeticTables | None = None
        self._convolutions: dict[tuple[int, int, int], TernaryConvolution] = {}
        self._experiments: dict[str, BaseExperiment[Any]] = {}

    @property
    def config(self) -> ToolkitConfig:
        """Get the toolkit configuration."""
        return self._config

    def tables(self, limit: int) -> ArithmeticTables:
        """Return tables covering [0, limit], rebuilding only when they grow."""
        if self._tables is None or self._tables.limit < limit:
            self._tables = build_tables(limit, self._config)
        return self._tables

    def count(self, T: int, g: int, b: int, m: int = 3, **options: Any) -> int:
        """Count representations of T as a sum of m restricted-digit integers."""
        query = RepCountQuery(
            T=T, m=m, sys=DigitSystem.for_target(max(T, 1), g, b), **options
        )
        return count_representations(query)

    def convolution(self, sys: DigitSystem) -> TernaryConvolution:
        """Return the cached ternary convolution of a digit system."""
        key = (sys.g, sys.b, sys.k)
        if key not in self._convolutions:
            logger.debug("Building convolution for g=%d b=%d k=%d", *key)
            self._convolutions[key] = TernaryConvolution(sys, self._config)
        return self._convolutions[key]

    def verify(
        self,
        N: int,
        g: int,
        b: int,
        P_max: int | None = None,
        mode: LhsMode = "fft",
        timings: bool = False,
    ) -> VerificationReport:
        """Verify one target, reusing the cached convolution for its digit length."""
        convolution = (
            self.convolution(DigitSystem.for_target(N, g, b)) if mode == "fft" else None
        )
        return verify_target(
            N,
            g,
            b,
            P_max or self._config.p_max,
            mode=mode,
            convolution=convolution,
            timings=timings,
            config=self._config,
        )

    def verify_range(
        self,
        targets: Iterable[int],
        g: int,
        b: int,
        P_max: int | None = None,
        mode: LhsMode = "fft",
        timings: bool = False,
    ) -> VerificationSummary:
        """Verify a batch of targets with the configured thread count."""
        return verify_range(
            targets,
            g,
            b,
            P_max or self._config.p_max,
            mode=mode,
            threads=self._config.threads,
            timings=timings,
            config=self._config,
        )

    def get_experiment(self, name: str) -> BaseExperiment[Any]:
        """
        Return the registered experiment called name.

        Raises:
            DigitGoldbachArgumentError: If no experiment has that name.
        """
        if name not in self._experiments:
            if name not in EXPERIMENTS:
                raise DigitGoldbachArgumentError(
                    f"unknown experiment {name!r}", field="name", value=name
                )
            self._experiments[name] = EXPERIMENTS[name](self._config)
        return self._experiments[name]

    def experiment(self, name: str, **params: Any) -> list[DigitGoldbachBaseModel]:
        """Run a registered experiment with the configured seed and threads."""
        logger.info("Running experiment %s", name)
        rows = self.get_experiment(name).run(
            ExperimentConfig(
                name=name,
                params=params,
                seed=self._config.seed,
                threads=self._config.threads,
            )
        )
        logger.info("Experiment %s produced %d rows", name, len(rows))
        return rows

    def close(self) -> None:
        """Drop cached tables and convolutions."""
        self._tables = None
        self._convolutions.clear()

    def __enter__(self) -> "DigitGoldbachToolkit":
        """Enter the context manager."""
        return self

    def __exit__(self, *args: Any) -> None:
        """Exit the context manager and release caches."""
        self.close()

    def __repr__(self) -> str:
        """Return string representation of the toolkit."""
        config = self._config
        return f"DigitGoldbachToolkit(seed={config.seed}, threads={config.threads})"

"""
Base Experiment Class.

This module provides the base class for the registered experiments, with
common functionality for reading parameters and validating results.
"""

from __future__ import annotations

from collections.abc import Mapping
from typing import Any, Generic, TypeVar

from pydantic import ValidationError

from digitgoldbach.config import DEFAULT_CONFIG, ToolkitConfig
from digitgoldbach.errors import DigitGoldbachArgumentError
from digitgoldbach.models import DigitGoldbachBaseModel, DigitSystem, ExperimentConfig


T = TypeVar("T", bound=DigitGoldbachBaseModel)

ParamValue = int | float | str | bool | list[int] | list[float]


def coerce_param(raw: Any) -> Any:
    """
    Turn a command-line parameter string into a value.

    Integers and floats are recognised, ``true``/``false`` become booleans
    and ``;``-separated values become lists. Non-strings pass through.

    Example:
        >>> coerce_param("10;100")
        [10, 100]
    """
    if not isinstance(raw, str):
        return raw
    text = raw.strip()
    if ";" in text:
        return [coerce_param(part) for part in text.split(";") if part.strip()]
    if text.lower() in ("true", "false"):
        return text.lower() == "true"
    for kind in (int, float):
        try:
            return kind(text)
        except ValueError:
            continue
    return text


class BaseExperiment(Generic[T]):
    """
    Base class for all registered experiments.

    Subclasses set the registered name and result model and implement
    _run, which receives coerced parameters.

    Type Parameters:
        T: The pydantic model type of one result row.

    Attributes:
        _config: Toolkit configuration.
        _name: Registered experiment name.
        _result_model: Model class of a result row.
    """

    _name: str = ""
    _result_model: type[T]

    def __init__(self, config: ToolkitConfig = DEFAULT_CONFIG) -> None:
        """
        Initialize the experiment.

        Args:
            config: Toolkit configuration (caps and defaults).
        """
        self._config = config

    @property
    def name(self) -> str:
        """Return the registered name."""
        return self._name

    def run(self, experiment: ExperimentConfig) -> list[T]:
        """
        Run the experiment described by an ExperimentConfig.

        Args:
            experiment: Name, parameters, seed and thread count.

        Returns:
            Result rows.

        Raises:
            DigitGoldbachArgumentError: If the config names another
                experiment or a parameter is missing or malformed.
        """
        if experiment.name != self._name:
            raise DigitGoldbachArgumentError(
                f"experiment {experiment.name!r} routed to {self._name!r}", field="name"
            )
        params = {
            k.replace("-", "_"): coerce_param(v) for k, v in experiment.params.items()
        }
        return self._run(params, experiment.seed, experiment.threads)

    def run_params(
        self, seed: int = 0, threads: int = 1, **params: ParamValue
    ) -> list[T]:
        """Run with keyword parameters."""
        return self.run(
            ExperimentConfig(name=self._name, params=params, seed=seed, threads=threads)
        )

    def check(self, results: list[T]) -> list[str]:
        """Return descriptions of failed acceptance assertions (none by default)."""
        return []

    def _run(self, params: dict[str, Any], seed: int, threads: int) -> list[T]:
        raise NotImplementedError

    # -------------------------------------------------------------------------
    # Parameter helpers
    # -------------------------------------------------------------------------

    def _param(
        self, params: Mapping[str, Any], key: str, kind: type, default: Any = None
    ) -> Any:
        """
        Read one parameter, converting it to kind.

        Raises:
            DigitGoldbachArgumentError: If it is missing without default or
                cannot be converted.
        """
        if key not in params:
            if default is None:
                raise DigitGoldbachArgumentError(
                    f"missing parameter {key!r}", field=key
                )
            return default
        value = params[key]
        try:
            if kind is list:
                return list(value) if isinstance(value, (list, tuple)) else [value]
            if kind is bool and isinstance(value, str):
                return value.lower() == "true"
            return kind(value)
        except (TypeError, ValueError) as e:
            raise DigitGoldbachArgumentError(
                f"parameter {key!r} must be {kind.__name__}", field=key, value=value
            ) from e

    def _system(self, params: Mapping[str, Any], target: int) -> DigitSystem:
        """Build the digit system bracketing target from the g and b parameters."""
        try:
            return DigitSystem.for_target(
                target,
                self._param(params, "g", int, 10),
                self._param(params, "b", int, 7),
            )
        except (ValidationError, ValueError) as e:
            raise DigitGoldbachArgumentError(
                "invalid digit system parameters", field="g", value=dict(params)
            ) from e

    def _validate(self, data: dict[str, Any]) -> T:
        """
        Validate one result row.

        Raises:
            DigitGoldbachArgumentError: If validation fails.
        """
        try:
            return self._result_model.model_validate(data)
        except ValidationError as e:
            raise DigitGoldbachArgumentError(
                f"Failed to validate {self._result_model.__name__}",
                field=str(e.errors()[0]["loc"]) if e.errors() else None,
                value=data,
            ) from e

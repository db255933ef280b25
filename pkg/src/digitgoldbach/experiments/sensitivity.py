"""
Sensitivity Experiment.

Scans targets for the ratio of representation counts under small shifts.
"""

from __future__ import annotations

import math
from typing import Any

from digitgoldbach.counting import sensitivity_ratio
from digitgoldbach.experiments.base import BaseExperiment
from digitgoldbach.models import SensitivityReport
from digitgoldbach.utils import parallel_map


class SensitivityExperiment(BaseExperiment[SensitivityReport]):
    """Experiment scanning sensitivity_ratio over range(start, stop, step)."""

    _name = "sensitivity"
    _result_model = SensitivityReport

    def _run(
        self, params: dict[str, Any], seed: int, threads: int
    ) -> list[SensitivityReport]:
        start = self._param(params, "start", int)
        stop = self._param(params, "stop", int)
        step = self._param(params, "step", int, 1)
        sys = self._system(params, max(stop - 1, 1))
        return parallel_map(
            lambda T: sensitivity_ratio(T, sys), range(start, stop, step), threads
        )

    def check(self, results: list[SensitivityReport]) -> list[str]:
        """Every ratio must be finite."""
        return [
            f"count(T-{r.witness}) = 0 for T={r.T}"
            for r in results
            if math.isinf(r.ratio)
        ]

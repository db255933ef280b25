"""
Lower Bound Experiment.

Compares representation counts with the recursion-derived lower bound.
"""

from __future__ import annotations

from typing import Any

from digitgoldbach.counting import check_lower_bound
from digitgoldbach.experiments.base import BaseExperiment
from digitgoldbach.models import LowerBoundCheck
from digitgoldbach.utils import parallel_map


class LowerBoundExperiment(BaseExperiment[LowerBoundCheck]):
    """Experiment checking count(T) ≥ (g² − 3g)^{⌊log_g T⌋ − 3} over a range."""

    _name = "lower-bound"
    _result_model = LowerBoundCheck

    def _run(
        self, params: dict[str, Any], seed: int, threads: int
    ) -> list[LowerBoundCheck]:
        start = self._param(params, "start", int)
        stop = self._param(params, "stop", int)
        step = self._param(params, "step", int, 1)
        sys = self._system(params, max(stop - 1, 1))
        return parallel_map(
            lambda T: check_lower_bound(T, sys), range(start, stop, step), threads
        )

    def check(self, results: list[LowerBoundCheck]) -> list[str]:
        """Every count must reach its bound."""
        return [
            f"count({r.T}) = {r.count} < {r.bound}" for r in results if not r.satisfied
        ]

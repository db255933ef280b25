"""
Divisor Moment Experiment.

Averages τ(x1)^A, or τ(x1 + x2)^A, over the representations of targets.
"""

from __future__ import annotations

from typing import Any

from digitgoldbach.experiments.base import BaseExperiment
from digitgoldbach.models import DivisorMomentRow
from digitgoldbach.verify import divisor_moment_experiment


class DivisorMomentExperiment(BaseExperiment[DivisorMomentRow]):
    """
    Experiment for divisor-function moments along representations.

    Parameters: g, b, A, T (a list), target ("x1" or "pair") and an
    optional trials count switching to the sampled method.
    """

    _name = "divisor-moment"
    _result_model = DivisorMomentRow

    def _run(
        self, params: dict[str, Any], seed: int, threads: int
    ) -> list[DivisorMomentRow]:
        targets = [int(t) for t in self._param(params, "T", list)]
        sys = self._system(params, max(targets))
        trials = self._param(params, "trials", int, 0)
        return divisor_moment_experiment(
            sys,
            self._param(params, "A", int, 2),
            targets,
            target=self._param(params, "target", str, "x1"),
            trials=trials or None,
            seed=seed,
            config=self._config,
        )

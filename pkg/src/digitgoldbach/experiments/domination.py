"""
Domination Experiment.

Fits the binomial domination constant for digit events under uniform
representations of a target.
"""

from __future__ import annotations

import itertools
from typing import Any

from digitgoldbach.counting import domination_experiment
from digitgoldbach.experiments.base import BaseExperiment
from digitgoldbach.models import DominationResult


class DominationExperiment(BaseExperiment[DominationResult]):
    """
    Experiment for the domination of Σ_j Y_j by a binomial tail.

    The event sets are squares of small digits: S_j holds the pairs
    (d1, d2) with d1, d2 < width (digits d1 < width when marginal).

    Example:
        >>> rows = DominationExperiment().run_params(T=5000, trials=2000)
        >>> rows[0].fitted_C >= 1
        True
    """

    _name = "domination"
    _result_model = DominationResult

    def _run(
        self, params: dict[str, Any], seed: int, threads: int
    ) -> list[DominationResult]:
        T = self._param(params, "T", int)
        sys = self._system(params, T)
        width = self._param(params, "width", int, 2)
        marginal = self._param(params, "marginal", bool, False)
        positions = self._param(
            params, "positions", list, list(range(1, max(sys.k - 1, 2)))
        )
        digits = range(min(width, sys.g))
        if marginal:
            S = {int(j): list(digits) for j in positions}
        else:
            S = {int(j): list(itertools.product(digits, digits)) for j in positions}
        result = domination_experiment(
            T,
            sys,
            S,
            trials=self._param(params, "trials", int, 10_000),
            seed=seed,
            marginal=marginal,
            threads=threads,
        )
        return [result]

"""
Divisibility Experiment.

Estimates how often d divides x1 + x2 under uniform representations.
"""

from __future__ import annotations

from typing import Any

from digitgoldbach.experiments.base import BaseExperiment
from digitgoldbach.models import DivisibilityRow
from digitgoldbach.verify import divisibility_experiment


class DivisibilityExperiment(BaseExperiment[DivisibilityRow]):
    """
    Experiment for P[d | x1 + x2] and its refined variant.

    Parameters: g, b, N, d (a list) and trials (at least 1000).
    """

    _name = "divisibility"
    _result_model = DivisibilityRow

    def _run(
        self, params: dict[str, Any], seed: int, threads: int
    ) -> list[DivisibilityRow]:
        N = self._param(params, "N", int)
        return divisibility_experiment(
            self._system(params, N),
            N,
            [int(d) for d in self._param(params, "d", list, [1, 10, 100, 1000])],
            trials=self._param(params, "trials", int, 10_000),
            seed=seed,
            threads=threads,
        )

    def check(self, results: list[DivisibilityRow]) -> list[str]:
        """A multiple of d can never be more likely to divide x1 + x2 than d."""
        return [
            f"P[{b.d} | x1+x2] = {b.probability} "
            f"exceeds P[{a.d} | x1+x2] = {a.probability}"
            for a in results
            for b in results
            if a.d != b.d and b.d % a.d == 0 and b.probability > a.probability
        ]

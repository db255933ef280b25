"""
Well-Conditioned Experiment.

Samples carry-decomposition entries and reports how many have a
well-conditioned block vector.
"""

from __future__ import annotations

import random
from collections import Counter
from typing import Any

from digitgoldbach.counting import sample_decomposition_entry
from digitgoldbach.experiments.base import BaseExperiment
from digitgoldbach.measures import check_well_conditioned
from digitgoldbach.models import PassRate


class WellConditionedExperiment(BaseExperiment[PassRate]):
    """
    Experiment for the pass rate of the well-conditioning test.

    Entries are drawn with probability proportional to their mass, i.e.
    as the entry containing a uniform representation x1 + x2 = T.
    """

    _name = "well-conditioned"
    _result_model = PassRate

    def _run(self, params: dict[str, Any], seed: int, threads: int) -> list[PassRate]:
        T = self._param(params, "T", int)
        sys = self._system(params, T)
        C = self._param(params, "C", float, 1.0)
        trials = self._param(params, "trials", int, 200)
        rng = random.Random(seed)
        passed = 0
        failures: Counter[int] = Counter()
        for _ in range(trials):
            entry = sample_decomposition_entry(T, sys, rng)
            report = check_well_conditioned(
                entry.measure,
                C,
                max(T, sys.g**2),
                b_max=self._param(
                    params, "b_max", int, self._config.well_conditioned_b_max
                ),
                config=self._config,
            )
            passed += report.passed
            failures.update(f.condition for f in report.failures)
        return [
            self._validate(
                {
                    "T": T,
                    "C": C,
                    "trials": trials,
                    "passed": passed,
                    "failures_by_condition": dict(sorted(failures.items())),
                }
            )
        ]

"""
Correction Term Experiment.

Evaluates the correction-term sum built from two characters and two zeros
against the number of representations.
"""

from __future__ import annotations

from typing import Any

from digitgoldbach.characters import character_from_index
from digitgoldbach.experiments.base import BaseExperiment
from digitgoldbach.models import CorrectionTermResult
from digitgoldbach.verify import correction_term_experiment


class CorrectionTermExperiment(BaseExperiment[CorrectionTermResult]):
    """
    Experiment for the correction-term sum.

    Parameters: g, b, N, Q, characters (q1, i1) and (q2, i2) by modulus
    and index, and zeros rho1/rho2 given by beta and gamma. The defaults
    pair the trivial character with the quadratic character modulo 5 and
    put both zeros at 1/2.
    """

    _name = "correction-term"
    _result_model = CorrectionTermResult

    def _run(
        self, params: dict[str, Any], seed: int, threads: int
    ) -> list[CorrectionTermResult]:
        N = self._param(params, "N", int)
        chi1 = character_from_index(
            self._param(params, "q1", int, 1),
            self._param(params, "i1", int, 0),
            self._config,
        )
        chi2 = character_from_index(
            self._param(params, "q2", int, 5),
            self._param(params, "i2", int, 2),
            self._config,
        )
        rho1 = complex(
            self._param(params, "beta1", float, 0.5),
            self._param(params, "gamma1", float, 0.0),
        )
        rho2 = complex(
            self._param(params, "beta2", float, 0.5),
            self._param(params, "gamma2", float, 0.0),
        )
        result = correction_term_experiment(
            N,
            self._system(params, N),
            chi1,
            chi2,
            rho1,
            rho2,
            self._param(params, "Q", float, 10.0),
            self._config,
        )
        return [result]

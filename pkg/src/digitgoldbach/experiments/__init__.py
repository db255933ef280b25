"""
Registered Experiments.

This package contains one class per experiment reachable through
``digit-goldbach experiment <name>``. EXPERIMENTS maps each registered
name to its class.
"""

from digitgoldbach.experiments.base import BaseExperiment, coerce_param
from digitgoldbach.experiments.correction_term import CorrectionTermExperiment
from digitgoldbach.experiments.divisibility import DivisibilityExperiment
from digitgoldbach.experiments.divisor_moment import DivisorMomentExperiment
from digitgoldbach.experiments.domination import DominationExperiment
from digitgoldbach.experiments.lower_bound import LowerBoundExperiment
from digitgoldbach.experiments.sensitivity import SensitivityExperiment
from digitgoldbach.experiments.well_conditioned import WellConditionedExperiment


EXPERIMENTS: dict[str, type[BaseExperiment]] = {
    cls._name: cls
    for cls in (
        CorrectionTermExperiment,
        DivisibilityExperiment,
        DivisorMomentExperiment,
        DominationExperiment,
        LowerBoundExperiment,
        SensitivityExperiment,
        WellConditionedExperiment,
    )
}


__all__ = [
    "EXPERIMENTS",
    "BaseExperiment",
    "CorrectionTermExperiment",
    "DivisibilityExperiment",
    "DivisorMomentExperiment",
    "DominationExperiment",
    "LowerBoundExperiment",
    "SensitivityExperiment",
    "WellConditionedExperiment",
    "coerce_param",
]

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict

from tabulate import tabulate

from ...constants import THRESHOLD_T1, THRESHOLD_T2, THRESHOLD_T3
from ...exceptions import ValidationError
from ..base import CalculationBase
from .pressure import DimensionBracket


class Verdict(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class ThresholdSet:
    """Dimension thresholds t2 < t1 < t3 that make an alphabet usable."""

    t1: float = THRESHOLD_T1
    t2: float = THRESHOLD_T2
    t3: float = THRESHOLD_T3

    def __post_init__(self):
        if not (0.0 < self.t2 < self.t1 < self.t3 < 1.0):
            raise ValidationError(f"Thresholds must satisfy 0 < t2 < t1 < t3 < 1: {self}")

    def as_dict(self) -> Dict[str, float]:
        return {"t1": self.t1, "t2": self.t2, "t3": self.t3}

    @staticmethod
    def truncated(value: float, places: int = 4) -> float:
        scale = 10**places
        return int(value * scale) / scale


@dataclass
class AdmissibilityReport:
    bracket: DimensionBracket
    thresholds: ThresholdSet
    verdicts: Dict[str, Verdict]

    def as_dict(self) -> dict:
        return {
            "bracket": self.bracket.as_dict(),
            "thresholds": self.thresholds.as_dict(),
            "verdicts": {k: v.value for k, v in self.verdicts.items()},
        }

    def summary(self) -> str:
        rows = [[name, value, self.verdicts[name].value] for name, value in self.thresholds.as_dict().items()]
        return tabulate(rows, headers=["threshold", "value", "verdict"], tablefmt="github", floatfmt=".6f")


class CheckThresholds(CalculationBase):
    """
    PASS when the whole bracket lies above a threshold, FAIL when its upper
    end is at or below it, UNDECIDED when the threshold falls inside.
    """

    logger_name = "zarembapi.dimension"

    def validate_inputs(self):
        self._require("bracket")
        if not isinstance(self.inputs["bracket"], DimensionBracket):
            raise ValidationError("bracket must be a DimensionBracket")
        if self.inputs.get("thresholds") is None:
            self.inputs["thresholds"] = ThresholdSet()
        elif not isinstance(self.inputs["thresholds"], ThresholdSet):
            raise ValidationError("thresholds must be a ThresholdSet")

    def calculate(self) -> AdmissibilityReport:
        bracket: DimensionBracket = self.inputs["bracket"]
        thresholds: ThresholdSet = self.inputs["thresholds"]
        verdicts = {}
        for name, t in thresholds.as_dict().items():
            if bracket.lower > t:
                verdicts[name] = Verdict.PASS
            elif bracket.upper <= t:
                verdicts[name] = Verdict.FAIL
            else:
                verdicts[name] = Verdict.UNDECIDED
            self._trace_step("thresholds", name, verdicts[name].value)
        return AdmissibilityReport(bracket, thresholds, verdicts)

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
from tabulate import tabulate

from ...core import Alphabet
from ...exceptions import ValidationError
from ..base import CalculationBase
from .denominators import EnumerateDenominators


@dataclass(frozen=True)
class ProportionRow:
    N: int
    count: int
    ratio: float

    def as_dict(self) -> dict:
        return {"N": self.N, "count": self.count, "ratio": self.ratio}


@dataclass
class ProportionResult:
    alphabet: Alphabet
    rows: List[ProportionRow]

    def relative_spread(self) -> float:
        """(max - min) / max of the ratios; small values suggest a positive proportion."""
        ratios = [r.ratio for r in self.rows]
        return (max(ratios) - min(ratios)) / max(ratios) if max(ratios) > 0 else 0.0

    def as_dict(self) -> dict:
        return {
            "alphabet": list(self.alphabet.elements),
            "rows": [r.as_dict() for r in self.rows],
            "relative_spread": self.relative_spread(),
        }

    def csv_rows(self):
        return ["N", "count", "ratio"], [[r.N, r.count, r.ratio] for r in self.rows]

    def summary(self) -> str:
        headers, rows = self.csv_rows()
        return tabulate(rows, headers=headers, tablefmt="github", floatfmt=".6f")


class ProportionTable(CalculationBase):
    """
    Count |D_A(N)| and |D_A(N)|/N along increasing horizons.

    One census at the largest horizon serves every row.

    **Inputs:**
        * `alphabet`: a proper alphabet.
        * `horizons`: strictly increasing positive integers.
        * `workers` (optional).
    """

    logger_name = "zarembapi.census"

    def validate_inputs(self):
        self._require("alphabet", "horizons")
        self._alphabet(proper=True)
        horizons: Sequence[int] = list(self.inputs["horizons"])
        if not horizons:
            raise ValidationError("At least one horizon is required")
        for n in horizons:
            if isinstance(n, bool) or not isinstance(n, int) or n < 1:
                raise ValidationError(f"Horizons must be positive integers, got {n!r}")
        if any(b <= a for a, b in zip(horizons, horizons[1:])):
            raise ValidationError(f"Horizons must be strictly increasing: {horizons}")
        self.inputs["horizons"] = horizons
        self.inputs.setdefault("workers", 1)

    def calculate(self) -> ProportionResult:
        alphabet = self.inputs["alphabet"]
        horizons = self.inputs["horizons"]
        census = EnumerateDenominators(
            alphabet=alphabet, N=horizons[-1], workers=self.inputs["workers"], logger=self.logger
        ).calculate()
        cumulative = np.cumsum(census.members)
        rows = []
        for n in horizons:
            count = int(cumulative[n])
            rows.append(ProportionRow(n, count, count / n))
            self._trace_step("proportion", f"N={n}", count)
        return ProportionResult(alphabet, rows)

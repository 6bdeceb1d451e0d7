"""
Three-way factorization gamma = gamma1 gamma2 gamma3 of ensemble members.

gamma1 is the shortest prefix whose norm reaches M1, gamma3 the shortest
suffix whose norm reaches M3, and gamma2 what lies between. When the two
ends overlap, gamma3 is cut back to start right after gamma1 and gamma2 is
the identity; such members are flagged. Members too short to split are
counted and left out of the window statistics.
"""

from __future__ import annotations

import logging
import statistics
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from tabulate import tabulate

from ...core import Mat2, continuant, matrix_of_word
from ...exceptions import ValidationError
from ..base import CalculationBase
from .build import Ensemble, Word
from .parameters import FactorizationParams

logger = logging.getLogger("zarembapi.ensemble")


@dataclass(frozen=True)
class FactorSplit:
    word: Word
    gamma1: Word
    gamma2: Word
    gamma3: Word
    norms: Tuple[int, int, int]
    overlap: bool
    slack_needed: float

    @property
    def identity_middle(self) -> bool:
        return not self.gamma2

    def matrices(self) -> Tuple[Mat2, Mat2, Mat2]:
        middle = matrix_of_word(self.gamma2) if self.gamma2 else Mat2.identity()
        return matrix_of_word(self.gamma1), middle, matrix_of_word(self.gamma3)

    def reconstructs(self) -> bool:
        g1, g2, g3 = self.matrices()
        return g1 @ g2 @ g3 == matrix_of_word(self.word)


@dataclass
class FactorizationReport:
    N: int
    params: FactorizationParams
    slack: float
    splits: List[FactorSplit] = field(default_factory=list)
    unsplittable: List[Word] = field(default_factory=list)

    @property
    def window_fraction(self) -> float:
        if not self.splits:
            return 0.0
        return sum(1 for s in self.splits if s.slack_needed <= self.slack) / len(self.splits)

    @property
    def overlaps(self) -> int:
        return sum(1 for s in self.splits if s.overlap)

    @property
    def identity_middles(self) -> int:
        return sum(1 for s in self.splits if s.identity_middle)

    @property
    def reconstructed_all(self) -> bool:
        return all(s.reconstructs() for s in self.splits)

    def factor_sets(self) -> Tuple[set, set, set]:
        """Distinct gamma1, gamma2 and gamma3 factors (as words)."""
        return (
            {s.gamma1 for s in self.splits},
            {s.gamma2 for s in self.splits},
            {s.gamma3 for s in self.splits},
        )

    def slack_stats(self) -> Tuple[Optional[float], Optional[float]]:
        needed = [s.slack_needed for s in self.splits]
        if not needed:
            return None, None
        return max(needed), statistics.median(needed)

    def as_dict(self) -> dict:
        omega1, omega2, omega3 = self.factor_sets()
        worst, median = self.slack_stats()
        return {
            "N": self.N,
            "params": self.params.as_dict(),
            "slack": self.slack,
            "split": len(self.splits),
            "unsplittable": len(self.unsplittable),
            "overlaps": self.overlaps,
            "identity_middles": self.identity_middles,
            "window_fraction": self.window_fraction,
            "slack_needed_max": worst,
            "slack_needed_median": median,
            "distinct_factors": [len(omega1), len(omega2), len(omega3)],
            "reconstructed_all": self.reconstructed_all,
        }

    def summary(self) -> str:
        rows = [[k, v] for k, v in self.as_dict().items() if k != "params"]
        return tabulate(rows, headers=["quantity", "value"], tablefmt="github")


def split_word(word: Word, M1: float, M3: float) -> Optional[Tuple[Word, Word, Word, bool]]:
    """Return (gamma1, gamma2, gamma3, overlap) or None when the word cannot be split."""
    k = len(word)
    prefix_len = None
    prev, cur = 0, 1
    for i, d in enumerate(word):
        prev, cur = cur, d * cur + prev
        if cur >= M1:
            prefix_len = i + 1
            break
    if prefix_len is None or prefix_len >= k:
        return None

    suffix_start = None
    nxt, cur = 0, 1
    for j in range(k - 1, -1, -1):
        nxt, cur = cur, word[j] * cur + nxt
        if cur >= M3:
            suffix_start = j
            break
    if suffix_start is None:
        return None

    overlap = suffix_start < prefix_len
    if overlap:
        suffix_start = prefix_len
    return word[:prefix_len], word[prefix_len:suffix_start], word[suffix_start:], overlap


class Factorize(CalculationBase):
    """
    Split every ensemble member and report how many land in the norm windows.

    **Windows** (each upper bound multiplied by the slack C', the lower bound divided by it):
        * ||gamma1|| <= M1^(1+2 eps0)
        * ||gamma3|| <= M3^(1+2 eps0)
        * N / (M1 M3)^(1+2 eps0) <= ||gamma2|| <= N / (M1 M3)

    **Inputs:**
        * `ensemble`: an `Ensemble`.
        * `params`: `FactorizationParams`, validated against the ensemble's N.
        * `slack` (optional): C', default A + 1.
    """

    logger_name = "zarembapi.ensemble"

    def validate_inputs(self):
        self._require("ensemble", "params")
        ensemble = self.inputs["ensemble"]
        if not isinstance(ensemble, Ensemble):
            raise ValidationError("ensemble must be an Ensemble")
        params = self.inputs["params"]
        if not isinstance(params, FactorizationParams):
            raise ValidationError("params must be FactorizationParams")
        params.validate_for(ensemble.N)
        self.inputs.setdefault("slack", float(ensemble.alphabet.A + 1))
        if self.inputs["slack"] < 1:
            raise ValidationError(f"slack must be >= 1, got {self.inputs['slack']}")

    def calculate(self) -> FactorizationReport:
        ensemble: Ensemble = self.inputs["ensemble"]
        p: FactorizationParams = self.inputs["params"]
        N = ensemble.N
        grow = 1.0 + 2.0 * p.eps0
        m1_cap = p.M1**grow
        m3_cap = p.M3**grow
        mid_lo = N / (p.M1 * p.M3) ** grow
        mid_hi = N / (p.M1 * p.M3)

        report = FactorizationReport(N=N, params=p, slack=float(self.inputs["slack"]))
        for word in ensemble.words:
            parts = split_word(word, p.M1, p.M3)
            if parts is None:
                report.unsplittable.append(word)
                continue
            g1, g2, g3, overlap = parts
            n1, n3 = continuant(g1), continuant(g3)
            n2 = continuant(g2) if g2 else 1
            needed = max(1.0, n1 / m1_cap, n3 / m3_cap, n2 / mid_hi, mid_lo / n2)
            report.splits.append(FactorSplit(word, g1, g2, g3, (n1, n2, n3), overlap, needed))

        if report.unsplittable:
            self._warn(f"{len(report.unsplittable)} members too short to split at M1={p.M1}, M3={p.M3}")
        self._trace_step("factorize", "window_fraction", report.window_fraction)
        logger.info(
            f"[factorize] N={N} split={len(report.splits)} unsplittable={len(report.unsplittable)} "
            f"window_fraction={report.window_fraction:.4f}"
        )
        return report

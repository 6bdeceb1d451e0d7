from __future__ import annotations

import logging
from math import gcd

import numpy as np
from tqdm import tqdm

from ...constants import ORACLE_MAX_HORIZON
from ...core import Alphabet, cf_of_rational
from ...exceptions import ValidationError
from ..base import CalculationBase
from .denominators import DenominatorSet

logger = logging.getLogger("zarembapi.census")


class CensusOracle(CalculationBase):
    """
    Quadratic cross-check of the census.

    For every d <= N and every coprime b <= d the canonical word of b/d
    and its twin are tested for alphabet membership.

    **Inputs:**
        * `alphabet`: letters, single-letter alphabets allowed.
        * `N`: horizon, at most 10^5.
        * `progress` (optional): show a progress bar on stderr.

    **Output:**
        * A `DenominatorSet` without witnesses.
    """

    logger_name = "zarembapi.census"

    def validate_inputs(self):
        self._require("alphabet", "N")
        self._alphabet(proper=False)
        N = self._positive_int("N")
        if N > ORACLE_MAX_HORIZON:
            raise ValidationError(f"Oracle horizon {N} exceeds {ORACLE_MAX_HORIZON}")
        self.inputs.setdefault("progress", False)

    def calculate(self) -> DenominatorSet:
        alphabet: Alphabet = self.inputs["alphabet"]
        N = self.inputs["N"]
        members = np.zeros(N + 1, dtype=bool)
        for d in tqdm(range(1, N + 1), disable=not self.inputs["progress"], desc="oracle"):
            for b in range(1, d + 1):
                if gcd(b, d) == 1 and cf_of_rational(b, d).admissible(alphabet):
                    members[d] = True
                    break
        result = DenominatorSet(N, alphabet, members)
        logger.debug(f"[oracle] alphabet={alphabet.label} N={N} count={result.count}")
        return result

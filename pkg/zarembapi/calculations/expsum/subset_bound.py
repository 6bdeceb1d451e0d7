"""
Subset-sum to square-sum bound.

If f >= 0 on a finite set W and every subset Z satisfies
sum_Z f <= C1 sqrt(|Z|) + C2, then sum_W f^2 <= c (C1^2 log|W| + C2 max f)
for an absolute constant c. Sorting f in decreasing order reduces the
hypothesis to prefix sums.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ...constants import SUBSET_BRUTEFORCE_MAX, SUBSET_MIN_SIZE
from ...exceptions import ValidationError
from ..base import CalculationBase

_EPS = 1e-12


@dataclass(frozen=True)
class SubsetBoundResult:
    size: int
    hypothesis_ok: bool
    violating_k: Optional[int]
    square_sum: float
    scale: float

    @property
    def constant(self) -> Optional[float]:
        """Smallest c making the conclusion hold; None when it is undefined."""
        if self.scale > 0:
            return self.square_sum / self.scale
        return 0.0 if self.square_sum == 0 else None

    def as_dict(self) -> dict:
        return {
            "size": self.size,
            "hypothesis_ok": self.hypothesis_ok,
            "violating_k": self.violating_k,
            "square_sum": self.square_sum,
            "scale": self.scale,
            "constant": self.constant,
        }


def _bound(C1: float, C2: float, k: int) -> float:
    return C1 * math.sqrt(k) + C2


class SubsetBoundVerify(CalculationBase):
    """
    Check the hypothesis on sorted prefixes and measure the constant.

    **Inputs:**
        * `values`: non-negative numbers, more than 10 of them.
        * `C1`, `C2`: non-negative constants.
    """

    logger_name = "zarembapi.expsum"

    def validate_inputs(self):
        self._require("values", "C1", "C2")
        values = np.asarray(self.inputs["values"], dtype=np.float64)
        if values.ndim != 1 or values.size < SUBSET_MIN_SIZE:
            raise ValidationError(f"Need more than {SUBSET_MIN_SIZE - 1} values, got {values.size}")
        if np.any(values < 0) or not np.all(np.isfinite(values)):
            raise ValidationError("values must be finite and non-negative")
        if self.inputs["C1"] < 0 or self.inputs["C2"] < 0:
            raise ValidationError("C1 and C2 must be non-negative")
        self.inputs["values"] = values

    def calculate(self) -> SubsetBoundResult:
        values = np.sort(self.inputs["values"])[::-1]
        C1, C2 = float(self.inputs["C1"]), float(self.inputs["C2"])
        prefix = np.cumsum(values)
        ks = np.arange(1, values.size + 1)
        limits = C1 * np.sqrt(ks) + C2
        bad = np.flatnonzero(prefix > limits + _EPS * np.maximum(1.0, limits))
        return SubsetBoundResult(
            size=int(values.size),
            hypothesis_ok=bad.size == 0,
            violating_k=int(ks[bad[0]]) if bad.size else None,
            square_sum=float(np.sum(values**2)),
            scale=C1**2 * math.log(values.size) + C2 * float(values[0]),
        )


def subset_bound_bruteforce(values: Sequence[float], C1: float, C2: float) -> bool:
    """Check the hypothesis over every non-empty subset; small inputs only."""
    if len(values) > SUBSET_BRUTEFORCE_MAX:
        raise ValidationError(f"Exhaustive check limited to {SUBSET_BRUTEFORCE_MAX} values")
    for size in range(1, len(values) + 1):
        limit = _bound(C1, C2, size)
        for subset in itertools.combinations(values, size):
            if sum(subset) > limit + _EPS * max(1.0, limit):
                return False
    return True


def random_profiles(count: int, seed: int = 0) -> Iterator[Tuple[List[float], float, float]]:
    """
    Seeded decreasing profiles that satisfy the hypothesis by construction:
    f_i = u_i C1 (sqrt(i) - sqrt(i-1)) plus a random atom of size <= C2 on f_1.
    """
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(SUBSET_MIN_SIZE, 200))
        C1 = float(rng.uniform(0.5, 5.0))
        C2 = float(rng.uniform(0.0, 5.0))
        ks = np.arange(1, n + 1)
        steps = C1 * (np.sqrt(ks) - np.sqrt(ks - 1)) * rng.uniform(0.0, 1.0, n)
        steps[0] += C2 * rng.uniform(0.0, 1.0)
        yield list(np.sort(steps)[::-1]), C1, C2

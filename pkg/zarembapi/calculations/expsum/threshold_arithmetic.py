"""
Ceilings on gamma = 1 - dim E_A imposed by the estimates for each region
of the first major-arc integral.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from tabulate import tabulate

from ...exceptions import ValidationError
from ..base import CalculationBase


@dataclass(frozen=True)
class GammaCeilings:
    """
    Each field is the largest gamma the corresponding estimate allows.

    `combined` is the minimum over the standard set of estimates and is only
    defined for nu in [1, 2]; `combined_kloosterman` replaces the power-offset
    estimate by its Kloosterman-sum variant.
    """

    nu: float
    eps0: float
    power_offset: float
    small_offset: float
    kloosterman_power_offset: float
    large_denominator: float
    mid_denominator: float
    mid_offset: float
    boundary_terms: float
    small_offset_fixed_floor: float
    combined: Optional[float]
    combined_kloosterman: float

    @property
    def dimension_threshold(self) -> Optional[float]:
        return None if self.combined is None else 1.0 - self.combined

    def as_dict(self) -> dict:
        out = {k: getattr(self, k) for k in self.__dataclass_fields__}
        out["dimension_threshold"] = self.dimension_threshold
        return out

    def summary(self) -> str:
        rows = [[k, v] for k, v in self.as_dict().items() if k not in ("nu", "eps0")]
        return tabulate(rows, headers=["estimate", "gamma ceiling"], tablefmt="github", floatfmt=".6f")


def power_offset_ceiling(nu: float, eps0: float = 0.0) -> float:
    return 5.0 * (1.0 + nu) / (46.0 + 36.0 * nu) - 6.0 * eps0


def small_offset_ceiling(nu: float, eps0: float = 0.0) -> float:
    return 1.0 / (5.0 + 2.0 * nu) - 6.0 * eps0


def kloosterman_ceiling(nu: float, eps0: float = 0.0) -> float:
    return (nu - 0.5) / (10.0 * (1.0 + nu)) - 8.0 * eps0


class ThresholdArithmetic(CalculationBase):
    """
    Evaluate every gamma ceiling at one nu.

    **Inputs:**
        * `nu`: > 1/2 (the standard combination needs nu in [1, 2]).
        * `eps0` (optional): default 0.
    """

    logger_name = "zarembapi.expsum"

    def validate_inputs(self):
        self._require("nu")
        nu = float(self.inputs["nu"])
        if not nu > 0.5:
            raise ValidationError(f"nu must exceed 1/2, got {nu}")
        self.inputs["nu"] = nu
        self.inputs.setdefault("eps0", 0.0)
        if self.inputs["eps0"] < 0:
            raise ValidationError(f"eps0 must be non-negative, got {self.inputs['eps0']}")

    def calculate(self) -> GammaCeilings:
        nu, eps0 = self.inputs["nu"], float(self.inputs["eps0"])
        power = power_offset_ceiling(nu, eps0)
        small = small_offset_ceiling(nu, eps0)
        kloost = kloosterman_ceiling(nu, eps0)
        large_q = 1.0 / 8.0 - 4.0 * eps0
        mid_q = 1.0 / 8.0 - 5.0 * eps0
        mid_k = 1.0 / 8.0 - 5.0 * eps0
        boundary = 5.0 / 36.0 - 6.0 * eps0
        shared = min(large_q, mid_q, mid_k, boundary, small)
        combined = min(shared, power) if 1.0 <= nu <= 2.0 else None
        return GammaCeilings(
            nu=nu,
            eps0=eps0,
            power_offset=power,
            small_offset=small,
            kloosterman_power_offset=kloost,
            large_denominator=large_q,
            mid_denominator=mid_q,
            mid_offset=mid_k,
            boundary_terms=boundary,
            small_offset_fixed_floor=1.0 / 6.0 - 5.0 * eps0,
            combined=combined,
            combined_kloosterman=min(shared, kloost),
        )


def kloosterman_optimal_nu() -> float:
    """nu where the Kloosterman ceiling meets the small-offset ceiling."""
    return (3.0 + math.sqrt(34.0)) / 2.0


def optimal_nu_scan(lo: float = 0.5, hi: float = 5.0, step: float = 1e-4) -> Tuple[float, float]:
    """
    Scan nu in (lo, hi] for the largest min(kloosterman, small-offset) ceiling at eps0 = 0.

    Returns (argmax nu, max value).
    """
    nus = np.arange(lo + step, hi + step / 2, step)
    values = np.minimum((nus - 0.5) / (10.0 * (1.0 + nus)), 1.0 / (5.0 + 2.0 * nus))
    best = int(np.argmax(values))
    return float(nus[best]), float(values[best])

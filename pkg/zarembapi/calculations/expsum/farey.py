"""
Dirichlet decomposition theta = a/q + K/N with q <= sqrt(N) and
|K| <= sqrt(N)/q, plus the discretized angles used for Lipschitz checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, Tuple

from ...exceptions import ValidationError
from ..base import CalculationBase


@dataclass(frozen=True)
class FareyPoint:
    a: int
    q: int
    K: float
    N: int

    def __post_init__(self):
        if self.q < 1 or not (0 <= self.a <= self.q):
            raise ValidationError(f"Need 0 <= a <= q and q >= 1, got a={self.a}, q={self.q}")
        if gcd(self.a, self.q) != 1:
            raise ValidationError(f"a={self.a} and q={self.q} are not coprime")
        if self.q > isqrt(self.N):
            raise ValidationError(f"q={self.q} exceeds sqrt(N)={math.sqrt(self.N):.6g}")

    @property
    def beta(self) -> float:
        return self.K / self.N

    @property
    def K_bar(self) -> float:
        return max(1.0, abs(self.K))

    @property
    def theta(self) -> float:
        return self.a / self.q + self.K / self.N

    def as_dict(self) -> dict:
        return {"a": self.a, "q": self.q, "K": self.K, "N": self.N, "theta": self.theta}


def convergents(x: Fraction) -> Iterator[Tuple[int, int]]:
    """Convergents p/q of a non-negative rational, in order."""
    p_prev, p = 1, int(math.floor(x))
    q_prev, q = 0, 1
    yield p, q
    rest = x - math.floor(x)
    while rest:
        x = 1 / rest
        a = math.floor(x)
        rest = x - a
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        yield p, q


def decompose(theta: float, N: int) -> FareyPoint:
    """Last convergent of theta with denominator <= sqrt(N)."""
    limit = isqrt(N)
    exact = Fraction(theta)
    a, q = 0, 1
    for p, den in convergents(exact):
        if den > limit:
            break
        a, q = p, den
    K = float((exact - Fraction(a, q)) * N)
    return FareyPoint(a, q, K, N)


class DirichletDecompose(CalculationBase):
    """
    Major-arc coordinates of an angle.

    **Inputs:**
        * `theta`: angle in [0, 1].
        * `N`: horizon, N >= 1.

    **Output:**
        * A `FareyPoint` with |theta - a/q| <= 1 / (q sqrt(N)).
    """

    logger_name = "zarembapi.expsum"

    def validate_inputs(self):
        self._require("theta", "N")
        self._positive_int("N")
        theta = float(self.inputs["theta"])
        if not (0.0 <= theta <= 1.0):
            raise ValidationError(f"theta must lie in [0, 1], got {theta}")
        self.inputs["theta"] = theta

    def calculate(self) -> FareyPoint:
        return decompose(self.inputs["theta"], self.inputs["N"])


@dataclass(frozen=True)
class DiscretizedAngle:
    """
    Grid angle a/q + l/(T N) below a Farey point, with K = l/T + lam and 0 <= lam < 1/T.
    """

    base: FareyPoint
    T: int
    l: int

    @classmethod
    def from_point(cls, point: FareyPoint, T: int) -> "DiscretizedAngle":
        if T < 1:
            raise ValidationError(f"T must be a positive integer, got {T}")
        return cls(point, T, math.floor(point.K * T))

    @property
    def lam(self) -> float:
        return self.base.K - self.l / self.T

    @property
    def theta_grid(self) -> float:
        return self.base.a / self.base.q + self.l / (self.T * self.base.N)

    @property
    def L_bar(self) -> float:
        return max(1.0, abs(self.l) / self.T)

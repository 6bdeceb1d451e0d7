"""
Numerical checks on the major-arc covering.

The arcs {a/q + K/N : |K| <= sqrt(N)/q} over coprime 0 <= a <= q <= sqrt(N)
cover [0, 1], so the L2 mass over [0, 1] is at most the sum of the arc
integrals. Arc integrals use the trapezoid rule with `grid` nodes per unit
of K; the unit interval uses the matching uniform grid of N * grid angles.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterator, Tuple

import numpy as np

from ...constants import DEFAULT_GRID, DEFAULT_STABILITY_TOL
from ...exceptions import ValidationError
from ..base import CalculationBase
from .farey import DiscretizedAngle, decompose
from .spectrum import SpectrumHistogram, _check_histogram, evaluate_sum, fft_l2

logger = logging.getLogger("zarembapi.expsum")


def coprime_numerators(q: int) -> Iterator[int]:
    if q == 1:
        yield from (0, 1)
        return
    for a in range(1, q):
        if gcd(a, q) == 1:
            yield a


def trapezoid_nodes(lo: float, hi: float, density: int) -> Tuple[np.ndarray, np.ndarray]:
    n = max(2, math.ceil((hi - lo) * density) + 1)
    nodes = np.linspace(lo, hi, n)
    weights = np.full(n, (hi - lo) / (n - 1))
    weights[0] *= 0.5
    weights[-1] *= 0.5
    return nodes, weights


def arc_cover_sides(histogram: SpectrumHistogram, N: int, grid: int) -> Tuple[float, float]:
    lhs = fft_l2(histogram, N * grid)
    thetas, weights = [], []
    for q in range(1, isqrt(N) + 1):
        Y = math.sqrt(N) / q
        K, w = trapezoid_nodes(-Y, Y, grid)
        for a in coprime_numerators(q):
            thetas.append(a / q + K / N)
            weights.append(w)
    theta = np.concatenate(thetas)
    weight = np.concatenate(weights)
    rhs = float(np.sum(weight * np.abs(evaluate_sum(histogram, theta)) ** 2)) / N
    return lhs, rhs


@dataclass(frozen=True)
class ArcCoverResult:
    N: int
    grid: int
    lhs: float
    rhs: float
    lhs_coarse: float
    rhs_coarse: float
    stabilized: bool
    tolerance: float

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs * (1.0 + self.tolerance)

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "grid": self.grid,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "stabilized": self.stabilized,
            "holds": self.holds,
        }


class ArcCoverCheck(CalculationBase):
    """
    Check that the L2 mass is dominated by the sum of major-arc integrals.

    Both sides are evaluated at `grid` and `2 * grid`; the finer values are
    reported and `stabilized` says whether they moved by less than
    `stability_tol`.

    **Inputs:**
        * `histogram`, `N`.
        * `grid` (optional): trapezoid nodes per unit of K.
        * `tolerance` (optional): relative slack on the inequality.
        * `stability_tol` (optional).
    """

    logger_name = "zarembapi.expsum"

    def validate_inputs(self):
        self._require("histogram", "N")
        _check_histogram(self.inputs["histogram"])
        self._positive_int("N")
        self.inputs.setdefault("grid", DEFAULT_GRID)
        self.inputs.setdefault("tolerance", 1e-3)
        self.inputs.setdefault("stability_tol", DEFAULT_STABILITY_TOL)
        self._positive_int("grid")
        if self.inputs["histogram"].max_norm > self.inputs["N"]:
            raise ValidationError("Spectrum support exceeds N")

    def calculate(self) -> ArcCoverResult:
        histogram, N, grid = self.inputs["histogram"], self.inputs["N"], self.inputs["grid"]
        lhs0, rhs0 = arc_cover_sides(histogram, N, grid)
        lhs, rhs = arc_cover_sides(histogram, N, 2 * grid)
        tol = self.inputs["stability_tol"]
        stabilized = abs(lhs - lhs0) <= tol * abs(lhs) and abs(rhs - rhs0) <= tol * abs(rhs)
        result = ArcCoverResult(N, 2 * grid, lhs, rhs, lhs0, rhs0, stabilized, self.inputs["tolerance"])
        if not stabilized:
            self._warn(f"Arc-cover integrals not stable at grid {grid} -> {2 * grid}")
        logger.info(f"[arcs] N={N} lhs={lhs:.6g} rhs={rhs:.6g} holds={result.holds}")
        return result


@dataclass(frozen=True)
class LipschitzReport:
    N: int
    T: int
    samples: int
    max_error: float
    max_ratio: float
    worst_theta: float

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "T": self.T,
            "samples": self.samples,
            "max_error": self.max_error,
            "max_ratio": self.max_ratio,
            "worst_theta": self.worst_theta,
        }


def lipschitz_error(histogram: SpectrumHistogram, angle: DiscretizedAngle) -> float:
    values = evaluate_sum(histogram, [angle.base.theta, angle.theta_grid])
    return float(abs(values[0] - values[1]))


class LipschitzCheck(CalculationBase):
    """
    Discretization error of S_N on the grid a/q + l/(T N).

    With lam the offset in K units, the angle moves by lam / N and

        |S(theta) - S(theta_grid)| <= 2 pi N_max (lam / N) |Omega|.

    Angles are sampled uniformly (seeded), decomposed and moved to
    offset lam = offset / T above their grid point; `max_ratio` is the
    largest observed error over the bound and never exceeds 1.

    **Inputs:**
        * `histogram`, `N`, `T`.
        * `samples` (optional), `offset` (optional, in [0, 1)), `seed` (optional).
    """

    logger_name = "zarembapi.expsum"

    def validate_inputs(self):
        self._require("histogram", "N", "T")
        _check_histogram(self.inputs["histogram"])
        self._positive_int("N")
        self._positive_int("T")
        self.inputs.setdefault("samples", 256)
        self.inputs.setdefault("offset", 1.0 - 1e-9)
        self.inputs.setdefault("seed", 0)
        if not (0.0 <= self.inputs["offset"] < 1.0):
            raise ValidationError(f"offset must lie in [0, 1), got {self.inputs['offset']}")

    def calculate(self) -> LipschitzReport:
        histogram: SpectrumHistogram = self.inputs["histogram"]
        N, T = self.inputs["N"], self.inputs["T"]
        lam = self.inputs["offset"] / T
        rng = np.random.default_rng(self.inputs["seed"])
        grid_angles, test_angles = [], []
        for raw in rng.random(self.inputs["samples"]):
            angle = DiscretizedAngle.from_point(decompose(float(raw), N), T)
            grid_angles.append(angle.theta_grid)
            test_angles.append(angle.theta_grid + lam / N)
        values = evaluate_sum(histogram, np.concatenate([test_angles, grid_angles]))
        n = len(test_angles)
        errors = np.abs(values[:n] - values[n:])
        bound = 2.0 * math.pi * histogram.max_norm * (lam / N) * histogram.total
        worst = int(np.argmax(errors))
        report = LipschitzReport(
            N=N,
            T=T,
            samples=n,
            max_error=float(errors[worst]),
            max_ratio=float(errors[worst] / bound) if bound > 0 else 0.0,
            worst_theta=float(test_angles[worst]),
        )
        logger.debug(f"[lipschitz] N={N} T={T} max_error={report.max_error:.6g} ratio={report.max_ratio:.6g}")
        return report

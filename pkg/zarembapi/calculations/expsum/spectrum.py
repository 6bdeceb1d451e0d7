"""
Norm spectrum of an ensemble and its exponential sum

    S_N(theta) = sum_m r(m) e(theta m),   e(x) = exp(2 pi i x),

where r(m) counts ensemble members of norm m. Everything downstream works
on the histogram, never on the member list.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence

import numpy as np
from tabulate import tabulate

from ...constants import EVAL_CHUNK_ELEMENTS, MAX_QUADRATURE_DOUBLINGS, QUADRATURE_OVERSAMPLE
from ...exceptions import ValidationError
from ..base import CalculationBase
from ..ensemble.build import Ensemble

logger = logging.getLogger("zarembapi.expsum")


@dataclass
class SpectrumHistogram:
    """
    Multiplicities r(m) over the window (lower, upper].

    `norms` is sorted ascending and `counts` aligned with it.
    """

    norms: np.ndarray
    counts: np.ndarray
    lower: float
    upper: int

    def __post_init__(self):
        self.norms = np.asarray(self.norms, dtype=np.int64)
        self.counts = np.asarray(self.counts, dtype=np.int64)
        if self.norms.shape != self.counts.shape:
            raise ValidationError("norms and counts must have the same length")
        if self.norms.size and (self.norms[0] <= self.lower or self.norms[-1] > self.upper):
            raise ValidationError(f"Spectrum support leaves the window ({self.lower}, {self.upper}]")
        if np.any(self.counts <= 0):
            raise ValidationError("Spectrum counts must be positive")

    @classmethod
    def from_norms(cls, norms: Iterable[int], lower: float, upper: int) -> "SpectrumHistogram":
        values, counts = np.unique(np.fromiter(norms, dtype=np.int64), return_counts=True)
        return cls(values, counts, lower, upper)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def support(self) -> int:
        return int(self.norms.size)

    @property
    def max_norm(self) -> int:
        return int(self.norms[-1]) if self.norms.size else 0

    def as_mapping(self) -> Dict[int, int]:
        return {int(m): int(r) for m, r in zip(self.norms, self.counts)}

    def csv_rows(self):
        return ["m", "r"], [[int(m), int(r)] for m, r in zip(self.norms, self.counts)]

    def as_dict(self) -> dict:
        return {
            "window": [self.lower, self.upper],
            "total": self.total,
            "support": self.support,
            "max_norm": self.max_norm,
        }


def evaluate_sum(histogram: SpectrumHistogram, thetas: Sequence[float]) -> np.ndarray:
    """Vectorized S_N at many angles, evaluated in bounded chunks."""
    thetas = np.atleast_1d(np.asarray(thetas, dtype=np.float64))
    out = np.empty(thetas.size, dtype=np.complex128)
    if histogram.support == 0:
        out[:] = 0.0
        return out
    weights = histogram.counts.astype(np.float64)
    norms = histogram.norms.astype(np.float64)
    rows = max(1, EVAL_CHUNK_ELEMENTS // histogram.support)
    for start in range(0, thetas.size, rows):
        block = thetas[start : start + rows]
        phase = np.mod(np.outer(block, norms), 1.0)
        out[start : start + rows] = np.exp(2j * math.pi * phase) @ weights
    return out


class Spectrum(CalculationBase):
    """
    Histogram of member norms.

    **Inputs:**
        * `ensemble`: an `Ensemble`.
    """

    logger_name = "zarembapi.expsum"

    def validate_inputs(self):
        self._require("ensemble")
        if not isinstance(self.inputs["ensemble"], Ensemble):
            raise ValidationError("ensemble must be an Ensemble")

    def calculate(self) -> SpectrumHistogram:
        ensemble: Ensemble = self.inputs["ensemble"]
        histogram = SpectrumHistogram.from_norms(ensemble.norms, ensemble.lower, ensemble.N)
        self._trace_step("spectrum", "support", histogram.support)
        return histogram


class ExponentialSum(CalculationBase):
    """
    S_N(theta) for one angle.

    **Inputs:**
        * `histogram`: a `SpectrumHistogram`.
        * `theta`: a real angle.
    """

    logger_name = "zarembapi.expsum"

    def validate_inputs(self):
        self._require("histogram", "theta")
        _check_histogram(self.inputs["histogram"], allow_empty=True)
        if not math.isfinite(float(self.inputs["theta"])):
            raise ValidationError(f"theta must be finite, got {self.inputs['theta']}")

    def calculate(self) -> complex:
        return complex(evaluate_sum(self.inputs["histogram"], [float(self.inputs["theta"])])[0])


class L2Exact(CalculationBase):
    """Exact L2 mass: integral over [0, 1] of |S_N|^2 equals sum_m r(m)^2."""

    logger_name = "zarembapi.expsum"

    def validate_inputs(self):
        self._require("histogram")
        _check_histogram(self.inputs["histogram"])

    def calculate(self) -> int:
        counts = self.inputs["histogram"].counts
        return sum(int(r) * int(r) for r in counts)


@dataclass(frozen=True)
class L2Ratio:
    N: int
    l2: int
    size: int

    @property
    def baseline(self) -> float:
        return self.size**2 / self.N

    @property
    def c_emp(self) -> float:
        return self.l2 * self.N / self.size**2

    def as_dict(self) -> dict:
        return {"N": self.N, "l2": self.l2, "size": self.size, "baseline": self.baseline, "c_emp": self.c_emp}


class L2RatioReport(CalculationBase):
    """
    Compare the L2 mass with the baseline |Omega|^2 / N.

    **Inputs:**
        * `histogram`, `N`.
    """

    logger_name = "zarembapi.expsum"

    def validate_inputs(self):
        self._require("histogram", "N")
        _check_histogram(self.inputs["histogram"])
        self._positive_int("N")

    def calculate(self) -> L2Ratio:
        histogram = self.inputs["histogram"]
        report = L2Ratio(self.inputs["N"], L2Exact(histogram=histogram).calculate(), histogram.total)
        logger.info(f"[l2] N={report.N} l2={report.l2} C_emp={report.c_emp:.6f}")
        return report


def l2_trend_table(reports: Sequence[L2Ratio]) -> str:
    rows = [[r.N, r.size, r.l2, r.c_emp] for r in reports]
    return tabulate(rows, headers=["N", "|Omega|", "l2", "C_emp"], tablefmt="github", floatfmt=".6f")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    points: int
    stabilized: bool

    def as_dict(self) -> dict:
        return {"value": self.value, "points": self.points, "stabilized": self.stabilized}


def fft_l2(histogram: SpectrumHistogram, points: int) -> float:
    """Trapezoid rule for the integral of |S_N|^2 on `points` uniform angles."""
    bins = np.zeros(points, dtype=np.float64)
    np.add.at(bins, histogram.norms % points, histogram.counts.astype(np.float64))
    values = np.fft.ifft(bins) * points
    return float(np.mean(np.abs(values) ** 2))


class L2Quadrature(CalculationBase):
    """
    Numerical L2 mass by uniform quadrature, doubling until stable.

    **Inputs:**
        * `histogram`.
        * `points` (optional): initial grid, default 20 x max norm rounded up to a power of two.
        * `rel_tol` (optional): relative change that counts as stable.
    """

    logger_name = "zarembapi.expsum"

    def validate_inputs(self):
        self._require("histogram")
        _check_histogram(self.inputs["histogram"])
        self.inputs.setdefault("rel_tol", 1e-6)
        self.inputs.setdefault("points", None)

    def calculate(self) -> QuadratureResult:
        histogram = self.inputs["histogram"]
        points: Optional[int] = self.inputs["points"]
        if points is None:
            points = 1 << max(4, math.ceil(math.log2(QUADRATURE_OVERSAMPLE * histogram.max_norm)))
        value = fft_l2(histogram, points)
        for _ in range(MAX_QUADRATURE_DOUBLINGS):
            points *= 2
            refined = fft_l2(histogram, points)
            if abs(refined - value) <= self.inputs["rel_tol"] * max(abs(refined), 1.0):
                return QuadratureResult(refined, points, True)
            value = refined
        self._warn(f"L2 quadrature did not stabilize at {points} points")
        return QuadratureResult(value, points, False)


def _check_histogram(histogram, allow_empty: bool = False) -> SpectrumHistogram:
    if not isinstance(histogram, SpectrumHistogram):
        raise ValidationError("histogram must be a SpectrumHistogram")
    if not allow_empty and histogram.total == 0:
        raise ValidationError("Spectrum histogram is empty")
    return histogram

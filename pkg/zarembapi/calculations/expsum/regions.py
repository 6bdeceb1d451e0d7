"""
Partition of the first major-arc integral into six regions.

Admissible points have Q0 < q <= sqrt(N) and Q0/q <= |K| <= sqrt(N)/q.
With xi1 = N^(2 gamma + 7 eps0), regions are tested in the order
2, 1, 3, 4, 6, 5, each one with an inclusive lower boundary:

    2: q > xi1
    1: xi1 <= |K|
    3: q > N^(gamma + 5 eps0) and N^(3 gamma + 12 eps0) / q <= |K|
    4: xi1 / q <= |K|
    6: q^nu <= |K|
    5: everything left, i.e. Q0/q <= |K| < min(q^nu, xi1/q)

Earlier tests supply the exclusive upper boundaries of later regions.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import IntEnum
from math import isqrt
from typing import Dict, List

import numpy as np
from tabulate import tabulate

from ...constants import DEFAULT_GRID, DEFAULT_NU, DEFAULT_Q0_OVERRIDE, DEFAULT_STABILITY_TOL
from ...exceptions import ValidationError
from ..base import CalculationBase
from .arcs import coprime_numerators, trapezoid_nodes
from .spectrum import SpectrumHistogram, _check_histogram, evaluate_sum

logger = logging.getLogger("zarembapi.expsum")


class Region(IntEnum):
    OUTSIDE = 0
    R1 = 1
    R2 = 2
    R3 = 3
    R4 = 4
    R5 = 5
    R6 = 6

    @property
    def label(self) -> str:
        return "OUTSIDE" if self is Region.OUTSIDE else str(int(self))


@dataclass(frozen=True)
class RegionParams:
    N: int
    gamma: float
    eps0: float
    nu: float = DEFAULT_NU
    Q0: float = DEFAULT_Q0_OVERRIDE

    def __post_init__(self):
        if self.N < 1:
            raise ValidationError(f"N must be positive, got {self.N}")
        if not (0.0 < self.gamma < 1.0):
            raise ValidationError(f"gamma must lie in (0, 1), got {self.gamma}")
        if not (0.0 < self.eps0 < 1.0):
            raise ValidationError(f"eps0 must lie in (0, 1), got {self.eps0}")
        if not (1.0 <= self.nu <= 2.0):
            raise ValidationError(f"nu must lie in [1, 2], got {self.nu}")
        if self.Q0 < 1.0:
            raise ValidationError(f"Q0 must be at least 1, got {self.Q0}")

    @property
    def xi1(self) -> float:
        return self.N ** (2.0 * self.gamma + 7.0 * self.eps0)

    @property
    def mid_denominator(self) -> float:
        return self.N ** (self.gamma + 5.0 * self.eps0)

    @property
    def mid_offset(self) -> float:
        return self.N ** (3.0 * self.gamma + 12.0 * self.eps0)

    def admissible(self, q: int, K: float) -> bool:
        k = abs(K)
        return self.Q0 < q <= math.sqrt(self.N) and self.Q0 / q <= k <= math.sqrt(self.N) / q

    def as_dict(self) -> dict:
        return {"N": self.N, "gamma": self.gamma, "eps0": self.eps0, "nu": self.nu, "Q0": self.Q0, "xi1": self.xi1}


def classify(q: int, K: float, p: RegionParams) -> Region:
    if not p.admissible(q, K):
        return Region.OUTSIDE
    k = abs(K)
    if q > p.xi1:
        return Region.R2
    if k >= p.xi1:
        return Region.R1
    if q > p.mid_denominator and k >= p.mid_offset / q:
        return Region.R3
    if k >= p.xi1 / q:
        return Region.R4
    if k >= q**p.nu:
        return Region.R6
    return Region.R5


class ClassifyRegion(CalculationBase):
    """
    Region label of one (q, K) point.

    **Inputs:**
        * `q`, `K`, `params` (`RegionParams`).
    """

    logger_name = "zarembapi.expsum"

    def validate_inputs(self):
        self._require("q", "K", "params")
        self._positive_int("q")
        if not isinstance(self.inputs["params"], RegionParams):
            raise ValidationError("params must be RegionParams")

    def calculate(self) -> Region:
        return classify(self.inputs["q"], float(self.inputs["K"]), self.inputs["params"])


def partition_grid(p: RegionParams, size: int = 512) -> Dict[str, int]:
    """
    Classify a size x size grid of admissible points: q evenly spread over
    (Q0, sqrt N], |K| log-spaced over [Q0/q, sqrt(N)/q].
    """
    top = isqrt(p.N)
    lo_q = math.floor(p.Q0) + 1
    if lo_q > top:
        raise ValidationError(f"No admissible denominators: Q0={p.Q0}, sqrt(N)={math.sqrt(p.N):.6g}")
    qs = np.unique(np.linspace(lo_q, top, size).round().astype(int))
    counts = {r.label: 0 for r in Region}
    for q in qs:
        q = int(q)
        lo_k, hi_k = p.Q0 / q, math.sqrt(p.N) / q
        ks = np.geomspace(lo_k, hi_k, size)
        ks[0], ks[-1] = lo_k, hi_k
        for k in ks:
            counts[classify(q, float(k), p).label] += 1
    return counts


@dataclass
class RegionMassReport:
    params: RegionParams
    grid: int
    masses: Dict[str, float] = field(default_factory=dict)
    nodes: Dict[str, int] = field(default_factory=dict)
    total: float = 0.0
    baseline: float = 0.0
    coarse_total: float = 0.0
    stabilized: bool = True

    def share(self, label: str) -> float:
        return self.masses.get(label, 0.0) / self.total if self.total > 0 else 0.0

    def rows(self) -> List[list]:
        return [
            [label, self.nodes.get(label, 0), self.masses.get(label, 0.0), self.share(label)]
            for label in ("1", "2", "3", "4", "5", "6")
        ]

    def csv_rows(self):
        return ["region", "nodes", "mass", "share"], self.rows()

    def as_dict(self) -> dict:
        return {
            "params": self.params.as_dict(),
            "grid": self.grid,
            "regions": {r[0]: {"nodes": r[1], "mass": r[2], "share": r[3]} for r in self.rows()},
            "total": self.total,
            "baseline": self.baseline,
            "stabilized": self.stabilized,
        }

    def summary(self) -> str:
        table = tabulate(self.rows(), headers=["region", "nodes", "mass", "share"], tablefmt="github", floatfmt=".6g")
        return f"{table}\n\ntotal={self.total:.6g} baseline={self.baseline:.6g} stabilized={self.stabilized}"


def _region_masses(histogram: SpectrumHistogram, p: RegionParams, grid: int):
    N = p.N
    masses = {r.label: 0.0 for r in Region if r is not Region.OUTSIDE}
    nodes = {label: 0 for label in masses}
    root = math.sqrt(N)
    for q in range(math.floor(p.Q0) + 1, isqrt(N) + 1):
        lo, hi = p.Q0 / q, root / q
        if lo > hi:
            continue
        K, w = trapezoid_nodes(lo, hi, grid)
        labels = [classify(q, float(k), p).label for k in K]
        numerators = list(coprime_numerators(q))
        # both signs of K share labels and weights
        theta = np.concatenate([a / q + s * K / N for a in numerators for s in (1.0, -1.0)])
        power = np.abs(evaluate_sum(histogram, theta)) ** 2
        power = power.reshape(2 * len(numerators), K.size).sum(axis=0)
        for label, weight, value in zip(labels, w, power):
            masses[label] += weight * value / N
            nodes[label] += 2 * len(numerators)
    return masses, nodes


class RegionMass(CalculationBase):
    """
    Split the first major-arc integral

        (1/N) sum over coprime a/q with Q0 < q <= sqrt(N) of the integral of
        |S_N(a/q + K/N)|^2 over Q0/q <= |K| <= sqrt(N)/q

    by region. Nodes are classified one by one, so the region masses add up
    to the total exactly. The baseline term 2 Q0^2 |Omega|^2 / N is reported
    next to it.

    **Inputs:**
        * `histogram`, `params`.
        * `grid` (optional): nodes per unit of K; the total is recomputed at
          half the grid to judge stability.
    """

    logger_name = "zarembapi.expsum"

    def validate_inputs(self):
        self._require("histogram", "params")
        _check_histogram(self.inputs["histogram"])
        if not isinstance(self.inputs["params"], RegionParams):
            raise ValidationError("params must be RegionParams")
        self.inputs.setdefault("grid", DEFAULT_GRID)
        self.inputs.setdefault("stability_tol", DEFAULT_STABILITY_TOL)
        self._positive_int("grid", minimum=2)

    def calculate(self) -> RegionMassReport:
        histogram: SpectrumHistogram = self.inputs["histogram"]
        p: RegionParams = self.inputs["params"]
        grid = self.inputs["grid"]
        masses, nodes = _region_masses(histogram, p, grid)
        coarse, _ = _region_masses(histogram, p, grid // 2)
        total = sum(masses.values())
        coarse_total = sum(coarse.values())
        stabilized = abs(total - coarse_total) <= self.inputs["stability_tol"] * max(total, 1e-300)
        report = RegionMassReport(
            params=p,
            grid=grid,
            masses=masses,
            nodes=nodes,
            total=total,
            baseline=2.0 * p.Q0**2 * histogram.total**2 / p.N,
            coarse_total=coarse_total,
            stabilized=stabilized,
        )
        if not stabilized:
            self._warn(f"Region masses moved {abs(total - coarse_total):.3g} between grid {grid // 2} and {grid}")
        logger.info(f"[regions] N={p.N} total={total:.6g} baseline={report.baseline:.6g}")
        return report

"""
Pressure bracket for dim E_A.

For s in [0, 1] let Z_k(s, x) = sum over words w of length k of
(q_k + x q_{k-1})^(-2s), the depth-k cylinder sum weighted at x. The ratio
r_k(s, x) = Z_{k+1}(s, x) / Z_k(s, x) satisfies

    min_x r_k(s, x) <= lambda(s) <= max_x r_k(s, x)

where lambda(s) is the leading eigenvalue of the transfer operator of the
Gauss branches, and both sides tighten monotonically in k. The dimension
is the root of lambda(s) = 1, so the roots of the two sides bracket it.

Bisection runs on the dyadic grid of [0, 1]; the lower end is always a
point where the lower sandwich is still above 1 and the upper end a point
where the upper sandwich is already below 1.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from ...constants import (
    DEFAULT_BISECTION_TOL,
    DEFAULT_RATIO_GRID_POINTS,
    EVAL_CHUNK_ELEMENTS,
    MAX_BISECTION_ITER,
    MAX_CYLINDERS,
)
from ...core import Alphabet
from ...exceptions import ConvergenceError, ValidationError
from ..base import CalculationBase
from .cylinders import check_cylinder_budget, continuant_arrays

logger = logging.getLogger("zarembapi.dimension")


@dataclass
class DimensionBracket:
    alphabet: Alphabet
    depth: int
    lower: float
    upper: float
    tol: float
    iterations: int = 0
    cylinder_root: Optional[float] = None

    def __post_init__(self):
        if not (0.0 <= self.lower <= self.upper <= 1.0):
            raise ValidationError(f"Invalid dimension bracket [{self.lower}, {self.upper}]")

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper

    def nested_in(self, other: "DimensionBracket", tol: float = 1e-9) -> bool:
        return other.lower - tol <= self.lower and self.upper <= other.upper + tol

    def as_dict(self) -> dict:
        return {
            "alphabet": list(self.alphabet.elements),
            "depth": self.depth,
            "lower": self.lower,
            "upper": self.upper,
            "midpoint": self.midpoint,
            "width": self.width,
            "tol": self.tol,
            "iterations": self.iterations,
            "cylinder_root": self.cylinder_root,
        }


class RatioSandwich:
    """Evaluates min_x and max_x of r_k(s, x) on a grid of x in [0, 1]."""

    def __init__(self, alphabet: Alphabet, depth: int, grid_points: int = DEFAULT_RATIO_GRID_POINTS):
        q, q_prev = continuant_arrays(alphabet, depth)
        self.q = q.astype(np.float64)
        self.q_prev = q_prev.astype(np.float64)
        letters = np.asarray(alphabet.elements, dtype=np.float64)
        self.x = np.linspace(0.0, 1.0, grid_points)
        self.branch = letters[:, None] + self.x[None, :]
        self.points = np.concatenate([self.x, (1.0 / self.branch).ravel()])
        self.evaluations = 0
        rows = max(1, EVAL_CHUNK_ELEMENTS // self.points.size)
        self._chunks = [slice(i, i + rows) for i in range(0, self.q.size, rows)]
        self._log_cache = None
        if self.q.size * self.points.size <= 2 * EVAL_CHUNK_ELEMENTS:
            self._log_cache = [self._log_terms(c) for c in self._chunks]

    def _log_terms(self, chunk: slice) -> np.ndarray:
        return np.log(self.q[chunk, None] + self.points[None, :] * self.q_prev[chunk, None])

    def cylinder_sums(self, s: float) -> np.ndarray:
        total = np.zeros(self.points.size)
        for i, chunk in enumerate(self._chunks):
            logs = self._log_cache[i] if self._log_cache is not None else self._log_terms(chunk)
            total += np.exp(-2.0 * s * logs).sum(axis=0)
        self.evaluations += 1
        return total

    def ratios(self, s: float) -> np.ndarray:
        sums = self.cylinder_sums(s)
        m = self.x.size
        at_x = sums[:m]
        at_images = sums[m:].reshape(self.branch.shape)
        return (self.branch ** (-2.0 * s) * at_images).sum(axis=0) / at_x

    def cylinder_length_sum(self, s: float) -> float:
        log_lengths = np.log(self.q) + np.log(self.q + self.q_prev)
        return float(np.exp(-s * log_lengths).sum())


def dyadic_bisect(predicate: Callable[[float], bool], iterations: int) -> Tuple[float, float]:
    """
    Shrink [0, 1] to a dyadic interval [lo, hi] with predicate(lo) true
    and predicate(hi) false. If predicate(1) holds, (1, 1) is returned.
    """
    lo, hi = 0.0, 1.0
    if not predicate(lo):
        raise ConvergenceError("Bisection predicate fails at s = 0")
    if predicate(hi):
        return hi, hi
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            lo = mid
        else:
            hi = mid
    return lo, hi


class PressureBisection(CalculationBase):
    """
    Bracket the Hausdorff dimension of E_A from depth-k cylinders.

    **Inputs:**
        * `alphabet`: a proper alphabet.
        * `depth`: cylinder depth k >= 1.
        * `tol` (optional): bisection resolution, 0 < tol < 1.
        * `grid_points` (optional): number of x samples in [0, 1].
        * `max_iterations` (optional): cap on bisection steps.
        * `max_cylinders` (optional): budget on |A|^k.

    **Output:**
        * A `DimensionBracket` with the cylinder-length root as a point estimate.
    """

    logger_name = "zarembapi.dimension"

    def validate_inputs(self):
        self._require("alphabet", "depth")
        alphabet = self._alphabet(proper=True)
        depth = self._positive_int("depth")
        self.inputs.setdefault("tol", DEFAULT_BISECTION_TOL)
        self.inputs.setdefault("grid_points", DEFAULT_RATIO_GRID_POINTS)
        self.inputs.setdefault("max_iterations", MAX_BISECTION_ITER)
        self.inputs.setdefault("max_cylinders", MAX_CYLINDERS)
        tol = self.inputs["tol"]
        if not (0.0 < tol < 1.0):
            raise ValidationError(f"tol must lie in (0, 1), got {tol}")
        self._positive_int("grid_points", minimum=2)
        check_cylinder_budget(alphabet, depth, self.inputs["max_cylinders"])

    def calculate(self) -> DimensionBracket:
        alphabet = self.inputs["alphabet"]
        depth = self.inputs["depth"]
        tol = self.inputs["tol"]
        iterations = math.ceil(math.log2(1.0 / tol))
        if iterations > self.inputs["max_iterations"]:
            raise ConvergenceError(
                f"tol={tol} needs {iterations} bisection steps, cap is {self.inputs['max_iterations']}"
            )

        sandwich = RatioSandwich(alphabet, depth, self.inputs["grid_points"])
        lower, _ = dyadic_bisect(lambda s: float(sandwich.ratios(s).min()) > 1.0, iterations)
        _, upper = dyadic_bisect(lambda s: float(sandwich.ratios(s).max()) >= 1.0, iterations)
        if lower > upper:
            raise ConvergenceError(f"Inconsistent bracket [{lower}, {upper}] at depth {depth}")
        lo, hi = dyadic_bisect(lambda s: sandwich.cylinder_length_sum(s) >= 1.0, iterations)

        bracket = DimensionBracket(
            alphabet=alphabet,
            depth=depth,
            lower=lower,
            upper=upper,
            tol=tol,
            iterations=sandwich.evaluations,
            cylinder_root=0.5 * (lo + hi),
        )
        self._trace_step("pressure", "bracket", (lower, upper))
        self._trace_step("pressure", "cylinder_root", bracket.cylinder_root)
        logger.info(
            f"[dimension] alphabet={alphabet.label} depth={depth} bracket=[{lower:.6f}, {upper:.6f}]"
        )
        return bracket


def auto_depth(alphabet: Alphabet, budget: int) -> int:
    """Largest depth whose cylinder count stays within budget."""
    depth = 1
    while len(alphabet) ** (depth + 1) <= budget:
        depth += 1
    return depth

"""
Scale parameters of the factorization: Q0 and the ladder N_j.

Q0 as defined is astronomically large at any realistic eps0, so every
computation that needs it runs with an explicit override; both values are
logged whenever the override is in effect.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ...constants import EPS0_UPPER, MIN_LADDER_DEPTH
from ...core import Alphabet
from ...exceptions import ValidationError
from ..base import CalculationBase

logger = logging.getLogger("zarembapi.ensemble")


def check_eps0(eps0: float, upper: float = EPS0_UPPER) -> float:
    if not (0.0 < eps0 < upper):
        raise ValidationError(f"eps0 must lie in (0, {upper}), got {eps0}")
    return float(eps0)


def q0_branches(A: int, eps0: float) -> Tuple[float, float]:
    """Both branches of Q0 without domain checks: (10^5 A^4 / eps0^2, eps0^-5)."""
    return 1e5 * A**4 / eps0**2, eps0**-5


def q0_crossover(A: int) -> float:
    """eps0 at which the two Q0 branches agree."""
    return (1e5 * A**4) ** (-1.0 / 3.0)


@dataclass(frozen=True)
class Q0Value:
    A: int
    eps0: float
    value: float
    branch: str

    @property
    def log(self) -> float:
        return math.log(self.value)

    def as_dict(self) -> dict:
        return {"A": self.A, "eps0": self.eps0, "value": self.value, "log": self.log, "branch": self.branch}


class Q0(CalculationBase):
    """
    Q0 = max(10^5 A^4 / eps0^2, eps0^-5).

    **Inputs:**
        * `alphabet` or `A`: the largest letter.
        * `eps0`: in (0, 1/2500).
    """

    logger_name = "zarembapi.ensemble"

    def validate_inputs(self):
        self._require("eps0")
        if "alphabet" in self.inputs:
            self.inputs["A"] = self._alphabet(proper=True).A
        self._require("A")
        self._positive_int("A")
        check_eps0(self.inputs["eps0"])

    def calculate(self) -> Q0Value:
        A, eps0 = self.inputs["A"], self.inputs["eps0"]
        alphabet_branch, eps_branch = q0_branches(A, eps0)
        if alphabet_branch >= eps_branch:
            return Q0Value(A, eps0, alphabet_branch, "alphabet")
        return Q0Value(A, eps0, eps_branch, "eps0")


@dataclass
class FactorizationParams:
    """
    Split thresholds for the three-way factorization.

    `Q0_override` replaces the true Q0 in every constraint; `Q0` keeps the
    true value for reporting.
    """

    M1: float
    M3: float
    eps0: float
    Q0: float
    Q0_override: Optional[float] = None

    def __post_init__(self):
        check_eps0(self.eps0)
        for name in ("M1", "M3", "Q0"):
            if getattr(self, name) <= 1:
                raise ValidationError(f"{name} must exceed 1, got {getattr(self, name)}")
        if self.Q0_override is not None and self.Q0_override <= 1:
            raise ValidationError(f"Q0_override must exceed 1, got {self.Q0_override}")

    @property
    def effective_q0(self) -> float:
        return self.Q0 if self.Q0_override is None else float(self.Q0_override)

    def validate_for(self, N: int) -> "FactorizationParams":
        """Check Q0 <= M1, M3 <= N / Q0 and M1 M3 < N^(1 - eps0)."""
        q0 = self.effective_q0
        if self.Q0_override is not None:
            logger.info(f"[factorize] Q0 true={self.Q0:.6g} effective={q0:.6g}")
        if not q0 <= self.M1:
            raise ValidationError(f"Need Q0 <= M1, got Q0={q0:.6g}, M1={self.M1}")
        if not self.M3 <= N / q0:
            raise ValidationError(f"Need M3 <= N/Q0, got M3={self.M3}, N/Q0={N / q0:.6g}")
        if not self.M1 * self.M3 < N ** (1.0 - self.eps0):
            raise ValidationError(
                f"Need M1*M3 < N^(1-eps0), got {self.M1 * self.M3} >= {N ** (1.0 - self.eps0):.6g}"
            )
        return self

    def as_dict(self) -> dict:
        return {
            "M1": self.M1,
            "M3": self.M3,
            "eps0": self.eps0,
            "Q0": self.Q0,
            "Q0_override": self.Q0_override,
            "Q0_effective": self.effective_q0,
        }


# -------------------------------------------------------------------
# Ladder of scales
# -------------------------------------------------------------------
def ladder_depth(N: float, eps0: float, A: int) -> int:
    """J(N) = floor((log log N - 4 log(10A) + 2 log eps0) / (-log(1 - eps0)))."""
    if N <= math.e:
        raise ValidationError(f"N must exceed e for the ladder depth, got {N}")
    top = math.log(math.log(N)) - 4.0 * math.log(10.0 * A) + 2.0 * math.log(eps0)
    return math.floor(top / -math.log1p(-eps0))


def minimal_log10_horizon(eps0: float, A: int, depth: int = MIN_LADDER_DEPTH) -> float:
    """log10 of the smallest N with J(N) >= depth."""
    loglog = depth * -math.log1p(-eps0) + 4.0 * math.log(10.0 * A) - 2.0 * math.log(eps0)
    return math.exp(loglog) / math.log(10.0)


@dataclass
class LadderSequence:
    """
    Scales N_j for -1-J <= j <= J+1, stored as exponents log N_j / log N.
    """

    N: float
    eps0: float
    J: int
    exponents: Dict[int, float] = field(default_factory=dict)

    def indices(self) -> List[int]:
        return sorted(self.exponents)

    def value(self, j: int) -> float:
        return math.exp(self.exponents[j] * math.log(self.N))

    def covering_violations(self, tol: float = 1e-12) -> List[int]:
        """Indices j < J with N_j < N_{j+1}^(1 - eps0)."""
        bad = []
        for j in range(-1 - self.J, self.J):
            if self.exponents[j] < (1.0 - self.eps0) * self.exponents[j + 1] - tol:
                bad.append(j)
        return bad

    def final_step_covered(self) -> bool:
        return self.exponents[self.J] >= 1.0 - self.eps0

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "eps0": self.eps0,
            "J": self.J,
            "exponents": {str(j): e for j, e in sorted(self.exponents.items())},
            "final_step_covered": self.final_step_covered(),
        }


class Ladder(CalculationBase):
    """
    Build the ladder N_j.

    **Formulas:**
        * N_j = N^((1-eps0)^(1-j) / (2-eps0)) for -1-J <= j <= 1
        * N_j = N^(1 - (1-eps0)^j / (2-eps0)) for 0 <= j <= J
        * N_{J+1} = N

    **Inputs:**
        * `N`, `eps0` in (0, 1), and `alphabet` or `A`.
        * `J_override` (optional): use this depth instead of J(N).
    """

    logger_name = "zarembapi.ensemble"

    def validate_inputs(self):
        self._require("N", "eps0")
        if "alphabet" in self.inputs:
            self.inputs["A"] = self._alphabet(proper=True).A
        self._require("A")
        check_eps0(self.inputs["eps0"], upper=1.0)
        if self.inputs["N"] <= 1:
            raise ValidationError(f"N must exceed 1, got {self.inputs['N']}")
        override = self.inputs.get("J_override")
        if override is None:
            J = ladder_depth(self.inputs["N"], self.inputs["eps0"], self.inputs["A"])
            if J < MIN_LADDER_DEPTH:
                raise ValidationError(
                    f"Ladder depth J={J} < {MIN_LADDER_DEPTH}; needs log10 N >= "
                    f"{minimal_log10_horizon(self.inputs['eps0'], self.inputs['A']):.6g}"
                )
        else:
            if isinstance(override, bool) or not isinstance(override, int) or override < 1:
                raise ValidationError(f"J_override must be a positive integer, got {override!r}")
            J = override
        self.inputs["J"] = J

    def calculate(self) -> LadderSequence:
        N, eps0, J = self.inputs["N"], self.inputs["eps0"], self.inputs["J"]
        c = 1.0 / (2.0 - eps0)
        exponents = {}
        for j in range(-1 - J, 2):
            exponents[j] = c * (1.0 - eps0) ** (1 - j)
        for j in range(0, J + 1):
            exponents[j] = 1.0 - c * (1.0 - eps0) ** j
        exponents[J + 1] = 1.0
        ladder = LadderSequence(N, eps0, J, exponents)
        if not ladder.final_step_covered():
            self._warn(f"N_J = N^{exponents[J]:.6g} is below N^(1-eps0) at J={J}")
        return ladder

"""
Depth-k cylinders of E_A.

E_A is modelled by the Gauss-map inverse branches x -> 1/(a + x), a in A.
The cylinder of a word w = [d_1..d_k] is the image of [0, 1] under their
composition and has length 1/(q_k (q_k + q_{k-1})) where q_k = K(w) and
q_{k-1} = K(w minus last letter).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import numpy as np

from ...constants import MAX_CYLINDERS
from ...core import Alphabet, CFWord, continuant_pair
from ...exceptions import BudgetExceededError, ValidationError
from ..base import CalculationBase


@dataclass(frozen=True)
class Cylinder:
    word: CFWord
    q: int
    q_prev: int

    @property
    def length(self) -> Fraction:
        return Fraction(1, self.q * (self.q + self.q_prev))


def check_cylinder_budget(alphabet: Alphabet, depth: int, max_cylinders: int = MAX_CYLINDERS) -> int:
    count = len(alphabet) ** depth
    if count > max_cylinders:
        raise BudgetExceededError(
            f"{count} cylinders at depth {depth} over {alphabet.label} exceed the budget {max_cylinders}"
        )
    # int64 continuant arrays
    if (depth + 1) * math.log2(alphabet.A + 1) > 62:
        raise BudgetExceededError(f"Continuants at depth {depth} would overflow 64-bit arrays")
    return count


def continuant_arrays(alphabet: Alphabet, depth: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Return (q_k, q_{k-1}) for every word of length `depth`, in lexicographic order.
    """
    letters = np.asarray(alphabet.elements, dtype=np.int64)
    q = letters.copy()
    q_prev = np.ones_like(q)
    for _ in range(depth - 1):
        q, q_prev = (q[:, None] * letters[None, :] + q_prev[:, None]).ravel(), np.repeat(q, letters.size)
    return q, q_prev


class CylinderIntervals(CalculationBase):
    """
    List the depth-k cylinders with exact lengths.

    **Inputs:**
        * `alphabet`: a proper alphabet.
        * `depth`: k >= 1.
        * `max_cylinders` (optional): budget on |A|^k.

    **Output:**
        * A list of `Cylinder` in lexicographic word order.
    """

    logger_name = "zarembapi.dimension"

    def validate_inputs(self):
        self._require("alphabet", "depth")
        alphabet = self._alphabet(proper=True)
        depth = self._positive_int("depth")
        self.inputs.setdefault("max_cylinders", MAX_CYLINDERS)
        check_cylinder_budget(alphabet, depth, self.inputs["max_cylinders"])

    def calculate(self) -> List[Cylinder]:
        alphabet = self.inputs["alphabet"]
        cylinders = []
        for letters in itertools.product(alphabet.elements, repeat=self.inputs["depth"]):
            q, q_prev = continuant_pair(letters)
            cylinders.append(Cylinder(CFWord(letters), q, q_prev))
        return cylinders


def total_length(cylinders: List[Cylinder]) -> Fraction:
    if not cylinders:
        raise ValidationError("No cylinders given")
    return sum((c.length for c in cylinders), Fraction(0))

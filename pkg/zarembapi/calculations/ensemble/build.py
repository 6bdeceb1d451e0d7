from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, Optional, Tuple, Union

from ...constants import DEFAULT_WINDOW_RATIO, MAX_ENSEMBLE_MEMBERS, MAX_WINDOW_RATIO
from ...core import Alphabet, Mat2, matrix_of_word
from ...core.words import words_from_lines
from ...exceptions import BudgetExceededError, ValidationError
from ..base import CalculationBase

logger = logging.getLogger("zarembapi.ensemble")

Word = Tuple[int, ...]


@dataclass
class Ensemble:
    """
    Alphabet words whose matrices have norm in (N/C, N].

    Words are kept in depth-first lexicographic order; `norms[i]` is the
    norm (top-left continuant) of `words[i]`.
    """

    alphabet: Alphabet
    N: int
    window_ratio: float
    words: List[Word] = field(default_factory=list)
    norms: List[int] = field(default_factory=list)

    @property
    def lower(self) -> float:
        return self.N / self.window_ratio

    @property
    def members(self) -> List[Mat2]:
        return [matrix_of_word(w) for w in self.words]

    def __len__(self) -> int:
        return len(self.words)

    def growth_exponent(self) -> float:
        """log |Omega_N| / log N, comparable with twice the dimension."""
        if len(self) == 0 or self.N <= 1:
            return 0.0
        return math.log(len(self)) / math.log(self.N)

    def to_lines(self) -> List[str]:
        return [" ".join(str(d) for d in w) for w in self.words]

    def write(self, path: Union[str, Path], header: Optional[str] = None) -> Path:
        path = Path(path)
        lines = self.to_lines() if header is None else [header, *self.to_lines()]
        path.write_text("\n".join(lines) + "\n")
        return path

    @classmethod
    def from_lines(cls, alphabet: Alphabet, N: int, window_ratio: float, lines: Iterable[str]) -> "Ensemble":
        ensemble = cls(alphabet, N, window_ratio)
        for word in words_from_lines(lines):
            if not word.over(alphabet):
                raise ValidationError(f"Word {word} uses letters outside {alphabet.label}")
            norm = matrix_of_word(word).norm
            if not (ensemble.lower < norm <= N):
                raise ValidationError(f"Word {word} has norm {norm} outside ({ensemble.lower:g}, {N}]")
            ensemble.words.append(word.quotients)
            ensemble.norms.append(norm)
        return ensemble

    def as_dict(self) -> dict:
        return {
            "alphabet": list(self.alphabet.elements),
            "N": self.N,
            "window_ratio": self.window_ratio,
            "size": len(self),
            "growth_exponent": self.growth_exponent(),
        }


class BuildEnsemble(CalculationBase):
    """
    Enumerate the norm-window ensemble Omega_N.

    **Inputs:**
        * `alphabet`: a proper alphabet.
        * `N`: horizon, N >= 1.
        * `window_ratio` (optional): C in (1, 10], default 2.
        * `max_members` (optional): member cap.

    **Output:**
        * An `Ensemble`.
    """

    logger_name = "zarembapi.ensemble"

    def validate_inputs(self):
        self._require("alphabet", "N")
        self._alphabet(proper=True)
        self._positive_int("N")
        self.inputs.setdefault("window_ratio", DEFAULT_WINDOW_RATIO)
        self.inputs.setdefault("max_members", MAX_ENSEMBLE_MEMBERS)
        C = self.inputs["window_ratio"]
        if not (1.0 < C <= MAX_WINDOW_RATIO):
            raise ValidationError(f"window_ratio must lie in (1, {MAX_WINDOW_RATIO}], got {C}")

    def calculate(self) -> Ensemble:
        alphabet: Alphabet = self.inputs["alphabet"]
        N: int = self.inputs["N"]
        C = float(self.inputs["window_ratio"])
        cap = self.inputs["max_members"]
        ensemble = Ensemble(alphabet, N, C)
        lower = N / C

        # stack entries: (word, K(word), K(word minus last letter))
        stack: List[Tuple[Word, int, int]] = [((a,), a, 1) for a in reversed(alphabet.elements)]
        while stack:
            word, p, q = stack.pop()
            if p > N:
                continue
            if p > lower:
                if len(ensemble.words) >= cap:
                    raise BudgetExceededError(f"Ensemble exceeds the member cap {cap} at N={N}")
                ensemble.words.append(word)
                ensemble.norms.append(p)
            for a in reversed(alphabet.elements):
                child = a * p + q
                if child <= N:
                    stack.append((word + (a,), child, p))

        self._trace_step("ensemble", "size", len(ensemble))
        logger.info(
            f"[ensemble] alphabet={alphabet.label} N={N} C={C} size={len(ensemble)} "
            f"growth={ensemble.growth_exponent():.4f}"
        )
        return ensemble

"""
Bounded-denominator census.

A denominator d is in D_A(N) when some word over the alphabet has
continuant d. Words are explored depth-first with pruning once the
running continuant exceeds N; the frontier is kept as numpy arrays of
(K(w), K(w minus last letter)) pairs, processed in bounded chunks.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ...constants import CENSUS_CHUNK, MAX_CENSUS_BYTES, MAX_CENSUS_HORIZON
from ...core import Alphabet, CFWord, cf_of_rational
from ...exceptions import BudgetExceededError, ValidationError
from ..base import CalculationBase

logger = logging.getLogger("zarembapi.census")


@dataclass
class DenominatorSet:
    """
    Bitset of admissible denominators 1..N.

    `tails[d]`, when present, holds K(w minus its last letter) for a
    witness word w of d, which is enough to rebuild w.
    """

    N: int
    alphabet: Alphabet
    members: np.ndarray
    tails: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.members[1:]))

    @property
    def ratio(self) -> float:
        return self.count / self.N

    def __contains__(self, d: object) -> bool:
        return isinstance(d, (int, np.integer)) and 1 <= d <= self.N and bool(self.members[d])

    def __len__(self) -> int:
        return self.count

    def to_list(self) -> List[int]:
        return [int(d) for d in np.flatnonzero(self.members) if d >= 1]

    def restrict(self, n: int) -> "DenominatorSet":
        if not 1 <= n <= self.N:
            raise ValidationError(f"Cannot restrict a census up to {self.N} to {n}")
        tails = None if self.tails is None else self.tails[: n + 1].copy()
        return DenominatorSet(n, self.alphabet, self.members[: n + 1].copy(), tails)

    def issubset(self, other: "DenominatorSet") -> bool:
        n = min(self.N, other.N)
        if np.any(self.members[n + 1 :]):
            return False
        return bool(np.all(other.members[: n + 1] | ~self.members[: n + 1]))

    def witness(self, d: int) -> CFWord:
        """Rebuild an alphabet word with continuant d."""
        if self.tails is None:
            raise ValidationError("Census was run without witnesses")
        if d not in self:
            raise ValidationError(f"{d} is not an admissible denominator up to {self.N}")
        tail = int(self.tails[d])
        # the reversed witness is a representation of tail/d
        reversed_word = cf_of_rational(tail, d)
        for candidate in (reversed_word, reversed_word.twin()):
            if candidate is not None and candidate.over(self.alphabet):
                return candidate.reversed()
        raise ValidationError(f"Stored witness for {d} is inconsistent")

    def witness_lines(self) -> List[str]:
        return [f"{d}: {self.witness(d)}" for d in self.to_list()]

    def as_dict(self) -> dict:
        return {
            "alphabet": list(self.alphabet.elements),
            "N": self.N,
            "count": self.count,
            "ratio": self.ratio,
        }


def _expand_subtree(
    letters: Tuple[int, ...], first: int, N: int, track: bool, chunk: int = CENSUS_CHUNK
):
    members = np.zeros(N + 1, dtype=bool)
    tails = np.zeros(N + 1, dtype=np.int64) if track else None
    # a child built from a letter above N already exceeds N; dropping those
    # letters keeps a*p + q below 2**63 for N <= 10**9
    letter_arr = np.asarray([a for a in letters if a <= N], dtype=np.int64)
    stack = [(np.array([first], dtype=np.int64), np.array([1], dtype=np.int64))]
    visited = 0
    while stack:
        p, q = stack.pop()
        keep = p <= N
        p, q = p[keep], q[keep]
        if p.size == 0:
            continue
        visited += p.size
        members[p] = True
        if track:
            fresh = tails[p] == 0
            if np.any(fresh):
                values, idx = np.unique(p[fresh], return_index=True)
                tails[values] = q[fresh][idx]
        # children: append each letter, first row (a*p + q, p)
        child_p = (letter_arr[:, None] * p[None, :] + q[None, :]).ravel()
        child_q = np.tile(p, letter_arr.size)
        for start in reversed(range(0, child_p.size, chunk)):
            stack.append((child_p[start : start + chunk], child_q[start : start + chunk]))
    return members, tails, visited


class EnumerateDenominators(CalculationBase):
    """
    Enumerate D_A(N) by pruned depth-first search over alphabet words.

    **Inputs:**
        * `alphabet`: letters (an `Alphabet`, a sequence or a string such as "1..5").
          Single-letter alphabets are allowed here.
        * `N`: horizon, 1 <= N <= 10^9.
        * `witnesses` (optional): keep enough data to rebuild one word per d.
        * `workers` (optional): independent first-letter subtrees run in a
          process pool and are merged by disjunction.
        * `max_bytes` (optional): memory budget for the bitset.

    **Output:**
        * A `DenominatorSet`.
    """

    logger_name = "zarembapi.census"

    def validate_inputs(self):
        self._require("alphabet", "N")
        self._alphabet(proper=False)
        N = self._positive_int("N")
        if N > MAX_CENSUS_HORIZON:
            raise ValidationError(f"N={N} exceeds the census horizon {MAX_CENSUS_HORIZON}")
        self.inputs.setdefault("witnesses", False)
        self.inputs.setdefault("workers", 1)
        self.inputs.setdefault("max_bytes", MAX_CENSUS_BYTES)
        self._positive_int("workers")
        needed = (N + 1) * (9 if self.inputs["witnesses"] else 1)
        if needed > self.inputs["max_bytes"]:
            raise BudgetExceededError(
                f"Census up to {N} needs {needed} bytes, budget is {self.inputs['max_bytes']}"
            )

    def calculate(self) -> DenominatorSet:
        alphabet: Alphabet = self.inputs["alphabet"]
        N = self.inputs["N"]
        track = bool(self.inputs["witnesses"])
        workers = self.inputs["workers"]
        letters = alphabet.elements
        roots = [a for a in letters if a <= N]

        if workers > 1 and len(roots) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(
                    pool.map(
                        _expand_subtree,
                        [letters] * len(roots),
                        roots,
                        [N] * len(roots),
                        [track] * len(roots),
                    )
                )
        else:
            parts = [_expand_subtree(letters, a, N, track) for a in roots]

        members = np.zeros(N + 1, dtype=bool)
        tails = np.zeros(N + 1, dtype=np.int64) if track else None
        visited = 0
        # merge in letter order so witnesses do not depend on scheduling
        for part_members, part_tails, part_visited in parts:
            visited += part_visited
            if track:
                fresh = part_members & ~members
                tails[fresh] = part_tails[fresh]
            members |= part_members

        result = DenominatorSet(N, alphabet, members, tails)
        self._trace_step("census", "words_visited", visited)
        self._trace_step("census", "count", result.count)
        logger.info(f"[census] alphabet={alphabet.label} N={N} count={result.count} words={visited}")
        return result

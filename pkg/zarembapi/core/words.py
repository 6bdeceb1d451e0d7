"""
Continued-fraction words and continuants.

Convention: the word [d_1, ..., d_k] stands for
1/(d_1 + 1/(d_2 + ... + 1/d_k)), a rational b/d with 0 < b <= d.
Its denominator is the continuant K(d_1, ..., d_k) and its numerator is
K(d_2, ..., d_k).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Tuple, Union

from ..constants import INTEGER_CAPACITY_BITS
from ..exceptions import CapacityError, ValidationError
from .alphabet import Alphabet


def check_capacity(value: int, capacity_bits: int = INTEGER_CAPACITY_BITS) -> int:
    if value.bit_length() > capacity_bits:
        raise CapacityError(
            f"Integer {value} needs {value.bit_length()} bits, capacity is {capacity_bits}"
        )
    return value


def continuant_pair(
    quotients: Sequence[int], capacity_bits: int = INTEGER_CAPACITY_BITS
) -> Tuple[int, int]:
    """Return (K(d_1..d_k), K(d_1..d_{k-1})); the empty word gives (1, 0)."""
    prev, cur = 0, 1
    for d in quotients:
        prev, cur = cur, check_capacity(d * cur + prev, capacity_bits)
    return cur, prev


@dataclass(frozen=True)
class CFWord:
    quotients: Tuple[int, ...]

    def __post_init__(self):
        qs = tuple(self.quotients)
        if not qs:
            raise ValidationError("A continued-fraction word needs at least one quotient")
        for d in qs:
            if isinstance(d, bool) or not isinstance(d, int) or d < 1:
                raise ValidationError(f"Partial quotients must be positive integers, got {d!r}")
        object.__setattr__(self, "quotients", qs)

    @classmethod
    def parse(cls, text: str) -> "CFWord":
        try:
            return cls(tuple(int(t) for t in text.replace(",", " ").split()))
        except ValueError:
            raise ValidationError(f"Could not parse word {text!r}")

    @property
    def length(self) -> int:
        return len(self.quotients)

    @property
    def canonical(self) -> bool:
        return self.length == 1 or self.quotients[-1] >= 2

    def twin(self) -> Optional["CFWord"]:
        """The other representation of the same rational, if one exists."""
        qs = self.quotients
        if qs[-1] >= 2:
            return CFWord(qs[:-1] + (qs[-1] - 1, 1))
        if len(qs) >= 2:
            return CFWord(qs[:-2] + (qs[-2] + 1,))
        return None

    def over(self, alphabet: Alphabet) -> bool:
        return all(d in alphabet for d in self.quotients)

    def admissible(self, alphabet: Alphabet) -> bool:
        """True when this word or its twin uses only letters of `alphabet`."""
        if self.over(alphabet):
            return True
        other = self.twin()
        return other is not None and other.over(alphabet)

    def reversed(self) -> "CFWord":
        return CFWord(self.quotients[::-1])

    def convergent(self) -> Tuple[int, int]:
        """Return (b, d) with b/d the value of the word."""
        d, _ = continuant_pair(self.quotients)
        b, _ = continuant_pair(self.quotients[1:])
        return b, d

    def value(self) -> Fraction:
        b, d = self.convergent()
        return Fraction(b, d)

    def __len__(self) -> int:
        return self.length

    def __iter__(self):
        return iter(self.quotients)

    def __str__(self) -> str:
        return " ".join(str(d) for d in self.quotients)


WordLike = Union[CFWord, Sequence[int]]


def _quotients(word: WordLike) -> Tuple[int, ...]:
    if isinstance(word, CFWord):
        return word.quotients
    return CFWord(tuple(word)).quotients


def continuant(word: WordLike, capacity_bits: int = INTEGER_CAPACITY_BITS) -> int:
    """
    Denominator K(d_1, ..., d_k) of a word.

    Example:
        >>> continuant([2, 2])
        5
        >>> continuant([2, 1, 2])
        8
    """
    return continuant_pair(_quotients(word), capacity_bits)[0]


def cf_of_rational(b: int, d: int) -> CFWord:
    """
    Canonical word of b/d for coprime 1 <= b <= d.

    Example:
        >>> cf_of_rational(2, 5).quotients
        (2, 2)
    """
    if not (1 <= b <= d):
        raise ValidationError(f"Need 1 <= b <= d, got b={b}, d={d}")
    if gcd(b, d) != 1:
        raise ValidationError(f"b={b} and d={d} are not coprime")
    quotients = []
    x, y = d, b
    while y:
        a = x // y
        quotients.append(a)
        x, y = y, x - a * y
    return CFWord(tuple(quotients))


def words_from_lines(lines: Iterable[str]):
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            yield CFWord.parse(line)

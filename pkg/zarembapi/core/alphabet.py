from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Tuple

from ..exceptions import ValidationError


@dataclass(frozen=True)
class Alphabet:
    """
    Finite set of admissible partial quotients.

    Elements are stored sorted and distinct. A proper alphabet has at least
    two letters; `Alphabet.any_size` builds a single-letter alphabet for
    census exploration.

    Example:
        >>> Alphabet([2, 1]).elements
        (1, 2)
        >>> Alphabet.parse("1..4,7").A
        7
    """

    elements: Tuple[int, ...]
    min_size: int = field(default=2, compare=False, repr=False)

    def __post_init__(self):
        raw = list(self.elements)
        for x in raw:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ValidationError(f"Alphabet letters must be integers, got {x!r}")
            if x < 1:
                raise ValidationError(f"Alphabet letters must be positive, got {x}")
        if len(set(raw)) != len(raw):
            raise ValidationError(f"Alphabet letters must be distinct: {raw}")
        if len(raw) < self.min_size:
            raise ValidationError(
                f"Alphabet needs at least {self.min_size} letters, got {len(raw)}"
            )
        object.__setattr__(self, "elements", tuple(sorted(raw)))

    @classmethod
    def any_size(cls, elements: Iterable[int]) -> "Alphabet":
        return cls(tuple(elements), min_size=1)

    @classmethod
    def parse(cls, text: str, *, min_size: int = 2) -> "Alphabet":
        """Parse "1,2,5", "1..10" or a mix such as "1..3,7"."""
        letters = []
        for token in str(text).replace(" ", "").split(","):
            if not token:
                continue
            try:
                if ".." in token:
                    lo, hi = token.split("..", 1)
                    letters.extend(range(int(lo), int(hi) + 1))
                else:
                    letters.append(int(token))
            except ValueError:
                raise ValidationError(f"Could not parse alphabet token {token!r}")
        return cls(tuple(letters), min_size=min_size)

    @property
    def A(self) -> int:
        return self.elements[-1]

    @property
    def is_proper(self) -> bool:
        return len(self.elements) >= 2

    def require_proper(self) -> "Alphabet":
        if not self.is_proper:
            raise ValidationError(f"Alphabet {self.label} needs at least 2 letters")
        return self

    @property
    def label(self) -> str:
        return "{" + ",".join(str(x) for x in self.elements) + "}"

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __str__(self) -> str:
        return self.label

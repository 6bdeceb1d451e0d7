from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from ..constants import INTEGER_CAPACITY_BITS
from ..exceptions import ValidationError
from .words import WordLike, _quotients, check_capacity


@dataclass(frozen=True)
class Mat2:
    """
    2x2 non-negative integer matrix of determinant +-1.

    Products of quotient matrices (d 1; 1 0) have their largest entry in
    the top-left corner, so `norm` is that entry.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise ValidationError(f"Matrix entry {name} must be a non-negative integer, got {value!r}")
            check_capacity(value)
        if self.det not in (1, -1):
            raise ValidationError(f"Matrix determinant must be +-1, got {self.det}")

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def norm(self) -> int:
        return max(self.a, self.b, self.c, self.d)

    @property
    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def entry(self, i: int, j: int) -> int:
        return self.as_tuple()[2 * (i - 1) + (j - 1)]

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )


def quotient_matrix(d: int) -> Mat2:
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise ValidationError(f"Partial quotient must be a positive integer, got {d!r}")
    return Mat2(d, 1, 1, 0)


def matrix_of_word(word: WordLike, capacity_bits: int = INTEGER_CAPACITY_BITS) -> Mat2:
    """
    Product of the quotient matrices of a word.

    The first row is (K(d_1..d_k), K(d_1..d_{k-1})) and the second row is
    (K(d_2..d_k), K(d_2..d_{k-1})).
    """
    p, q, r, s = 1, 0, 0, 1
    for d in _quotients(word):
        p, q = check_capacity(p * d + q, capacity_bits), p
        r, s = check_capacity(r * d + s, capacity_bits), r
    return Mat2(p, q, r, s)

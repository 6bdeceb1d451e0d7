"""
Core value types: alphabets, continued-fraction words and 2x2 matrices.
"""

from .alphabet import Alphabet
from .words import CFWord, cf_of_rational, continuant, continuant_pair, check_capacity
from .matrices import Mat2, matrix_of_word, quotient_matrix

__all__ = [
    "Alphabet",
    "CFWord",
    "Mat2",
    "cf_of_rational",
    "check_capacity",
    "continuant",
    "continuant_pair",
    "matrix_of_word",
    "quotient_matrix",
]

"""
zarembapi: computational companion to Zaremba's conjecture
==========================================================

- Census of denominators with bounded partial quotients
- Hausdorff-dimension brackets for continued-fraction Cantor sets
- Norm-window ensembles and their three-way factorization
- Exponential sums over ensemble norms and the major-arc region analysis
"""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("zarembapi")
except PackageNotFoundError:
    __version__ = "0.1.0"

from . import calculations
from . import core
from .calculations import CalculationEngine
from .core import Alphabet, CFWord, Mat2, cf_of_rational, continuant, matrix_of_word, quotient_matrix

__all__ = [
    "calculations",
    "core",
    "CalculationEngine",
    "Alphabet",
    "CFWord",
    "Mat2",
    "cf_of_rational",
    "continuant",
    "matrix_of_word",
    "quotient_matrix",
    "__version__",
]

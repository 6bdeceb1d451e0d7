"""
zarembapi calculations
======================

Core calculation classes plus the area subpackages `census`, `dimension`,
`ensemble` and `expsum`, all loaded on import.

Example:
    import zarembapi.calculations as calc

    engine = calc.CalculationEngine()
    table = calc.census.ProportionTable(alphabet="1..5", horizons=[100, 1000]).calculate()
"""

import importlib
import pkgutil
from pathlib import Path

from .base import CalculationBase
from .engine import CalculationEngine

__all__ = ["CalculationEngine", "CalculationBase"]

_package_dir = Path(__file__).parent
for _, name, is_pkg in pkgutil.iter_modules([str(_package_dir)]):
    if name.startswith("_") or name in ["engine", "base"]:
        continue
    module = importlib.import_module(f"{__name__}.{name}")
    globals()[name] = module
    __all__.append(name)

"""
Norm-window ensemble
====================

The ensemble of alphabet matrices with norm in (N/C, N], its three-way
factorization, the Q0 parameter and the ladder of scales.
"""

import importlib
import inspect
import pkgutil
from pathlib import Path

__all__ = []
_package_path = Path(__file__).parent

# -------------------------------------------------------------------
# Discover submodules and promote their public classes and functions
# -------------------------------------------------------------------
for _, module_name, _ in pkgutil.iter_modules([str(_package_path)]):
    if module_name.startswith("_"):
        continue
    module = importlib.import_module(f"{__name__}.{module_name}")
    globals()[module_name] = module
    __all__.append(module_name)
    for obj_name, obj in inspect.getmembers(module, lambda o: inspect.isclass(o) or inspect.isfunction(o)):
        if obj.__module__ == module.__name__ and not obj_name.startswith("_"):
            globals()[obj_name] = obj
            __all__.append(obj_name)

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List

from ..core import Alphabet
from ..exceptions import ValidationError


class CalculationBase(ABC):
    """
    Abstract base class for all calculations in zarembapi.

    A calculation stores its keyword inputs, validates them immediately and
    runs on `calculate()`. Every calculation also carries a small runtime:
    a named logger, collected warnings and a calculation trace that is
    logged at DEBUG level when `verbose=True`.
    """

    logger_name = "zarembapi"

    def __init__(self, **kwargs):
        """
        Store inputs, set up the runtime and validate.

        Args:
            **kwargs: Inputs of the specific calculation. `verbose` and
                `logger` are consumed by the runtime.
        """
        self.verbose = bool(kwargs.pop("verbose", False))
        self.logger = kwargs.pop("logger", None) or logging.getLogger(self.logger_name)
        self._warnings: List[str] = []
        self._calculation_trace: List[Dict[str, Any]] = []
        self.inputs = kwargs
        self.validate_inputs()

    @abstractmethod
    def validate_inputs(self):
        """
        Check presence and validity of inputs.

        Raises `ValidationError` (a `ValueError`) on the first problem.
        """

    @abstractmethod
    def calculate(self):
        """Run the calculation and return its result object."""

    def get_inputs(self):
        return self.inputs

    def to_dict(self):
        """
        Run the calculation and return inputs and results together.

        Results that know how to serialize themselves (`as_dict`) are
        expanded.
        """
        result = self.calculate()
        if hasattr(result, "as_dict"):
            result = result.as_dict()
        return {
            "inputs": {k: _plain(v) for k, v in self.inputs.items()},
            "results": result,
        }

    @property
    def warnings(self) -> List[str]:
        return list(self._warnings)

    @property
    def trace(self) -> List[Dict[str, Any]]:
        return list(self._calculation_trace)

    # -------------------------------------------------------------------
    # Runtime helpers
    # -------------------------------------------------------------------
    def _warn(self, message: str) -> None:
        self._warnings.append(message)
        self.logger.warning(message)

    def _trace_step(self, section: str, name: str, value: Any) -> None:
        self._calculation_trace.append({"section": section, "name": name, "value": value})
        if self.verbose:
            self.logger.debug(f"[{section}] {name}: {value}")

    # -------------------------------------------------------------------
    # Input helpers
    # -------------------------------------------------------------------
    def _require(self, *keys: str) -> None:
        for key in keys:
            if key not in self.inputs:
                raise ValidationError(f"Missing required input: {key}")

    def _alphabet(self, key: str = "alphabet", proper: bool = True) -> Alphabet:
        value = self.inputs[key]
        if isinstance(value, str):
            value = Alphabet.parse(value, min_size=2 if proper else 1)
        elif not isinstance(value, Alphabet):
            value = Alphabet(tuple(value), min_size=2 if proper else 1)
        if proper:
            value.require_proper()
        self.inputs[key] = value
        return value

    def _positive_int(self, key: str, minimum: int = 1) -> int:
        value = self.inputs[key]
        if isinstance(value, float) and value.is_integer():
            value = int(value)
        if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
            raise ValidationError(f"{key} must be an integer >= {minimum}, got {value!r}")
        return value


def _plain(value: Any) -> Any:
    if isinstance(value, Alphabet):
        return list(value.elements)
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return repr(value)

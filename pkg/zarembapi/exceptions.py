"""
Exception hierarchy for zarembapi.

Conditions that are expected outcomes of a computation (a failed
hypothesis, an unsplittable ensemble member, a grid that did not
stabilize) are reported on result objects, not raised.
"""


class ZarembaError(Exception):
    """Base class for every error raised by zarembapi."""


class ValidationError(ZarembaError, ValueError):
    """An input violates a documented precondition."""


class ConfigError(ValidationError):
    """The run configuration is incomplete or inconsistent."""


class CapacityError(ZarembaError, OverflowError):
    """An exact integer exceeded the configured capacity."""


class BudgetExceededError(ZarembaError):
    """A memory, cylinder-count or member-count budget would be exceeded."""


class ConvergenceError(ZarembaError):
    """An iterative solver did not converge within its iteration cap."""

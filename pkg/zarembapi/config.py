"""
Run configuration: a flat `key = value` file merged with CLI flags.

Keys are normalized through an alias map, CLI values win over file values,
defaults fill the rest and the whole configuration is validated before any
work starts.
"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from .constants import (
    DEFAULT_BISECTION_TOL,
    DEFAULT_EPS0,
    DEFAULT_GRID,
    DEFAULT_NU,
    DEFAULT_Q0_OVERRIDE,
    DEFAULT_WINDOW_RATIO,
    EPS0_UPPER,
    MAX_WINDOW_RATIO,
)
from .core import Alphabet
from .exceptions import ConfigError, ValidationError

logger = logging.getLogger("zarembapi.cli")

ALIASES = {
    "horizons": ["n", "N", "horizon", "horizons"],
    "q0_override": ["Q0", "q0", "q0_override", "Q0_override"],
    "window_ratio": ["C", "c", "window_ratio", "window"],
    "out_dir": ["out", "out_dir", "output_dir"],
    "M1": ["M1", "m1"],
    "M3": ["M3", "m3"],
    "T": ["T", "t"],
}

OUTPUT_FORMATS = ("table", "json", "csv")


@dataclass
class RunConfig:
    command: str = ""
    alphabet: str = "1,2"
    horizons: List[int] = field(default_factory=lambda: [1000])
    eps0: float = DEFAULT_EPS0
    nu: float = DEFAULT_NU
    q0_override: float = DEFAULT_Q0_OVERRIDE
    T: Optional[int] = None
    grid: int = DEFAULT_GRID
    depth: Optional[int] = None
    tol: float = DEFAULT_BISECTION_TOL
    window_ratio: float = DEFAULT_WINDOW_RATIO
    gamma: Optional[float] = None
    M1: Optional[float] = None
    M3: Optional[float] = None
    theta: Optional[float] = None
    oracle: bool = False
    witnesses: bool = False
    workers: int = 1
    seed: int = 0
    out_dir: Optional[str] = None
    output: str = "table"
    progress: bool = True

    @classmethod
    def fit(cls, **kwargs: Any) -> "RunConfig":
        """Normalize aliases, coerce types, fill defaults and validate."""
        normalized: Dict[str, Any] = {}
        lookup = {alias: key for key, names in ALIASES.items() for alias in names}
        known = {f.name for f in fields(cls)}
        for key, value in kwargs.items():
            if value is None:
                continue
            target = lookup.get(key, key)
            if target not in known:
                raise ConfigError(f"Unknown configuration key: {key}")
            normalized[target] = _coerce(target, value)
        config = cls(**normalized)
        config.validate()
        return config

    @classmethod
    def from_sources(cls, file_values: Optional[Dict[str, Any]] = None, **cli_values: Any) -> "RunConfig":
        merged = dict(file_values or {})
        lookup = {alias: key for key, names in ALIASES.items() for alias in names}
        merged = {lookup.get(k, k): v for k, v in merged.items()}
        for key, value in cli_values.items():
            if value is not None:
                merged[lookup.get(key, key)] = value
        return cls.fit(**merged)

    @property
    def alphabet_obj(self) -> Alphabet:
        return Alphabet.parse(self.alphabet)

    @property
    def N(self) -> int:
        return self.horizons[-1]

    def lattice_T(self, N: int) -> int:
        """Default discretization T = 64 times the number of digits of N."""
        return self.T if self.T is not None else 64 * len(str(N))

    def validate(self) -> None:
        try:
            self.alphabet_obj
        except ValidationError as exc:
            raise ConfigError(f"alphabet: {exc}")
        if not self.horizons or any(n < 1 for n in self.horizons):
            raise ConfigError(f"horizons must be positive integers, got {self.horizons}")
        if any(b <= a for a, b in zip(self.horizons, self.horizons[1:])):
            raise ConfigError(f"horizons must be strictly increasing, got {self.horizons}")
        if not (0.0 < self.eps0 < EPS0_UPPER):
            raise ConfigError(f"eps0 must lie in (0, {EPS0_UPPER}), got {self.eps0}")
        if not (1.0 <= self.nu <= 2.0):
            raise ConfigError(f"nu must lie in [1, 2], got {self.nu}")
        if self.q0_override <= 1.0:
            raise ConfigError(f"q0_override must exceed 1, got {self.q0_override}")
        if self.T is not None and self.T < 1:
            raise ConfigError(f"T must be positive, got {self.T}")
        if self.grid < 2:
            raise ConfigError(f"grid must be at least 2, got {self.grid}")
        if self.depth is not None and self.depth < 1:
            raise ConfigError(f"depth must be positive, got {self.depth}")
        if not (0.0 < self.tol < 1.0):
            raise ConfigError(f"tol must lie in (0, 1), got {self.tol}")
        if not (1.0 < self.window_ratio <= MAX_WINDOW_RATIO):
            raise ConfigError(f"window_ratio must lie in (1, {MAX_WINDOW_RATIO}], got {self.window_ratio}")
        if self.gamma is not None and not (0.0 < self.gamma < 1.0):
            raise ConfigError(f"gamma must lie in (0, 1), got {self.gamma}")
        if self.theta is not None and not (0.0 <= self.theta <= 1.0):
            raise ConfigError(f"theta must lie in [0, 1], got {self.theta}")
        if self.workers < 1:
            raise ConfigError(f"workers must be positive, got {self.workers}")
        if self.output not in OUTPUT_FORMATS:
            raise ConfigError(f"output must be one of {OUTPUT_FORMATS}, got {self.output}")

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


_INT_KEYS = {"T", "grid", "depth", "workers", "seed"}
_FLOAT_KEYS = {"eps0", "nu", "q0_override", "tol", "window_ratio", "gamma", "M1", "M3", "theta"}
_BOOL_KEYS = {"oracle", "witnesses", "progress"}


def _coerce(key: str, value: Any) -> Any:
    try:
        if key == "horizons":
            if isinstance(value, str):
                return [int(float(v)) for v in value.split(",") if v.strip()]
            if isinstance(value, (int, float)):
                return [int(value)]
            return [int(v) for v in value]
        if key in _INT_KEYS:
            return int(float(value)) if isinstance(value, str) else int(value)
        if key in _FLOAT_KEYS:
            return float(value)
        if key in _BOOL_KEYS:
            if isinstance(value, str):
                return value.strip().lower() in ("1", "true", "yes", "on")
            return bool(value)
        return str(value) if key in ("alphabet", "out_dir", "output", "command") else value
    except (TypeError, ValueError):
        raise ConfigError(f"Could not interpret {key} = {value!r}")


def load_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """Read a flat `key = value` file; `#` starts a comment."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Config file not found: {path}")
    values: Dict[str, str] = {}
    for number, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{number}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key] = value
    logger.debug(f"[config] loaded {len(values)} keys from {path}")
    return values

"""
Serialization of results: deterministic JSON, CSV with a metadata header,
and tabulate tables for people.
"""

from __future__ import annotations

import csv
import io
import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence, Union

import numpy as np
from tabulate import tabulate

from . import __version__
from .constants import FLOAT_SIGNIFICANT_DIGITS


def format_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return format(x, f".{FLOAT_SIGNIFICANT_DIGITS}g")


def _plain(obj: Any) -> Any:
    if hasattr(obj, "as_dict"):
        return _plain(obj.as_dict())
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, Mapping):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset, np.ndarray)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_plain(v) for v in items]
    return obj


def to_json(obj: Any, indent: int = 2) -> str:
    """JSON with sorted keys and floats at fixed precision."""
    return _emit(_plain(obj), indent, 0)


def _emit(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        body = ",\n".join(f"{pad}{json.dumps(k)}: {_emit(obj[k], indent, level + 1)}" for k in sorted(obj))
        return "{\n" + body + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        body = ",\n".join(pad + _emit(v, indent, level + 1) for v in obj)
        return "[\n" + body + "\n" + end + "]"
    return json.dumps(str(obj))


def envelope(command: str, config: Mapping[str, Any], results: Any) -> dict:
    return {"version": __version__, "command": command, "config": dict(config), "results": results}


def meta_header(config: Mapping[str, Any]) -> str:
    """One comment line carrying the version and the resolved config."""
    meta = to_json({"version": __version__, "config": dict(config)}, indent=0).replace("\n", "")
    return f"# zarembapi {meta}"


def csv_text(headers: Sequence[str], rows: Iterable[Sequence[Any]], config: Mapping[str, Any]) -> str:
    buffer = io.StringIO()
    buffer.write(meta_header(config) + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow([format_float(v) if isinstance(v, float) else v for v in row])
    return buffer.getvalue()


def write_text(path: Union[str, Path], text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text if text.endswith("\n") else text + "\n")
    return path


def table(headers: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    return tabulate(list(rows), headers=list(headers), tablefmt="github", floatfmt=".6g")

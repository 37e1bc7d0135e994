"""Deterministic CSV / JSON emission of result rows."""

from __future__ import annotations

import csv
import dataclasses
import json
import math
from enum import Enum
from typing import Any, Dict, Iterable, List, Sequence, TextIO

SIG_DIGITS = 12


def _round(v: float) -> float:
    return float(f"{v:.{SIG_DIGITS}g}")


def csv_cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, Enum):
        return str(v.value)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(_round(v))
    if isinstance(v, (tuple, list)):
        return " ".join(csv_cell(x) for x in v)
    return str(v)


def json_value(v: Any) -> Any:
    if isinstance(v, Enum):
        return v.value
    if isinstance(v, float):
        return _round(v) if math.isfinite(v) else None
    if isinstance(v, (tuple, list)):
        return [json_value(x) for x in v]
    return v


def as_row(obj: Any) -> Dict[str, Any]:
    if dataclasses.is_dataclass(obj):
        return {f.name: getattr(obj, f.name) for f in dataclasses.fields(obj)}
    return dict(obj)


def write_rows(rows: Iterable[Any], fields: Sequence[str], fmt: str, out: TextIO) -> None:
    data: List[Dict[str, Any]] = [as_row(r) for r in rows]
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(fields)
        for r in data:
            w.writerow([csv_cell(r.get(k)) for k in fields])
    elif fmt == "json":
        payload = [{k: json_value(r.get(k)) for k in fields} for r in data]
        json.dump(payload, out, indent=1, allow_nan=False)
        out.write("\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def field_names(cls: Any) -> List[str]:
    return [f.name for f in dataclasses.fields(cls)]

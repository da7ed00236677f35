"""Reading observation sequences and writing extracted records."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import TextIO

from .extract import RecordSequence
from .errors import DimensionMismatch, EmptyInput, InvalidElement

__all__ = ["read_sequence", "parse_sequence", "records_to_json", "records_to_csv"]


def _number(text: str):
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise InvalidElement(f"not a number: {text!r}") from None


def parse_sequence(text: str, fmt: str | None = None) -> tuple[list, int | None]:
    """Parse observations from CSV or JSON text.

    CSV has one observation per row (d columns for vectors); a non-numeric
    first row is taken as a header. JSON is an array of numbers or of
    equal-length arrays.

    Returns
    -------
    (observations, dim)
        ``dim`` is None for scalar data.
    """
    stripped = text.strip()
    if fmt is None:
        fmt = "json" if stripped.startswith("[") else "csv"
    if fmt == "json":
        data = json.loads(stripped)
        if not isinstance(data, list):
            raise InvalidElement("JSON input must be an array")
        rows = [tuple(r) if isinstance(r, list) else r for r in data]
    elif fmt == "csv":
        rows = []
        for i, rec in enumerate(csv.reader(io.StringIO(stripped))):
            if not rec or all(not c.strip() for c in rec):
                continue
            try:
                vals = [_number(c) for c in rec]
            except InvalidElement:
                if i == 0:
                    continue
                raise
            rows.append(vals[0] if len(vals) == 1 else tuple(vals))
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if not rows:
        raise EmptyInput("no observations")
    vector = isinstance(rows[0], tuple)
    dim = len(rows[0]) if vector else None
    for r in rows:
        if isinstance(r, tuple) != vector or (vector and len(r) != dim):
            raise DimensionMismatch("rows have inconsistent dimension")
    return rows, dim


def read_sequence(path: str | Path | TextIO, fmt: str | None = None) -> tuple[list, int | None]:
    if hasattr(path, "read"):
        return parse_sequence(path.read(), fmt)
    p = Path(path)
    if fmt is None and p.suffix.lower() in (".json", ".csv"):
        fmt = p.suffix.lower()[1:]
    return parse_sequence(p.read_text(), fmt)


def records_to_json(rs: RecordSequence) -> str:
    return json.dumps(rs.to_dict(), sort_keys=True)


def records_to_csv(rs: RecordSequence) -> str:
    """Rows ``n,t,value...`` with one value column per coordinate."""
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    dim = rs.space.dim
    w.writerow(["n", "t"] + (["value"] if dim is None else [f"value{c + 1}" for c in range(dim)]))
    for e in rs.events:
        vals = list(e.value) if isinstance(e.value, tuple) else [e.value]
        w.writerow([e.ordinal, e.time_index] + [repr(v) if isinstance(v, float) else v for v in vals])
    return out.getvalue()

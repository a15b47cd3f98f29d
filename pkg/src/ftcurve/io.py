"""Curve files: canonical JSON and headered CSV."""

from __future__ import annotations

import csv
import io
import json
import os

import numpy as np

from .curve import PolyCurve
from .errors import CurveFileError, FTCurveError


def _num(x) -> str:
    s = "%.17g" % x
    # keep a float marker so JSON readers return -0.0 rather than integer 0
    return s if any(ch in s for ch in ".en") else s + ".0"


def dumps_json(c: PolyCurve) -> str:
    """Canonical JSON text; 17 significant digits make the round trip bit-exact."""
    rows = ",\n    ".join("[" + ", ".join(_num(x) for x in v) + "]" for v in c.vertices)
    closed = "true" if c.closed else "false"
    return f'{{\n  "dim": {c.dim},\n  "closed": {closed},\n  "vertices": [\n    {rows}\n  ]\n}}\n'


def dumps_csv(c: PolyCurve) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"x{i}" for i in range(c.dim)])
    for v in c.vertices:
        w.writerow([_num(x) for x in v])
    return buf.getvalue()


def _line_of(text: str, needle_index: int) -> int:
    return text.count("\n", 0, needle_index) + 1


def loads_json(text: str, dim: int | None = None) -> PolyCurve:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CurveFileError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(obj, dict):
        raise CurveFileError("top level must be an object", line=1)
    for key in ("dim", "closed", "vertices"):
        if key not in obj:
            raise CurveFileError("missing key", field=key)
    d = obj["dim"]
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise CurveFileError("dim must be a positive integer", field="dim")
    if not isinstance(obj["closed"], bool):
        raise CurveFileError("closed must be true or false", field="closed")
    verts = obj["vertices"]
    if not isinstance(verts, list):
        raise CurveFileError("vertices must be a list", field="vertices")
    if dim is not None and d != dim:
        raise CurveFileError(f"dimension {d} does not match expected {dim}", field="dim")
    # locate each vertex row in the text so errors can name a line
    starts = [i for i, ch in enumerate(text) if ch == "["]
    row_lines = [_line_of(text, i) for i in starts[1:]] if starts else []
    out = np.empty((len(verts), d))
    for r, v in enumerate(verts):
        line = row_lines[r] if r < len(row_lines) else None
        if not isinstance(v, list) or len(v) != d:
            raise CurveFileError(f"vertex must have {d} coordinates", line=line, field=f"vertices[{r}]")
        for k, x in enumerate(v):
            if isinstance(x, bool) or not isinstance(x, (int, float)) or not np.isfinite(x):
                raise CurveFileError("coordinate must be a finite number", line=line,
                                     field=f"vertices[{r}][{k}]")
            out[r, k] = x
    try:
        return PolyCurve(out, obj["closed"])
    except (ValueError, FTCurveError) as exc:
        raise CurveFileError(str(exc), field="vertices") from None


def loads_csv(text: str, closed: bool = False, dim: int | None = None) -> PolyCurve:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise CurveFileError("empty file", line=1)
    header = [h.strip() for h in rows[0]]
    expect = [f"x{i}" for i in range(len(header))]
    if header != expect:
        raise CurveFileError("header must be x0,x1,...", line=1)
    d = len(header)
    if dim is not None and d != dim:
        raise CurveFileError(f"dimension {d} does not match expected {dim}", line=1)
    out = []
    for ln, row in enumerate(rows[1:], start=2):
        if not row or all(not x.strip() for x in row):
            continue
        if len(row) != d:
            raise CurveFileError(f"expected {d} fields, got {len(row)}", line=ln)
        vals = []
        for k, x in enumerate(row):
            try:
                f = float(x)
            except ValueError:
                raise CurveFileError(f"not a number: {x!r}", line=ln, field=header[k]) from None
            if not np.isfinite(f):
                raise CurveFileError("coordinate must be finite", line=ln, field=header[k])
            vals.append(f)
        out.append(vals)
    try:
        return PolyCurve(np.array(out).reshape(-1, d), closed)
    except (ValueError, FTCurveError) as exc:
        raise CurveFileError(str(exc)) from None


def _format_of(path, fmt):
    if fmt:
        return fmt
    ext = os.path.splitext(str(path))[1].lower()
    return "csv" if ext == ".csv" else "json"


def read_curve(path, closed: bool = False, dim: int | None = None, fmt: str | None = None) -> PolyCurve:
    """Read a curve; ``closed`` applies to CSV only (JSON records it)."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CurveFileError(f"cannot read {path}: {exc.strerror}") from None
    if _format_of(path, fmt) == "csv":
        return loads_csv(text, closed, dim)
    return loads_json(text, dim)


def write_curve(c: PolyCurve, path, fmt: str | None = None) -> None:
    text = dumps_csv(c) if _format_of(path, fmt) == "csv" else dumps_json(c)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)

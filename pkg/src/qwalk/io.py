"""
Result tables and their CSV form.

Files start with ``# key: value`` metadata lines, then a header row, then
data. Floats use 17 significant digits so every value round-trips exactly;
lines end in a bare LF.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = ["ResultTable", "format_value", "emit_csv", "render_csv", "read_csv"]


@dataclass(eq=False)
class ResultTable:
    """
    Rectangular table of real or integer columns plus ordered metadata.

    Parameters
    ----------
    columns : sequence of str
    data : array_like, shape (rows, len(columns))
    metadata : dict
        Written in insertion order, one ``# key: value`` line each.
    """

    columns: list[str]
    data: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.columns = [str(c) for c in self.columns]
        data = np.asarray(self.data)
        if data.size == 0:
            data = np.zeros((0, len(self.columns)))
        if data.ndim != 2 or data.shape[1] != len(self.columns):
            raise ValueError(
                f"data of shape {data.shape} does not match {len(self.columns)} columns")
        if np.iscomplexobj(data):
            raise ValueError("table entries must be real")
        if not np.all(np.isfinite(data)):
            raise ValueError("table entries must be finite")
        self.data = data

    @classmethod
    def from_columns(cls, named: dict, metadata: dict | None = None) -> "ResultTable":
        cols = [np.asarray(v) for v in named.values()]
        n = {c.shape for c in cols}
        if len(n) > 1:
            raise ValueError("columns differ in length")
        # keep integer columns integral
        dtype = np.result_type(*cols) if cols else float
        data = np.column_stack(cols).astype(dtype) if cols else np.zeros((0, 0))
        return cls(list(named), data, dict(metadata or {}))

    @property
    def n_rows(self) -> int:
        return self.data.shape[0]

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]


def format_value(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    if v == 0.0:
        return "0"  # also folds -0.0
    if v.is_integer() and abs(v) < 1e16:
        return str(int(v))
    return format(v, ".17g")


def render_csv(table: ResultTable) -> str:
    buf = io.StringIO()
    for key, value in table.metadata.items():
        text = str(value).replace("\n", " ")
        buf.write(f"# {key}: {text}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    integral = np.issubdtype(table.data.dtype, np.integer)
    for row in table.data:
        writer.writerow([str(int(v)) if integral else format_value(v) for v in row])
    return buf.getvalue()


def emit_csv(table: ResultTable, path) -> None:
    """
    Write ``table`` to ``path`` (``"-"`` for standard output).

    Raises
    ------
    OSError
        When the file cannot be written.
    """
    text = render_csv(table)
    if str(path) == "-":
        import sys
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(Path(path), "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def read_csv(path) -> ResultTable:
    """Parse a file written by :func:`emit_csv` (floats come back exactly)."""
    meta = {}
    with open(Path(path), encoding="utf-8", newline="") as fh:
        lines = fh.read().split("\n")
    body = []
    for line in lines:
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(":")
            meta[key.strip()] = value.strip()
        elif line:
            body.append(line)
    rows = list(csv.reader(body))
    if not rows:
        raise ValueError("no header row")
    header, rest = rows[0], rows[1:]
    data = np.array([[float(x) for x in r] for r in rest], dtype=float)
    return ResultTable(header, data.reshape(len(rest), len(header)), meta)

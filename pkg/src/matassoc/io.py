"""CSV input and output.

Tables are RFC 4180 CSV files with a header row and ``.`` as decimal
separator; an optional first column holds row identifiers.  Missing values
are not supported: ``NaN``, ``inf`` and empty cells are rejected.
"""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .errors import EmptyTable, NonNumericCell, ParseError, RaggedRows
from .geometry import DataTable, SquareMatrix

SCHEMA_VERSION = 1


def _read_rows(path):
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            return list(csv.reader(fh))
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not valid UTF-8 ({exc.reason})") from None
    except csv.Error as exc:
        raise ParseError(f"{path}: {exc}") from None


def _parse(path, has_row_ids: bool):
    rows = [r for r in _read_rows(path) if r]
    if len(rows) < 2:
        raise EmptyTable(f"{path}: a header and at least one data row are required")
    header, body = rows[0], rows[1:]
    width = len(header)
    if has_row_ids:
        if width < 2:
            raise EmptyTable(f"{path}: no value columns besides the row identifiers")
        col_labels = header[1:]
    else:
        col_labels = header
    values, row_labels = [], []
    for i, row in enumerate(body):
        line = i + 2
        if len(row) != width:
            raise RaggedRows(f"{path}: expected {width} fields, found {len(row)}", line)
        cells = row
        if has_row_ids:
            row_labels.append(row[0])
            cells = row[1:]
        parsed = []
        for j, cell in enumerate(cells):
            column = j + 2 if has_row_ids else j + 1
            try:
                v = float(cell)
            except ValueError:
                raise NonNumericCell(f"{path}: non-numeric cell {cell!r}", line, column) from None
            if not math.isfinite(v):
                raise NonNumericCell(
                    f"{path}: non-finite cell {cell!r} (missing data is not supported)",
                    line,
                    column,
                )
            parsed.append(v)
        values.append(parsed)
    return np.array(values, dtype=float), row_labels, col_labels


def load_table(path, has_row_ids: bool = False) -> DataTable:
    """Read a CSV table; row order is preserved."""
    values, rows, cols = _parse(path, has_row_ids)
    if values.shape[0] < 2:
        raise EmptyTable(f"{path}: at least two observations are required")
    return DataTable(values, rows, cols)


def load_matrix(path, has_row_ids: bool = False, role: str = "distance") -> SquareMatrix:
    """Read a square symmetric matrix (e.g. dissimilarities) from CSV.

    The header supplies the labels.
    """
    values, rows, cols = _parse(path, has_row_ids)
    if values.shape[0] != values.shape[1]:
        raise ParseError(f"{path}: matrix is {values.shape[0]} x {values.shape[1]}, not square")
    return SquareMatrix(values, role, rows or cols)


def format_float(v) -> str:
    # repr is the shortest string that round-trips
    return repr(float(v))


def write_table(table: DataTable, path=None, row_ids: bool = True) -> str:
    """Serialize a table to CSV text, writing it to ``path`` when given."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow((["id"] if row_ids else []) + list(table.col_labels))
    for label, row in zip(table.row_labels, table.values):
        w.writerow(([label] if row_ids else []) + [format_float(v) for v in row])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def rows_to_csv(rows: list[dict], columns=None) -> str:
    if not rows:
        return ""
    columns = list(columns or rows[0].keys())
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([format_float(r[c]) if isinstance(r.get(c), float) else r.get(c, "") for c in columns])
    return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else None
    return obj


def to_json(report: dict) -> str:
    return json.dumps(_jsonable(report), indent=2, sort_keys=False) + "\n"

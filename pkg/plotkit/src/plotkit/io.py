"""CSV reading for the render pipeline.

Input files are the '#'-commented CSV files produced by the modelock
CLI.  Header comments are `key = value` pairs; the `schema` key is
checked so that files from an incompatible producer are rejected.
"""

from __future__ import annotations

SCHEMA = "modelock-csv-1"


class PlotError(ValueError):
    pass


def read_csv(path):
    """Return (meta, columns, rows) from a commented CSV file.

    *meta* is the dict of header-comment keys, *columns* the column
    names, *rows* a list of per-row dicts with empty cells mapped to
    None and numeric cells parsed to float.
    """
    meta = {}
    columns = None
    rows = []
    try:
        fh = open(path, "r", encoding="utf-8")
    except OSError as err:
        raise PlotError(f"cannot read {path}: {err}") from None
    with fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                key, sep, val = line[1:].strip().partition("=")
                if sep:
                    meta[key.strip()] = val.strip()
                continue
            cells = line.split(",")
            if columns is None:
                columns = cells
                continue
            if len(cells) != len(columns):
                raise PlotError(
                    f"{path}: row has {len(cells)} cells, "
                    f"expected {len(columns)}")
            row = {}
            for name, cell in zip(columns, cells):
                if cell == "":
                    row[name] = None
                else:
                    try:
                        row[name] = float(cell)
                    except ValueError:
                        row[name] = cell
            rows.append(row)
    if columns is None:
        raise PlotError(f"{path}: no column header found")
    declared = meta.get("schema")
    if declared is not None and declared != SCHEMA:
        raise PlotError(
            f"{path}: schema {declared!r} not supported (expected {SCHEMA})")
    return meta, columns, rows


def kind_of(columns):
    """Classify a CSV by its column set: scan, trace or points."""
    cols = set(columns)
    if {"x", "y", "period", "margin"} <= cols:
        return "scan"
    if {"step", "x", "y", "detP"} <= cols:
        return "trace"
    if {"xi1", "xi2"} <= cols:
        return "points"
    raise PlotError(f"unrecognized column set: {columns}")

"""File-format contracts: the sweep CSV schema and the report JSON schema.

This package deliberately never imports the producer; the documented file
formats are the whole interface.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path


class SchemaMismatchError(Exception):
    """Input file does not conform to the documented schema."""


class EmptyInputError(Exception):
    """Input file carries no data rows."""


SWEEP_COLUMNS = (
    "family", "p", "size_a", "sum_size", "prod_size", "image_size",
    "maxgrow", "ratio_main", "d4_lower", "elapsed_ms",
)

REPORT_FIELDS = {"name", "lhs", "rhs", "ratio", "holds", "context"}


@dataclass(frozen=True)
class SweepPoint:
    size_a: int
    maxgrow: int


def load_sweep_csv(path: str | Path) -> list[SweepPoint]:
    """Parse a sweep CSV, enforcing the exact header and positive counts."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyInputError(f"{path}: no header row") from None
        if tuple(header) != SWEEP_COLUMNS:
            raise SchemaMismatchError(
                f"{path}: header {header!r} does not match the sweep schema {SWEEP_COLUMNS!r}"
            )
        points = []
        for lineno, row in enumerate(reader, start=2):
            if not row or row == [""]:
                continue
            if len(row) != len(SWEEP_COLUMNS):
                raise SchemaMismatchError(f"{path}:{lineno}: expected {len(SWEEP_COLUMNS)} cells")
            cells = dict(zip(SWEEP_COLUMNS, row))
            try:
                size_a = int(cells["size_a"])
                maxgrow = int(cells["maxgrow"])
            except ValueError as exc:
                raise SchemaMismatchError(f"{path}:{lineno}: non-integer size/maxgrow") from exc
            if size_a <= 0 or maxgrow <= 0:
                raise SchemaMismatchError(f"{path}:{lineno}: sizes must be positive")
            points.append(SweepPoint(size_a, maxgrow))
    if not points:
        raise EmptyInputError(f"{path}: no data rows")
    return points


def load_reports(paths) -> list[dict]:
    """Read report JSON files; each file holds one report object or a list."""
    reports = []
    for path in paths:
        with open(path, encoding="utf-8") as fh:
            try:
                payload = json.load(fh)
            except json.JSONDecodeError as exc:
                raise SchemaMismatchError(f"{path}: not valid JSON: {exc}") from exc
        items = payload if isinstance(payload, list) else [payload]
        for item in items:
            if not isinstance(item, dict) or not REPORT_FIELDS.issubset(item):
                raise SchemaMismatchError(
                    f"{path}: report object must carry fields {sorted(REPORT_FIELDS)}"
                )
            reports.append(item)
    if not reports:
        raise EmptyInputError("no reports found")
    return reports

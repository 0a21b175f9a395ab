"""Tabular report documents and their renderings.

A :class:`Report` holds exact values; rounding happens only when a
table is rendered for humans.  Machine formats (``csv``,
``json-lines``) carry integers verbatim and non-integral rationals as
``numerator/denominator`` tokens, so every cell can be reconstructed
exactly.  Rendering is deterministic: identical reports produce
byte-identical output.  Footer notes (winner summaries, provenance)
appear in table mode only.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .rational import decimal_string, fraction_token, percent_string

TABLE = "table"
CSV = "csv"
JSON_LINES = "json-lines"
FORMATS = (TABLE, CSV, JSON_LINES)

#: Column kinds drive table-mode rendering only.
#:   text       -- string as-is
#:   int        -- integer with no decoration
#:   percent    -- proportion shown as NN.NN%
#:   decimal<n> -- fixed-point with n places
_KINDS = ("text", "int", "percent", "decimal2", "decimal3", "decimal4")

Value = int | str | Fraction


@dataclass(frozen=True)
class Column:
    name: str
    kind: str = "text"

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown column kind {self.kind!r}")


@dataclass(frozen=True)
class Cell:
    """A value with an optional per-cell kind override."""

    value: Value
    kind: str | None = None


@dataclass
class Report:
    title: str
    columns: tuple[Column, ...]
    rows: list[tuple[Value | Cell, ...]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, *values: Value | Cell) -> None:
        if len(values) != len(self.columns):
            raise ValueError(
                f"row has {len(values)} cells but the report has {len(self.columns)} columns"
            )
        self.rows.append(values)


def _cell_parts(cell: Value | Cell, column: Column) -> tuple[Value, str]:
    if isinstance(cell, Cell):
        return cell.value, cell.kind or column.kind
    return cell, column.kind


def _display(value: Value, kind: str) -> str:
    if isinstance(value, str):
        return value
    if kind == "percent":
        return percent_string(Fraction(value))
    if kind.startswith("decimal"):
        return decimal_string(Fraction(value), int(kind[len("decimal"):]))
    return fraction_token(value)


def _machine(value: Value) -> int | str:
    if isinstance(value, str):
        return value
    if isinstance(value, Fraction) and value.denominator != 1:
        return fraction_token(value)
    return int(value)


def emit_table(report: Report, fmt: str = TABLE) -> bytes:
    """Render a report; see the module docstring for format guarantees."""
    if fmt == TABLE:
        return _emit_text_table(report)
    if fmt == CSV:
        return _emit_csv(report)
    if fmt == JSON_LINES:
        return _emit_json_lines(report)
    raise ValueError(f"unknown output format {fmt!r}")


def _emit_text_table(report: Report) -> bytes:
    headers = [col.name for col in report.columns]
    body = [
        [_display(*_cell_parts(cell, col)) for cell, col in zip(row, report.columns)]
        for row in report.rows
    ]
    widths = [
        max(len(headers[i]), *(len(r[i]) for r in body)) if body else len(headers[i])
        for i in range(len(headers))
    ]
    numeric = [col.kind != "text" for col in report.columns]

    def line(cells: list[str]) -> str:
        return "  ".join(
            cells[i].rjust(widths[i]) if numeric[i] else cells[i].ljust(widths[i])
            for i in range(len(cells))
        ).rstrip()

    lines = [report.title, line(headers), line(["-" * w for w in widths])]
    lines.extend(line(r) for r in body)
    for note in report.notes:
        lines.append(note)
    return ("\n".join(lines) + "\n").encode("utf-8")


def _emit_csv(report: Report) -> bytes:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([col.name for col in report.columns])
    for row in report.rows:
        writer.writerow([_machine(_cell_parts(cell, col)[0])
                         for cell, col in zip(row, report.columns)])
    return out.getvalue().encode("utf-8")


def _emit_json_lines(report: Report) -> bytes:
    lines = []
    for row in report.rows:
        record = {
            col.name: _machine(_cell_parts(cell, col)[0])
            for cell, col in zip(row, report.columns)
        }
        lines.append(json.dumps(record, separators=(",", ":"), ensure_ascii=False))
    return ("\n".join(lines) + "\n" if lines else "").encode("utf-8")


def emit_range_plot_data(minimum: dict[str, int], profile, *, star: bool = False) -> bytes:
    """Long-form CSV decomposing each candidate's score range for plotting.

    One ``base`` row per candidate (their guaranteed support) and one
    ``potential`` row per rival whose first-place voters could add more.
    A candidate's rows always sum to their range maximum.  For the STAR
    model each second-choice vote spans 3 extra stars (from the 1-star
    floor to the 4-star cap); for approval it spans 1 extra vote.
    """
    if len(profile.candidates) != 3:
        raise ValueError(
            f"plot data needs exactly 3 candidates, got {len(profile.candidates)}"
        )
    span = 3 if star else 1
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["candidate", "segment", "source", "value"])
    for c in profile.candidates:
        writer.writerow([c, "base", "", minimum[c]])
        for rival in profile.candidates:
            if rival == c:
                continue
            writer.writerow([c, "potential", rival, span * profile.full_count(rival, c)])
    return out.getvalue().encode("utf-8")

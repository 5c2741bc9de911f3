# src/homfin/formats/report_format.py

import csv
import io
from typing import Any, Dict, List

from homfin.algebra.resolutions import BettiTable
from homfin.core.models import Report, ReportTable


def betti_table_rows(betti: BettiTable) -> ReportTable:
    """Betti numbers laid out with one row per internal degree j and one column per i."""
    degrees = sorted({j for (_, j) in betti.entries}) or [0]
    headers = ["j \\ i"] + [str(i) for i in range(betti.length + 1)]
    rows = [[j] + [betti[(i, j)] for i in range(betti.length + 1)] for j in degrees]
    rows.append(["total"] + list(betti.totals()))
    return ReportTable(title="Betti numbers", headers=headers, rows=rows)


def betti_triples(betti: BettiTable) -> List[List[int]]:
    return [list(t) for t in betti.triples()]


def _cell(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(_cell(v) for v in value) + ")"
    return str(value)


def _render_grid(table: ReportTable) -> List[str]:
    cells = [table.headers] + [[_cell(v) for v in row] for row in table.rows]
    widths = [max(len(str(row[i])) for row in cells if i < len(row)) for i in range(len(table.headers))]
    lines = [table.title, "-" * len(table.title)]
    for k, row in enumerate(cells):
        lines.append("  ".join(str(v).rjust(w) for v, w in zip(row, widths)))
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    return lines


def render_table(report: Report) -> str:
    lines = [f"{report.command}: {report.status.upper()}"]
    for key in sorted(report.data):
        lines.append(f"  {key}: {_cell(report.data[key])}")
    for table in report.tables:
        lines.append("")
        lines.extend(_render_grid(table))
    if report.checks:
        lines.append("")
        width = max(len(c.name) for c in report.checks)
        for check in report.checks:
            mark = "✔ OK  " if check.success else "✖ FAIL"
            lines.append(f"{check.name:<{width}}  {mark}  {check.message}")
    return "\n".join(lines)


def render_csv(report: Report) -> str:
    """One row per table cell, then one row per data entry and per check."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["section", "row", "column", "value"])
    for table in report.tables:
        for row in table.rows:
            for header, value in zip(table.headers[1:], row[1:]):
                writer.writerow([table.title, _cell(row[0]), header, _cell(value)])
    for key in sorted(report.data):
        writer.writerow(["data", key, "", _cell(report.data[key])])
    for check in report.checks:
        writer.writerow(["check", check.name, "success", _cell(check.success)])
    return buffer.getvalue()


RENDERERS: Dict[str, Any] = {
    "table": render_table,
    "json": Report.to_json,
    "csv": render_csv,
}


def render_report(report: Report, output_format: str) -> str:
    return RENDERERS[output_format](report)

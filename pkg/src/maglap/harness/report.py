"""
Plain-text and console rendering of experiment reports.
"""

import math
from pathlib import Path
from typing import List, Optional, Union

from rich.console import Console
from rich.table import Table
from rich.text import Text

from ..core.file_utils import ensure_output_dir
from ..core.logging import get_logger
from .base import AssertionRecord, ExperimentReport

log = get_logger(__name__)

_STATUS_STYLES = {
    "PASS": "green",
    "FAIL": "bold red",
    "OBSERVED": "cyan",
    "NOT OBSERVED": "yellow",
}


def _format_number(value: float) -> str:
    if math.isnan(value):
        return "-"
    return f"{value:.6g}"


def _format_context(record: AssertionRecord) -> str:
    return ", ".join(f"{key}={value}" for key, value in sorted(record.context.items()))


def format_report_lines(report: ExperimentReport) -> List[str]:
    """
    Report as plain-text lines: one line per record, then skipped items and failed cells.

    Args:
        report: The experiment report.

    Returns:
        Lines without trailing newlines.
    """
    records = report.sorted_records()
    asserted = [record for record in records if record.asserted]
    lines = [
        f"maglap {report.command}",
        f"assertions: {len(asserted)}, violations: {len(report.violations)}, "
        f"observations: {len(records) - len(asserted)}, failed cells: {len(report.failures)}",
        "",
    ]
    for record in records:
        lines.append(
            f"[{record.status}] {record.name}: {record.statement} | "
            f"measured={_format_number(record.measured)} tol={_format_number(record.tolerance)} | "
            f"{_format_context(record)}"
        )

    if report.skipped:
        lines.append("")
        lines.append("Skipped:")
        lines.extend(f"  {note}" for note in report.skipped)

    if report.failures:
        lines.append("")
        lines.append("Failed cells:")
        for failure in report.failures:
            context = ", ".join(f"{key}={value}" for key, value in sorted(failure.context.items()))
            lines.append(f"  {context}: {failure.error_type}: {failure.message}")

    lines.append("")
    lines.append("RESULT: PASS" if report.passed else "RESULT: FAIL")
    return lines


def write_report(report: ExperimentReport, out_dir: Union[str, Path]) -> Path:
    """Writes ``<command>_report.txt`` and returns its path."""
    path = ensure_output_dir(out_dir) / f"{report.command}_report.txt"
    path.write_text("\n".join(format_report_lines(report)) + "\n", encoding="utf-8")
    log.info(f"Report written to {path}")
    return path


def build_table(report: ExperimentReport, include_observations: bool = True) -> Table:
    """Console table of the report records."""
    table = Table(title=f"maglap {report.command}", show_lines=False)
    table.add_column("Status")
    table.add_column("Check", style="bold")
    table.add_column("Statement")
    table.add_column("Measured", justify="right")
    table.add_column("Tol", justify="right")
    table.add_column("Context")

    for record in report.sorted_records():
        if not record.asserted and not include_observations:
            continue
        table.add_row(
            Text(record.status, style=_STATUS_STYLES[record.status]),
            record.name,
            record.statement,
            _format_number(record.measured),
            _format_number(record.tolerance),
            _format_context(record),
        )
    return table


def print_report(report: ExperimentReport, console: Optional[Console] = None) -> None:
    """Prints the table and a one-line verdict."""
    console = console or Console()
    console.print(build_table(report))
    for note in report.skipped:
        console.print(Text(f"skipped: {note}", style="italic cyan"))
    for failure in report.failures:
        console.print(Text(f"failed cell {failure.context}: {failure.error_type}: {failure.message}", style="red"))
    verdict = Text("PASS", style="bold green") if report.passed else Text("FAIL", style="bold red")
    console.print(Text.assemble(("Result: ", "bold"), verdict))

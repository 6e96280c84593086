"""
Experiment harness: configuration, experiments, reports and CSV output.
"""

from .config import DomainSpec, ExperimentConfig, default_config, parse_tolerance_overrides
from .base import AssertionRecord, CellFailure, Experiment, ExperimentReport
from .factory import ExperimentFactory
from .output import read_csv, sorted_frame, write_csv
from .report import build_table, format_report_lines, print_report, write_report
from .pipeline import (
    PolygonSpectra,
    landau_counts,
    resolve_beyond,
    richardson_tolerance,
    solve_polygon,
    spectrum_rows,
)

__all__ = [
    # Configuration
    "DomainSpec",
    "ExperimentConfig",
    "default_config",
    "parse_tolerance_overrides",

    # Experiments
    "AssertionRecord",
    "CellFailure",
    "Experiment",
    "ExperimentReport",
    "ExperimentFactory",

    # Output
    "read_csv",
    "sorted_frame",
    "write_csv",
    "build_table",
    "format_report_lines",
    "print_report",
    "write_report",

    # Shared solve steps
    "PolygonSpectra",
    "landau_counts",
    "resolve_beyond",
    "richardson_tolerance",
    "solve_polygon",
    "spectrum_rows",
]

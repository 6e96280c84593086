"""
CSV output of experiment reports.
"""

from pathlib import Path
from typing import Union

import pandas as pd

from ..core.config import CSV_FLOAT_FORMAT
from ..core.file_utils import ensure_output_dir
from ..core.logging import get_logger
from .base import ExperimentReport

log = get_logger(__name__)


def _sort_key(series: pd.Series) -> pd.Series:
    # mixed columns (refine levels next to fiber grids or labels) sort by their text
    return series.astype(str) if series.dtype == object else series


def sorted_frame(report: ExperimentReport) -> pd.DataFrame:
    """The report rows as a DataFrame sorted on every column, independent of solve order."""
    frame = report.frame()
    if frame.empty:
        return frame
    return frame.sort_values(by=list(frame.columns), key=_sort_key, kind="mergesort").reset_index(drop=True)


def write_csv(report: ExperimentReport, out_dir: Union[str, Path]) -> Path:
    """
    Writes ``<command>.csv`` with round-trip exact floats.

    Args:
        report: Experiment report holding the rows.
        out_dir: Output directory (created if needed).

    Returns:
        Path of the written file.
    """
    path = ensure_output_dir(out_dir) / f"{report.command}.csv"
    sorted_frame(report).to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    log.info(f"Wrote {len(report.rows)} rows to {path}")
    return path


def read_csv(path: Union[str, Path]) -> pd.DataFrame:
    """Reads a harness CSV back; floats parse to the values that were written."""
    return pd.read_csv(path, float_precision="round_trip")

"""
Base experiment interface and the report it produces.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List

import pandas as pd

from ..core.logging import get_logger
from .config import ExperimentConfig


@dataclass(frozen=True)
class AssertionRecord:
    """
    One checked or observed statement.

    Attributes:
        name: Short identifier of the check.
        statement: The inequality or identity in words.
        measured: Measured quantity (a margin, difference or count).
        tolerance: Tolerance the measurement was held to.
        passed: Whether the statement held.
        asserted: False for report-only observations, which never fail a run.
        context: Parameters of the cell (b, domain, k, ...).
    """

    name: str
    statement: str
    measured: float
    tolerance: float
    passed: bool
    asserted: bool = True
    context: Dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> str:
        if not self.asserted:
            return "OBSERVED" if self.passed else "NOT OBSERVED"
        return "PASS" if self.passed else "FAIL"

    def sort_key(self):
        return (self.name, sorted((k, str(v)) for k, v in self.context.items()))


@dataclass(frozen=True)
class CellFailure:
    """A sweep cell whose solve failed; the rest of the sweep continues."""

    context: Dict[str, Any]
    error_type: str
    message: str


@dataclass
class ExperimentReport:
    """
    Outcome of one experiment.

    Attributes:
        command: Subcommand name.
        records: Assertions and observations.
        rows: CSV rows, one dict per row.
        columns: CSV header.
        skipped: Human-readable notes on items left out of the assertions.
        failures: Cells whose solver failed.
    """

    command: str
    records: List[AssertionRecord] = field(default_factory=list)
    rows: List[Dict[str, Any]] = field(default_factory=list)
    columns: List[str] = field(default_factory=list)
    skipped: List[str] = field(default_factory=list)
    failures: List[CellFailure] = field(default_factory=list)

    @property
    def violations(self) -> List[AssertionRecord]:
        return [record for record in self.records if record.asserted and not record.passed]

    @property
    def passed(self) -> bool:
        return not self.violations and not self.failures

    def sorted_records(self) -> List[AssertionRecord]:
        return sorted(self.records, key=AssertionRecord.sort_key)

    def frame(self) -> pd.DataFrame:
        """CSV rows as a DataFrame with the report's header."""
        return pd.DataFrame(self.rows, columns=self.columns)


class Experiment(ABC):
    """
    Abstract Base Class for harness experiments.

    Subclasses implement ``execute`` and use ``check`` and ``observe`` to fill
    the report.
    """

    #: Subcommand the experiment answers to.
    command: str = ""
    #: CSV header of the experiment output.
    columns: List[str] = []

    def __init__(self, config: ExperimentConfig):
        """
        Initialize the experiment with a validated configuration.

        Args:
            config: Resolved configuration.
        """
        self.config = config
        self.logger = get_logger(f"{self.__class__.__module__}.{self.__class__.__name__}")
        self.report = ExperimentReport(command=self.command, columns=list(self.columns))

    @abstractmethod
    def execute(self) -> None:
        """
        Runs the experiment body, filling ``self.report``.

        Must be implemented by subclasses.
        """
        pass

    def run(self) -> ExperimentReport:
        """Runs the experiment and returns its report."""
        self.logger.info(f"Running '{self.command}' with {len(self.config.b_values)} field values")
        self.execute()
        self.logger.info(
            f"'{self.command}' finished: {len(self.report.records)} records, "
            f"{len(self.report.violations)} violations, {len(self.report.failures)} failed cells"
        )
        return self.report

    def check(
            self,
            name: str,
            statement: str,
            measured: float,
            tolerance: float,
            passed: bool,
            **context: Any,
    ) -> AssertionRecord:
        """Records an asserted statement."""
        return self._record(name, statement, measured, tolerance, passed, True, context)

    def check_upper(self, name: str, statement: str, value: float, bound: float, tolerance: float,
                    **context: Any) -> AssertionRecord:
        """Asserts ``value <= bound + tolerance``; the measured quantity is ``value - bound``."""
        excess = value - bound
        return self.check(name, statement, excess, tolerance, bool(excess <= tolerance), **context)

    def observe(self, name: str, statement: str, measured: float, holds: bool, **context: Any) -> AssertionRecord:
        """Records a report-only observation."""
        return self._record(name, statement, measured, math.nan, holds, False, context)

    def fail_cell(self, error: Exception, **context: Any) -> None:
        """Records a cell whose solve raised ``error``."""
        self.logger.error(f"Cell {context} failed: {type(error).__name__}: {error}")
        self.report.failures.append(CellFailure(context=context, error_type=type(error).__name__, message=str(error)))

    def skip(self, note: str) -> None:
        self.logger.info(f"Skipped: {note}")
        self.report.skipped.append(note)

    def add_row(self, **row: Any) -> None:
        self.report.rows.append(row)

    def _record(
            self,
            name: str,
            statement: str,
            measured: float,
            tolerance: float,
            passed: bool,
            asserted: bool,
            context: Dict[str, Any],
    ) -> AssertionRecord:
        record = AssertionRecord(
            name=name,
            statement=statement,
            measured=float(measured),
            tolerance=float(tolerance),
            passed=bool(passed),
            asserted=asserted,
            context=dict(context),
        )
        level = "info" if record.passed or not asserted else "warning"
        getattr(self.logger, level)(
            f"[{record.status}] {name}: {statement} measured={record.measured:.6g} "
            f"tol={record.tolerance:.3g} {context}"
        )
        self.report.records.append(record)
        return record

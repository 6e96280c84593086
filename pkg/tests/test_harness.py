import math

import numpy as np
import pytest
from rich.console import Console

from maglap.core.config import SPECTRUM_CSV_COLUMNS
from maglap.core.exceptions import ConfigurationError, GeometryError, SolverConvergenceError
from maglap.eigen.spectrum import Spectrum
from maglap.harness import (
    DomainSpec,
    Experiment,
    ExperimentFactory,
    default_config,
    format_report_lines,
    landau_counts,
    print_report,
    read_csv,
    resolve_beyond,
    richardson_tolerance,
    sorted_frame,
    spectrum_rows,
    write_csv,
    write_report,
)
from maglap.harness.experiments import (
    CountingExperiment,
    CylinderExperiment,
    DiskCurvesExperiment,
    InvariantsExperiment,
    PolygonSweepExperiment,
    SemicontinuityExperiment,
)


class ScriptedExperiment(Experiment):
    """Fills the report with fixed records and rows."""

    command = "invariants"
    columns = SPECTRUM_CSV_COLUMNS

    def execute(self) -> None:
        self.add_row(b=2.0, domain="square", bc="neumann", k=2, value=0.1 + 0.2, refine=3)
        self.add_row(b=1.0, domain="square", bc="dirichlet", k=1, value=math.pi, refine="fiber")
        self.add_row(b=1.0, domain="disk", bc="dirichlet", k=1, value=1.0 / 3.0, refine=3)
        self.check_upper("shift", "mu <= lambda", 1.0, 2.0, 0.0, k=1)
        self.check_upper("shift", "mu <= lambda", 2.5, 2.0, 0.1, k=2)
        self.observe("open", "mu_{k+2} <= lambda_k", 0.5, False, k=1)
        self.skip("disk entry ignored")


@pytest.fixture
def scripted_report():
    return ScriptedExperiment(default_config("invariants")).run()


class TestReport:
    def test_violations_exclude_observations(self, scripted_report):
        assert [record.context["k"] for record in scripted_report.violations] == [2]
        assert not scripted_report.passed
        statuses = sorted(record.status for record in scripted_report.records)
        assert statuses == ["FAIL", "NOT OBSERVED", "PASS"]

    def test_check_upper_measures_excess(self, scripted_report):
        excess = [record.measured for record in scripted_report.sorted_records() if record.name == "shift"]
        assert excess == pytest.approx([-1.0, 0.5])

    def test_text_report(self, scripted_report, tmp_path):
        lines = format_report_lines(scripted_report)
        assert lines[0] == "maglap invariants"
        assert "assertions: 2, violations: 1, observations: 1, failed cells: 0" in lines
        assert "  disk entry ignored" in lines
        assert lines[-1] == "RESULT: FAIL"
        path = write_report(scripted_report, tmp_path)
        assert path.read_text(encoding="utf-8").splitlines() == lines

    def test_failed_cells_fail_the_run(self, tmp_path):
        class FailingExperiment(ScriptedExperiment):
            def execute(self) -> None:
                self.fail_cell(SolverConvergenceError("no convergence"), domain="square", b=1.0)

        report = FailingExperiment(default_config("invariants")).run()
        assert not report.violations and not report.passed
        lines = format_report_lines(report)
        assert "  b=1.0, domain=square: SolverConvergenceError: no convergence" in lines

    def test_console_rendering(self, scripted_report):
        console = Console(record=True, width=200)
        print_report(scripted_report, console)
        text = console.export_text()
        assert "FAIL" in text and "mu <= lambda" in text


class TestCsvOutput:
    def test_rows_sorted_independent_of_solve_order(self, scripted_report):
        frame = sorted_frame(scripted_report)
        assert list(frame.columns) == SPECTRUM_CSV_COLUMNS
        assert frame["b"].tolist() == [1.0, 1.0, 2.0]
        assert frame["domain"].tolist() == ["disk", "square", "square"]

    def test_floats_round_trip_exactly(self, scripted_report, tmp_path):
        path = write_csv(scripted_report, tmp_path)
        assert path.name == "invariants.csv"
        frame = read_csv(path)
        assert sorted(frame["value"].tolist()) == sorted([0.1 + 0.2, math.pi, 1.0 / 3.0])

    def test_identical_runs_write_identical_files(self, tmp_path):
        first = write_csv(ScriptedExperiment(default_config("invariants")).run(), tmp_path / "a")
        second = write_csv(ScriptedExperiment(default_config("invariants")).run(), tmp_path / "b")
        assert first.read_bytes() == second.read_bytes()


class TestPipeline:
    def test_richardson_tolerance(self):
        fine = Spectrum(values=[1.0, 2.0, 3.0])
        coarse = Spectrum(values=[1.5, 2.25])
        np.testing.assert_allclose(richardson_tolerance(fine, coarse), [0.5, 0.25])

    def test_landau_counts_and_ties(self):
        dirichlet = Spectrum(values=[3.0, 5.0], ceiling=10.0)
        neumann = Spectrum(values=[0.5, 2.0, 3.0, 4.0], ceiling=10.0)
        assert landau_counts(dirichlet, neumann, 3.0, 1e-12) == (1, 2)

    def test_landau_counts_need_resolved_spectra(self):
        dirichlet = Spectrum(values=[3.0])
        neumann = Spectrum(values=[0.5, 2.0, 3.0, 4.0], ceiling=10.0)
        with pytest.raises(ConfigurationError):
            landau_counts(dirichlet, neumann, 3.0, 0.0)

    def test_resolve_beyond_doubles_the_count(self):
        requested = []

        def solve(count):
            requested.append(count)
            return Spectrum(values=np.arange(1.0, count + 1.0))

        assert resolve_beyond(solve, 5.5, start=2, limit=64).ceiling == 8.0
        assert requested == [2, 4, 8]
        with pytest.raises(ConfigurationError):
            resolve_beyond(solve, 100.0, start=2, limit=16)

    def test_spectrum_rows(self):
        rows = spectrum_rows(Spectrum(values=[1.0, 2.0]), 1.5, "square", "neumann", 3)
        assert rows[1] == {"b": 1.5, "domain": "square", "bc": "neumann", "k": 2, "value": 2.0, "refine": 3}


class TestFactory:
    def test_supported_commands(self):
        assert set(ExperimentFactory.get_supported_commands()) == {
            "disk-curves", "polygon-sweep", "cylinder", "counting", "invariants", "semicontinuity",
        }

    def test_creates_registered_class(self):
        experiment = ExperimentFactory.create_experiment(default_config("polygon-sweep"))
        assert isinstance(experiment, PolygonSweepExperiment)

    def test_register_experiment(self, monkeypatch):
        monkeypatch.setattr(ExperimentFactory, "_EXPERIMENT_REGISTRY", dict(ExperimentFactory._EXPERIMENT_REGISTRY))
        ExperimentFactory.register_experiment("scripted", ScriptedExperiment)
        assert "scripted" in ExperimentFactory.get_supported_commands()
        config = default_config("invariants")
        config.command = "scripted"
        assert isinstance(ExperimentFactory.create_experiment(config), ScriptedExperiment)

    def test_unknown_command(self):
        config = default_config("counting")
        config.command = "plot"
        with pytest.raises(ConfigurationError):
            ExperimentFactory.create_experiment(config)


class TestExperiments:
    def test_polygon_sweep_on_square(self):
        config = default_config("polygon-sweep").with_overrides(
            domains=[DomainSpec("square"), DomainSpec("disk")], b_values=[1.0], k_max=2, refine_levels=[1, 2],
        )
        report = PolygonSweepExperiment(config).run()
        assert report.passed
        names = sorted({record.name for record in report.records})
        assert names == ["neumann_shift_one", "neumann_shift_two", "same_mesh_domination"]
        assert len(report.rows) == 2 * (2 + 4)
        assert len(report.skipped) == 1

    def test_counting_on_square(self):
        config = default_config("counting").with_overrides(
            domains=[DomainSpec("square")], b_values=[1.0], refine_levels=[2, 3],
        )
        report = CountingExperiment(config).run()
        assert report.passed
        assert [record.context["q"] for record in report.sorted_records()] == [0, 1]

    def test_disk_curves_at_the_crossing(self):
        config = default_config("disk-curves").with_overrides(b_values=[2.0], n_values=[-1, 0, 1, 2])
        report = DiskCurvesExperiment(config).run()
        assert report.passed
        crossing = [record for record in report.records if record.name == "crossing"]
        assert len(crossing) == 3
        assert {row["curve_id"] for row in report.rows} == {"lambda_0,1", "mu_-1,1", "mu_0,1", "mu_1,1", "mu_2,1"}

    def test_invariants_on_square(self):
        config = default_config("invariants").with_overrides(b_values=[1.0], k_max=2, refine_levels=[2, 3])
        report = InvariantsExperiment(config).run()
        names = {record.name for record in report.records}
        assert {
            "second_derivative_identity",
            "derivative_quotient",
            "pencil_properties",
            "conjugation",
            "gauge_discrepancy",
            "non_magnetic_rectangle",
        } <= names
        quotient = [record for record in report.records if record.name == "derivative_quotient"]
        assert all(record.passed for record in quotient)
        assert not report.failures

    def test_semicontinuity_records(self):
        config = default_config("semicontinuity").with_overrides(
            b_values=[1.0], k_max=1, n_values=[8, 16], refine_levels=[1, 2],
        )
        report = SemicontinuityExperiment(config).run()
        names = {record.name for record in report.records}
        assert {"dirichlet_inclusion", "deficit_nonincreasing", "deficit_small", "dirichlet_nesting"} <= names
        assert {row["domain"] for row in report.rows} == {"disk", "P8", "P16"}

    def test_semicontinuity_needs_increasing_edge_counts(self):
        config = default_config("semicontinuity").with_overrides(n_values=[16, 8])
        with pytest.raises(ConfigurationError):
            SemicontinuityExperiment(config).run()

    def test_cylinder_rejects_asymmetric_cross_section(self):
        config = default_config("cylinder").with_overrides(
            domains=[DomainSpec("regular", {"n": 5})], lengths=[1.0],
        )
        with pytest.raises(GeometryError):
            CylinderExperiment(config).run()

    def test_cylinder_length_count_must_match(self):
        config = default_config("cylinder").with_overrides(lengths=[1.0, 2.0, 3.0])
        with pytest.raises(ConfigurationError):
            CylinderExperiment(config).run()

    @pytest.mark.slow
    def test_cylinder_over_hexagon(self):
        config = default_config("cylinder").with_overrides(
            domains=[DomainSpec("regular", {"n": 6})], lengths=[2.0], b_values=[1.0], k_max=4, refine_levels=[2, 3],
        )
        report = CylinderExperiment(config).run()
        baseline = [record for record in report.records if record.name == "cylinder_shift_one"]
        assert len(baseline) == 4
        assert all(record.passed for record in baseline)

    def test_default_disk_curves(self):
        config = default_config("disk-curves")
        report = DiskCurvesExperiment(config).run()
        assert not report.failures
        assert report.passed
        curve_ids = {row["curve_id"] for row in report.rows}
        assert curve_ids == {"lambda_0,1"} | {f"mu_{n},1" for n in config.n_values}
        assert len(report.rows) == len(config.b_values) * (len(config.n_values) + 1)
        assert any(record.name == "flux_count" for record in report.records)

    def test_default_cylinder(self):
        report = CylinderExperiment(default_config("cylinder")).run()
        assert not report.failures
        names = {record.name for record in report.records}
        assert {"cylinder_shift_one", "cylinder_shift_two"} <= names
        assert {"disk", "regular6"} <= {row["domain"] for row in report.rows}
        assert report.passed

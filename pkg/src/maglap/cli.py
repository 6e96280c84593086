"""
Command Line Interface for maglap.
"""

import sys
from typing import Optional, Tuple

import click
from rich.console import Console

from . import __version__
from .core import (
    EXIT_INTERRUPTED,
    EXIT_INVALID_INPUT,
    EXIT_OK,
    EXIT_SOLVER_FAILURE,
    EXIT_VIOLATION,
    AssemblyError,
    ConfigurationError,
    FactorizationError,
    GeometryError,
    InvalidInputError,
    MaglapError,
    NoRootError,
    QuadratureError,
    SolverConvergenceError,
    TruncationError,
    get_logger,
    load_config_file,
    setup_logging,
    write_resolved_config,
)
from .harness import ExperimentConfig, ExperimentFactory, ExperimentReport, parse_tolerance_overrides
from .harness.output import write_csv
from .harness.report import print_report, write_report

INPUT_ERRORS = (InvalidInputError, GeometryError, ConfigurationError, TruncationError, AssemblyError)
SOLVER_ERRORS = (SolverConvergenceError, FactorizationError, NoRootError, QuadratureError)


def _print_user_message(message: str, log_level: str = "info") -> None:
    """
    Show a message to the user on stderr and log it.

    Args:
        message: message to display and log
        log_level: log level ('info', 'error', 'warning')
    """
    log = get_logger(__name__)

    click.echo(message, err=True)

    if log_level == "error":
        log.error(message)
    elif log_level == "warning":
        log.warning(message)
    else:
        log.info(message)


def resolve_config(
        command: str,
        config_path: Optional[str],
        out: Optional[str],
        seed: Optional[int],
        refine: Optional[int],
        tol: Tuple[str, ...],
) -> ExperimentConfig:
    """
    Builds the run configuration: command defaults, then the config file, then flags.

    Raises:
        ConfigurationError: Invalid file contents or flag values.
    """
    data = load_config_file(config_path) if config_path else None
    config = ExperimentConfig.from_mapping(command, data)

    tolerances = None
    if tol:
        tolerances = dict(config.tolerances)
        tolerances.update(parse_tolerance_overrides(list(tol)))
    refine_levels = [max(refine - 1, 0), refine] if refine is not None else None

    return config.with_overrides(out_dir=out, seed=seed, refine_levels=refine_levels, tolerances=tolerances)


def exit_code_for(report: ExperimentReport) -> int:
    """Exit code of a finished run: failed solver cells first, then violations."""
    if report.failures:
        return EXIT_SOLVER_FAILURE
    if report.violations:
        return EXIT_VIOLATION
    return EXIT_OK


def run_command(
        command: str,
        config_path: Optional[str],
        out: Optional[str],
        seed: Optional[int],
        refine: Optional[int],
        tol: Tuple[str, ...],
        verbose: bool,
) -> int:
    """
    Runs one subcommand end to end and returns its exit code.

    This function:
    1. Sets up logging
    2. Resolves the configuration
    3. Runs the experiment
    4. Writes the CSV, the text report and the resolved config
    """
    log = setup_logging(log_dir=out, level="DEBUG" if verbose else "INFO", quiet=not verbose)
    log.info(f"--- maglap {command} started ---")

    try:
        config = resolve_config(command, config_path, out, seed, refine, tol)
        experiment = ExperimentFactory.create_experiment(config)
        report = experiment.run()

        csv_path = write_csv(report, config.out_dir)
        report_path = write_report(report, config.out_dir)
        write_resolved_config(config.out_dir, command, config.to_mapping())

        print_report(report, Console())
        code = exit_code_for(report)
        log.info(f"maglap {command} finished with exit code {code} ({csv_path}, {report_path})")
        return code

    except INPUT_ERRORS as e:
        log.error(f"Invalid input for {command}: {e}")
        _print_user_message(f"Error: {e}", "error")
        return EXIT_INVALID_INPUT

    except SOLVER_ERRORS as e:
        diagnostics = getattr(e, "diagnostics", None)
        log.error(f"Solver failure in {command}: {e} {diagnostics or ''}")
        _print_user_message(f"Solver failure: {e}", "error")
        return EXIT_SOLVER_FAILURE

    except MaglapError as e:
        log.exception(f"Unclassified maglap error in {command}")
        _print_user_message(f"Error: {e}", "error")
        return EXIT_SOLVER_FAILURE

    except KeyboardInterrupt:
        log.info("Run interrupted by user (Ctrl+C)")
        _print_user_message("\nRun interrupted by user.", "info")
        return EXIT_INTERRUPTED


def common_options(func):
    """Flags shared by every subcommand."""
    options = [
        click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
                     help="JSON experiment config."),
        click.option("--out", type=click.Path(file_okay=False), default=None,
                     help="Output directory for CSV, report and resolved config."),
        click.option("--seed", type=click.IntRange(min=0), default=None, help="Base seed for random domains."),
        click.option("--refine", type=click.IntRange(min=0), default=None,
                     help="Tested mesh level; the level below it gives the tolerance."),
        click.option("--tol", multiple=True, metavar="NAME=VALUE", help="Override a named tolerance (repeatable)."),
        click.option("--verbose", is_flag=True, default=False, help="Echo debug logging to stderr."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _subcommand(name: str, help_text: str):
    @main.command(name=name, help=help_text)
    @common_options
    def command(config_path, out, seed, refine, tol, verbose):
        sys.exit(run_command(name, config_path, out, seed, refine, tol, verbose))

    return command


@click.group()
@click.version_option(__version__, prog_name="maglap")
def main():
    """Magnetic Laplacian eigenvalue experiments."""


disk_curves = _subcommand(
    "disk-curves", "Lowest fiber eigenvalues of the unit disk on a field grid (CSV: b,curve_id,value)."
)
polygon_sweep = _subcommand(
    "polygon-sweep", "mu_{k+1} <= lambda_k and same-mesh domination over a polygon corpus."
)
cylinder = _subcommand(
    "cylinder", "mu_{k+2} <= lambda_k on right cylinders over pi-symmetric cross-sections."
)
counting = _subcommand(
    "counting", "Eigenvalue counts at the Landau levels b(2q+1)."
)
invariants = _subcommand(
    "invariants", "Scaling, gauge, conjugation and integration identity checks."
)
semicontinuity = _subcommand(
    "semicontinuity", "Neumann and Dirichlet eigenvalues of circumscribed polygons against the disk."
)


if __name__ == "__main__":
    main()

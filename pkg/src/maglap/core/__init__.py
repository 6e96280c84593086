"""
Core modules for maglap.

This package contains configuration constants, logging, the exception
hierarchy and config-file utilities shared by every other package.
"""

from .config import (
    DEFAULT_TOLERANCES,
    SUPPORTED_COMMANDS,
    EXIT_OK,
    EXIT_VIOLATION,
    EXIT_INVALID_INPUT,
    EXIT_SOLVER_FAILURE,
    EXIT_INTERRUPTED,
)
from .logging import setup_logging, get_logger
from .exceptions import (
    MaglapError,
    InvalidInputError,
    DegenerateInputError,
    GeometryError,
    AssemblyError,
    EmptySystemError,
    FactorizationError,
    SolverConvergenceError,
    LaguerreDomainError,
    NoRootError,
    QuadratureError,
    TruncationError,
    ConfigurationError,
)
from .file_utils import validate_config_path, load_config_file, ensure_output_dir, write_resolved_config

__all__ = [
    # Configuration
    "DEFAULT_TOLERANCES",
    "SUPPORTED_COMMANDS",
    "EXIT_OK",
    "EXIT_VIOLATION",
    "EXIT_INVALID_INPUT",
    "EXIT_SOLVER_FAILURE",
    "EXIT_INTERRUPTED",

    # Logging
    "setup_logging",
    "get_logger",

    # Exceptions
    "MaglapError",
    "InvalidInputError",
    "DegenerateInputError",
    "GeometryError",
    "AssemblyError",
    "EmptySystemError",
    "FactorizationError",
    "SolverConvergenceError",
    "LaguerreDomainError",
    "NoRootError",
    "QuadratureError",
    "TruncationError",
    "ConfigurationError",

    # File utilities
    "validate_config_path",
    "load_config_file",
    "ensure_output_dir",
    "write_resolved_config",
]

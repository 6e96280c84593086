"""
Configuration constants and settings for maglap.
"""

from typing import Dict, List

# Logging
LOG_FILENAME = "maglap.log"
LOG_MAX_BYTES = 1024 * 1024 * 5  # 5MB
LOG_BACKUP_COUNT = 3
LOG_ENCODING = "utf-8"

# Geometry tolerances (relative to the polygon diameter)
VERTEX_DEDUP_RTOL = 1e-12
SYMMETRY_RTOL = 1e-10
AREA_RTOL = 1e-12
DEGENERATE_TRIANGLE_RTOL = 1e-14

# Eigen solver
DEFAULT_EIGEN_TOL = 1e-10
ORTHONORMALITY_TOL = 1e-8

# Root scanning for the disk fiber equations
ROOT_STEP_DIVISOR = 50
ROOT_BISECTION_RTOL = 1e-12
ROOT_SCAN_CHUNK = 4096

# Special functions
LAGUERRE_SERIES_RTOL = 1e-18
LAGUERRE_SERIES_MAX_TERMS = 500

# Quadrature for the disk identity check
QUAD_START_ORDER = 16
QUAD_MAX_ORDER = 1024
QUAD_STABILITY_TOL = 1e-6

# Fiber oracle
FIBER_MIN_GRID = 100
FIBER_DEFAULT_GRID = 2000
FIBER_DEFAULT_MODES = 4

# Tolerances addressable through `--tol name=value`
DEFAULT_TOLERANCES: Dict[str, float] = {
    "eigen_residual": 1e-10,
    "orthonormality": 1e-8,
    "conjugation": 1e-12,
    "scaling": 1e-8,
    "gauge": 0.05,
    "identity": 1e-6,
    "identity_314": 1e-4,
    "crossing": 1e-8,
    "simplicity_gap": 1e-6,
    "counting_tie": 1e-12,
    "semicontinuity": 0.05,
    "bessel_limit": 1e-2,
    "oracle_agreement": 0.01,
}

# CSV schemas
SPECTRUM_CSV_COLUMNS: List[str] = ["b", "domain", "bc", "k", "value", "refine"]
CURVE_CSV_COLUMNS: List[str] = ["b", "curve_id", "value"]
CSV_FLOAT_FORMAT = "%.17g"

# Exit codes
EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INVALID_INPUT = 2
EXIT_SOLVER_FAILURE = 3
EXIT_INTERRUPTED = 130

# Subcommands
SUPPORTED_COMMANDS: List[str] = [
    "disk-curves",
    "polygon-sweep",
    "cylinder",
    "counting",
    "invariants",
    "semicontinuity",
]

"""
maglap: Dirichlet and Neumann eigenvalues of the magnetic Laplacian on convex
domains, the unit disk and right cylinders.
"""

__version__ = "0.1.0"

from .core import MaglapError, setup_logging, get_logger

__all__ = [
    "__version__",
    "MaglapError",
    "setup_logging",
    "get_logger",
]

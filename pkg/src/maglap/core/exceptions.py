"""
Exception classes for maglap.
"""

from typing import Any, Dict, List, Optional


class MaglapError(Exception):
    """Base exception for all maglap errors."""
    pass


class InvalidInputError(MaglapError):
    """Exception raised when an argument value is outside its documented range."""
    pass


class DegenerateInputError(InvalidInputError):
    """Exception raised for collinear point sets, repeated vertices or zero-area elements."""
    pass


class GeometryError(MaglapError):
    """Exception raised when a domain violates its geometric invariants."""
    pass


class AssemblyError(MaglapError):
    """Exception raised when finite element assembly fails."""
    pass


class EmptySystemError(AssemblyError):
    """Exception raised when boundary restriction leaves no degrees of freedom."""
    pass


class FactorizationError(MaglapError):
    """Exception raised when the mass matrix is not positive definite."""
    pass


class SolverConvergenceError(MaglapError):
    """Exception raised when the eigen solver does not converge or misses its residual target."""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class LaguerreDomainError(InvalidInputError):
    """Exception raised when a Laguerre function is requested at a pole configuration."""
    pass


class NoRootError(MaglapError):
    """Exception raised when a root scan finds no sign change below its ceiling."""

    def __init__(self, message: str, upper: float):
        super().__init__(message)
        self.upper = upper


class QuadratureError(MaglapError):
    """Exception raised when a quadrature value does not stabilise under refinement."""

    def __init__(self, message: str, history: Optional[List[float]] = None):
        super().__init__(message)
        self.history = history or []


class TruncationError(MaglapError):
    """Exception raised when a request reaches beyond the resolved part of a spectrum."""
    pass


class ConfigurationError(MaglapError):
    """Exception raised for invalid experiment configuration or flags."""
    pass

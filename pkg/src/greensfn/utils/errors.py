from typing import Any, Optional


class GreensFnError(Exception):
    """Base class for all greensfn exceptions."""
    pass


class ConfigurationError(GreensFnError):
    """Exception raised for invalid settings or unparsable problem specs."""
    pass


class GridError(GreensFnError):
    """Exception raised for odd, too small or mismatched grids."""
    pass


class CoefficientSingularityError(GreensFnError):
    """Exception raised when the leading coefficient a2 vanishes on a node."""

    def __init__(self, message: str, t: Optional[float] = None):
        super().__init__(message)
        self.t = t


class DegenerateWronskianError(GreensFnError):
    """Exception raised when the fundamental system loses independence."""
    pass


class IncompatibleProblemError(GreensFnError):
    """Exception raised when the reduced system has a nontrivial solution."""

    def __init__(self, message: str, determinant: float = 0.0):
        super().__init__(message)
        self.determinant = determinant


class ConditionError(GreensFnError):
    """Exception raised when an existence condition required by an operation fails."""

    def __init__(self, message: str, condition_id: Optional[str] = None):
        super().__init__(message)
        self.condition_id = condition_id


class DivergenceError(GreensFnError):
    """Exception raised when a fixed-point iteration exceeds its iteration budget."""

    def __init__(self, message: str, solution: Any = None):
        super().__init__(message)
        self.solution = solution


class SpectralError(GreensFnError):
    """Exception raised for invalid spectral inputs (negative weights, bad lambda, unsupported kernel)."""
    pass

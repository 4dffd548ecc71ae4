class StripSolverException(Exception):
    """Base exception for strip integral equation computations"""
    pass

class DomainError(StripSolverException):
    """Exception raised when an argument lies outside the supported domain"""
    pass

class PoleError(StripSolverException):
    """Exception raised when a formula is evaluated at one of its poles"""
    pass

class SingularityError(StripSolverException):
    """Exception raised when an integrated solution reaches a zero or a pole"""
    pass

class IllConditionedError(StripSolverException):
    """Exception raised when a discretized system is numerically singular"""
    pass

class TruncationError(StripSolverException):
    """Exception raised when a truncated series has not converged"""

    def __init__(self, message: str, tail_estimate: float = float("nan")):
        super().__init__(message)
        self.tail_estimate = tail_estimate

class DegenerateModeError(StripSolverException):
    """Exception raised when a mode or series sum degenerates"""
    pass

class EigenSolveError(StripSolverException):
    """Exception raised when the tridiagonal eigen-solve fails"""
    pass

class EdgeFitError(StripSolverException):
    """Exception raised when edge extrapolation diverges"""
    pass

class CompatibilityError(StripSolverException):
    """Exception raised when reconstructed solutions miss the edge ratio"""
    pass

class PositivityViolationError(StripSolverException):
    """Exception raised when G(1) is not positive"""
    pass

class EmbeddingConsistencyError(StripSolverException):
    """Exception raised when the embedding function does not vanish at the edges"""
    pass

class UnsupportedAnchorError(StripSolverException):
    """Exception raised for orders the series and anchor machinery exclude"""
    pass

class ConvergenceError(StripSolverException):
    """Exception raised when an iterative solver fails to converge"""
    pass

class ConfigurationError(StripSolverException):
    """Exception raised for configuration errors"""
    pass

__all__ = [
    "FloquetError", "InvalidTolerance", "StepSizeUnderflow", "IntegrationError",
    "InconsistentDerivative",
]


class FloquetError(Exception):
    """Base exception for errors while computing monodromy data."""

    def __init__(self, message: str, error_type: str = None, original_error: Exception = None):
        self.message = message
        self.error_type = error_type
        self.original_error = original_error
        super().__init__(self.message)


class InvalidTolerance(FloquetError):
    """Raised when an integrator tolerance is outside [1e-13, 1e-3]"""

    def __init__(self, tol: float):
        super().__init__(f"Tolerance {tol} outside [1e-13, 1e-3]", error_type="validation")


class StepSizeUnderflow(FloquetError):
    """Raised when the step controller drives the step below 1e-14 * period"""
    pass


class IntegrationError(FloquetError):
    """Raised when the integrator fails for any other reason"""
    pass


class InconsistentDerivative(FloquetError):
    """Raised when the Cauchy-integral and variational Delta' disagree"""
    pass

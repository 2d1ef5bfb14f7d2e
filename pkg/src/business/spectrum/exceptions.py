__all__ = [
    "SpectrumError", "CriteriaMismatch", "SeedNotOnSpectrum", "CorrectorDiverged",
    "OrderUndetermined", "ArcCountMismatch", "NotPTSymmetric",
]


class SpectrumError(Exception):
    """Base exception for spectral computations"""

    def __init__(self, message: str, error_type: str = None, original_error: Exception = None):
        self.message = message
        self.error_type = error_type
        self.original_error = original_error
        super().__init__(self.message)


class CriteriaMismatch(SpectrumError):
    """Raised when the multiplier and discriminant membership criteria disagree"""
    pass


class SeedNotOnSpectrum(SpectrumError):
    """Raised when an arc trace is seeded off the spectrum"""
    pass


class CorrectorDiverged(SpectrumError):
    """Raised when the tracer's Newton corrector fails after all step halvings"""
    pass


class OrderUndetermined(SpectrumError):
    """Raised when every derivative through the maximum order is below the noise floor"""
    pass


class ArcCountMismatch(SpectrumError):
    """Raised when the arcs found on a probe circle differ in number from the prediction"""

    def __init__(self, predicted: int, measured: int, energy: complex):
        self.predicted = predicted
        self.measured = measured
        super().__init__(
            f"Predicted {predicted} arcs at E0={energy}, measured {measured}",
            error_type="verification",
        )


class NotPTSymmetric(SpectrumError):
    """Raised when a PT-only operation receives a potential that is not PT-symmetric"""
    pass

__all__ = ["PotentialError", "PotentialValidationError", "DomainError"]


class PotentialError(Exception):
    """Base exception for potential construction and evaluation errors"""
    pass


class PotentialValidationError(PotentialError):
    """Raised when a potential violates its representation invariants"""
    pass


class DomainError(PotentialError):
    """Raised when a delta comb is evaluated pointwise at an impulse position"""
    pass

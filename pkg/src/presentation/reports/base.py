from abc import ABC, abstractmethod
from typing import Sequence

from src.business.pipeline import (
    DiscriminantSample, FamilyResult, SpectrumResult, VerificationResult,
)


class ReportGeneratorInterface(ABC):
    """Interface for result rendering"""

    @abstractmethod
    def discriminant(self, samples: Sequence[DiscriminantSample], description: str) -> bytes:
        """
        Render a table of Delta and Delta' values.

        Raises:
            ReportGenerationError: If rendering fails
        """
        pass

    @abstractmethod
    def spectrum(self, result: SpectrumResult) -> bytes:
        """
        Render arcs, band edges, critical points and certificates.

        Raises:
            ReportGenerationError: If rendering fails
        """
        pass

    def verification(self, result: VerificationResult) -> bytes:
        raise NotImplementedError(f"{type(self).__name__} does not render verification reports")

    def family(self, result: FamilyResult) -> bytes:
        raise NotImplementedError(f"{type(self).__name__} does not render family sweeps")

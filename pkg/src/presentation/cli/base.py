from abc import ABC, abstractmethod
from pathlib import Path
from typing import Tuple

from src.presentation.cli.run_config import RunConfig


class UserInterface(ABC):
    @abstractmethod
    def discriminant(self, cfg: RunConfig) -> Path:
        """
        Tabulate Delta and Delta' over the configured window or box.

        Returns:
            Path: Path to the written result
        """

    @abstractmethod
    def spectrum(self, cfg: RunConfig) -> Path:
        """
        Trace the spectrum inside the configured box.

        Returns:
            Path: Path to the written result
        """

    @abstractmethod
    def verify(self, cfg: RunConfig) -> Tuple[Path, bool]:
        """
        Check the predicted arc directions at every critical point in the box.

        Returns:
            Tuple[Path, bool]: Path to the written report and whether every point passed
        """

    @abstractmethod
    def scan_family(self, cfg: RunConfig) -> Path:
        """
        Sweep an amplitude parameter of an expression spec for non-real spectrum.

        Returns:
            Path: Path to the written summary
        """

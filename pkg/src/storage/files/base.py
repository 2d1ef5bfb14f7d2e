from abc import ABC, abstractmethod
from pathlib import Path
from typing import Optional


class FileStorageInterface(ABC):
    """Interface for file storage operations"""

    @abstractmethod
    def read_spec(self, path: Path) -> str:
        """
        Read a potential spec file.

        Args:
            path: Path to the JSON spec file

        Returns:
            str: File contents decoded as UTF-8

        Raises:
            StorageOperationError: If the file cannot be read
        """
        pass

    @abstractmethod
    def store_result(self, result_id: str, data: bytes, format: str,
                     destination: Optional[Path] = None) -> Path:
        """
        Store a rendered result.

        Args:
            result_id: Name of the result, used for the file name when no destination is given
            data: Rendered content as bytes
            format: Result format ('csv', 'json' or 'svg')
            destination: Explicit output path

        Returns:
            Path: Path to the stored result

        Raises:
            InvalidFormatError: If the format is not supported
            StorageOperationError: If writing fails
        """
        pass

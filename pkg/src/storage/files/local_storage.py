import logging
from pathlib import Path
from typing import Optional

from .base import FileStorageInterface
from .exceptions import InvalidFormatError, StorageOperationError


class LocalFileStorage(FileStorageInterface):
    """Implementation of file storage using local filesystem"""

    ALLOWED_RESULT_FORMATS = {'csv', 'json', 'svg'}

    def __init__(self, base_path: Path):
        """
        Initialize local file storage.

        Args:
            base_path: Directory for results written without an explicit destination
        """
        self.base_path = Path(base_path)
        self.logger = logging.getLogger(__name__)

    def _initialize_storage(self, directory: Path) -> None:
        try:
            directory.mkdir(parents=True, exist_ok=True)
        except Exception as e:
            self.logger.error(f"Failed to create output directory {directory}: {e}")
            raise StorageOperationError(f"Storage initialization failed: {str(e)}")

    def _validate_result_format(self, format: str) -> None:
        """
        Validate result format.

        Raises:
            InvalidFormatError: If format is not supported
        """
        if format.lower() not in self.ALLOWED_RESULT_FORMATS:
            raise InvalidFormatError(
                f"Unsupported result format: {format}. "
                f"Allowed formats: {', '.join(sorted(self.ALLOWED_RESULT_FORMATS))}"
            )

    def read_spec(self, path: Path) -> str:
        """Read a potential spec file as UTF-8 text"""
        try:
            return Path(path).read_text(encoding="utf-8")
        except Exception as e:
            self.logger.error(f"Failed to read spec file {path}: {e}")
            raise StorageOperationError(f"Failed to read spec file {path}: {str(e)}")

    def store_result(self, result_id: str, data: bytes, format: str,
                     destination: Optional[Path] = None) -> Path:
        """Store a rendered result, by default as <base_path>/<result_id>.<format>"""
        self._validate_result_format(format)
        path = Path(destination) if destination is not None \
            else self.base_path / f"{result_id}.{format.lower()}"
        self._initialize_storage(path.parent)
        try:
            path.write_bytes(data)
        except Exception as e:
            self.logger.error(f"Failed to store result: {e}")
            raise StorageOperationError(f"Failed to store result {path}: {str(e)}")
        self.logger.info(f"Stored result: {path}")
        return path

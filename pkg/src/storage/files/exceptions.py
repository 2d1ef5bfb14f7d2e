from typing import Optional


class FileStorageError(Exception):
    """Base exception for file storage errors"""
    pass


class SpecError(FileStorageError):
    """Raised when a potential spec file is malformed.

    Attributes:
        line: 1-based line of the problem in the spec file, when known
        offset: Column (JSON syntax errors) or byte offset into the expression source
    """

    def __init__(self, message: str, line: Optional[int] = None, offset: Optional[int] = None):
        self.line = line
        self.offset = offset
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"offset {offset}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class InvalidFormatError(FileStorageError):
    """Raised when file format is not supported"""
    pass


class StorageOperationError(FileStorageError):
    """Raised when a storage operation fails"""
    pass

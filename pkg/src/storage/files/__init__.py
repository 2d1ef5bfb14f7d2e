from .exceptions import FileStorageError, InvalidFormatError, SpecError, StorageOperationError
from .local_storage import LocalFileStorage
from .spec_loader import PotentialSpec, load_potential, parse_spec

from enum import Enum


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    SVG = "svg"


class Command(str, Enum):
    DISCRIMINANT = "discriminant"
    SPECTRUM = "spectrum"
    VERIFY = "verify"
    SCAN_FAMILY = "scan-family"


class ExitCode(int, Enum):
    OK = 0
    SPEC_ERROR = 2
    NUMERIC_FAILURE = 3
    VERIFICATION_FAILURE = 4
    IO_ERROR = 5

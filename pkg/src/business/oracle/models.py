"""
Exactly solvable potential classes.
"""
from dataclasses import dataclass
from typing import Tuple, Union


@dataclass(frozen=True)
class Free:
    pass


@dataclass(frozen=True)
class Constant:
    c: complex


@dataclass(frozen=True)
class Segments:
    segments: Tuple[Tuple[float, complex], ...]


@dataclass(frozen=True)
class Impulses:
    background: complex
    impulses: Tuple[Tuple[float, complex], ...]


OracleKind = Union[Free, Constant, Segments, Impulses]

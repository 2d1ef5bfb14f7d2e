from typing import FrozenSet, Optional

__all__ = ["ExprError", "ParseError", "UnknownIdentifier", "EvalError"]


class ExprError(Exception):
    """Base exception for expression parsing and evaluation errors"""
    pass


class ParseError(ExprError):
    """Raised when the source text does not match the grammar.

    Attributes:
        offset: Byte offset of the offending token in the source
        expected: Set of token descriptions that would have been accepted
    """

    def __init__(self, message: str, offset: int, expected: Optional[FrozenSet[str]] = None):
        self.offset = offset
        self.expected = frozenset(expected or ())
        detail = f" (expected {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


class UnknownIdentifier(ParseError):
    """Raised for any name other than x, i, pi, e and the supported functions"""

    def __init__(self, name: str, offset: int):
        self.name = name
        super().__init__(f"unknown identifier '{name}'", offset)


class EvalError(ExprError):
    """Raised when evaluation hits a zero divisor or a non-representable value"""
    pass

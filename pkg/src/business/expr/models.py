"""
Expression tree nodes.
Trees are immutable; evaluation lives in evaluator.py, printing in to_source.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Union


class BinaryOp(str, Enum):
    ADD = "+"
    SUB = "-"
    MUL = "*"
    DIV = "/"
    POW = "^"


class Function(str, Enum):
    SIN = "sin"
    COS = "cos"
    TAN = "tan"
    EXP = "exp"
    SINH = "sinh"
    COSH = "cosh"
    ABS = "abs"
    RE = "re"
    IM = "im"


@dataclass(frozen=True)
class Number:
    value: complex


@dataclass(frozen=True)
class VariableX:
    pass


@dataclass(frozen=True)
class Unary:
    """Unary negation"""
    operand: 'ExprAst'


@dataclass(frozen=True)
class Binary:
    op: BinaryOp
    left: 'ExprAst'
    right: 'ExprAst'


@dataclass(frozen=True)
class Call:
    function: Function
    argument: 'ExprAst'


ExprAst = Union[Number, VariableX, Unary, Binary, Call]


def _number_source(value: complex) -> str:
    if value == 1j:
        return "i"
    if value.imag == 0.0:
        text = repr(value.real)
        return text if value.real >= 0 else f"({text})"
    return f"({value.real!r}+{value.imag!r}*i)"


def to_source(ast: ExprAst) -> str:
    """Print a tree as canonical text; parse(to_source(t)) rebuilds t for parsed trees."""
    if isinstance(ast, Number):
        return _number_source(ast.value)
    if isinstance(ast, VariableX):
        return "x"
    if isinstance(ast, Unary):
        return f"(-{to_source(ast.operand)})"
    if isinstance(ast, Binary):
        return f"({to_source(ast.left)}{ast.op.value}{to_source(ast.right)})"
    if isinstance(ast, Call):
        return f"{ast.function.value}({to_source(ast.argument)})"
    raise TypeError(f"Not an expression node: {ast!r}")


def depth(ast: ExprAst) -> int:
    if isinstance(ast, (Number, VariableX)):
        return 1
    if isinstance(ast, Unary):
        return 1 + depth(ast.operand)
    if isinstance(ast, Call):
        return 1 + depth(ast.argument)
    return 1 + max(depth(ast.left), depth(ast.right))

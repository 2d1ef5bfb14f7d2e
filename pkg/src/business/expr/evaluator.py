"""
Expression evaluator module.
Evaluates parsed trees with standard complex arithmetic (principal branches).
"""
import cmath
from typing import Callable, Dict

from .exceptions import EvalError
from .models import Binary, BinaryOp, Call, ExprAst, Function, Number, Unary, VariableX

MIN_DIVISOR = 1e-300
MAX_EXACT_POWER = 16

_FUNCTIONS: Dict[Function, Callable[[complex], complex]] = {
    Function.SIN: cmath.sin,
    Function.COS: cmath.cos,
    Function.TAN: cmath.tan,
    Function.EXP: cmath.exp,
    Function.SINH: cmath.sinh,
    Function.COSH: cmath.cosh,
    Function.ABS: lambda z: complex(abs(z)),
    Function.RE: lambda z: complex(z.real),
    Function.IM: lambda z: complex(z.imag),
}


def _divide(numerator: complex, divisor: complex) -> complex:
    if abs(divisor) < MIN_DIVISOR:
        raise EvalError(f"division by {divisor} (|divisor| < {MIN_DIVISOR})")
    return numerator / divisor


def _power(base: complex, exponent: complex) -> complex:
    if exponent.imag == 0.0 and exponent.real.is_integer() and abs(exponent.real) <= MAX_EXACT_POWER:
        n = int(exponent.real)
        result = complex(1.0)
        for _ in range(abs(n)):
            result *= base
        return _divide(complex(1.0), result) if n < 0 else result
    if base == 0:
        if exponent.real > 0:
            return complex(0.0)
        raise EvalError(f"0 raised to {exponent}")
    # signed zeros select the lower branch cut side
    base = complex(base.real + 0.0, base.imag + 0.0)
    return base ** exponent


def eval_expr(ast: ExprAst, x: float) -> complex:
    """Evaluate a tree at the real point x.

    Raises:
        EvalError: On a divisor with |d| < 1e-300, overflow or a domain error
    """
    try:
        value = _evaluate(ast, complex(x))
    except (OverflowError, ValueError, ZeroDivisionError) as e:
        raise EvalError(f"evaluation failed at x={x}: {e}") from e
    if not cmath.isfinite(value):
        raise EvalError(f"non-finite value {value} at x={x}")
    return value


def _evaluate(ast: ExprAst, x: complex) -> complex:
    if isinstance(ast, Number):
        return ast.value
    if isinstance(ast, VariableX):
        return x
    if isinstance(ast, Unary):
        return -_evaluate(ast.operand, x)
    if isinstance(ast, Call):
        return _FUNCTIONS[ast.function](_evaluate(ast.argument, x))
    if isinstance(ast, Binary):
        left = _evaluate(ast.left, x)
        right = _evaluate(ast.right, x)
        if ast.op == BinaryOp.ADD:
            return left + right
        if ast.op == BinaryOp.SUB:
            return left - right
        if ast.op == BinaryOp.MUL:
            return left * right
        if ast.op == BinaryOp.DIV:
            return _divide(left, right)
        return _power(left, right)
    raise EvalError(f"Not an expression node: {ast!r}")

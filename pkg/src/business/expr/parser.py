"""
Expression parser module.
Recursive-descent parser for the small complex expression language used to
write potentials such as "i*sin(x)^3".

Grammar (lowest to highest precedence):
    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := primary ('^' unary)?          right-associative
    primary := NUMBER | 'x' | 'i' | 'pi' | 'e' | FUNC '(' expr ')' | '(' expr ')'
"""
import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, List

from .exceptions import ParseError, UnknownIdentifier
from .models import Binary, BinaryOp, Call, ExprAst, Function, Number, Unary, VariableX, depth

MAX_SOURCE_LENGTH = 4096
MAX_DEPTH = 64

CONSTANTS = {
    "i": 1j,
    "pi": complex(math.pi),
    "e": complex(math.e),
}
FUNCTIONS = {f.value: f for f in Function}

_NUMBER = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_OPERATORS = {op.value: op for op in BinaryOp}


class TokenType(Enum):
    NUMBER = 1
    IDENTIFIER = 2
    OPERATOR = 3
    LPAREN = 4
    RPAREN = 5
    END = 6


@dataclass(frozen=True)
class Token:
    type: TokenType
    text: str
    offset: int


def tokenize(source: str) -> List[Token]:
    """Split source into tokens; whitespace is dropped, offsets are byte offsets."""
    tokens = []
    index = 0
    while index < len(source):
        char = source[index]
        if char.isspace():
            index += 1
            continue
        offset = len(source[:index].encode("utf-8"))
        number = _NUMBER.match(source, index)
        if number and (char.isdigit() or char == "."):
            tokens.append(Token(TokenType.NUMBER, number.group(0), offset))
            index = number.end()
            continue
        identifier = _IDENTIFIER.match(source, index)
        if identifier:
            tokens.append(Token(TokenType.IDENTIFIER, identifier.group(0), offset))
            index = identifier.end()
            continue
        if char in _OPERATORS:
            tokens.append(Token(TokenType.OPERATOR, char, offset))
        elif char == "(":
            tokens.append(Token(TokenType.LPAREN, char, offset))
        elif char == ")":
            tokens.append(Token(TokenType.RPAREN, char, offset))
        else:
            raise ParseError(f"unexpected character {char!r}", offset,
                             frozenset({"number", "identifier", "operator", "'('", "')'"}))
        index += 1
    tokens.append(Token(TokenType.END, "", len(source.encode("utf-8"))))
    return tokens


class Parser:
    """Recursive-descent parser over a token list"""

    _PRIMARY_START: FrozenSet[str] = frozenset({"number", "identifier", "'('", "'-'"})

    def __init__(self, source: str):
        if not source or not source.strip():
            raise ParseError("empty expression", 0, frozenset({"expression"}))
        if len(source) > MAX_SOURCE_LENGTH:
            raise ParseError(f"expression longer than {MAX_SOURCE_LENGTH} characters",
                             MAX_SOURCE_LENGTH)
        self.tokens = tokenize(source)
        self.position = 0
        self.level = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.position]

    def _advance(self) -> Token:
        token = self.current
        self.position += 1
        return token

    def _enter(self) -> None:
        self.level += 1
        if self.level > MAX_DEPTH:
            raise ParseError(f"expression nested deeper than {MAX_DEPTH}", self.current.offset)

    def _leave(self) -> None:
        self.level -= 1

    def _is_operator(self, *ops: BinaryOp) -> bool:
        return self.current.type == TokenType.OPERATOR and _OPERATORS[self.current.text] in ops

    def parse(self) -> ExprAst:
        ast = self._expr()
        if self.current.type != TokenType.END:
            raise ParseError(f"unexpected token {self.current.text!r}", self.current.offset,
                             frozenset({"operator", "end of input"}))
        if depth(ast) > MAX_DEPTH:
            raise ParseError(f"expression nested deeper than {MAX_DEPTH}", 0)
        return ast

    def _expr(self) -> ExprAst:
        left = self._term()
        while self._is_operator(BinaryOp.ADD, BinaryOp.SUB):
            op = _OPERATORS[self._advance().text]
            left = Binary(op, left, self._term())
        return left

    def _term(self) -> ExprAst:
        left = self._unary()
        while self._is_operator(BinaryOp.MUL, BinaryOp.DIV):
            op = _OPERATORS[self._advance().text]
            left = Binary(op, left, self._unary())
        return left

    def _unary(self) -> ExprAst:
        self._enter()
        try:
            if self._is_operator(BinaryOp.SUB):
                self._advance()
                return Unary(self._unary())
            return self._power()
        finally:
            self._leave()

    def _power(self) -> ExprAst:
        base = self._primary()
        if self._is_operator(BinaryOp.POW):
            self._advance()
            return Binary(BinaryOp.POW, base, self._unary())
        return base

    def _primary(self) -> ExprAst:
        token = self.current
        if token.type == TokenType.NUMBER:
            self._advance()
            value = float(token.text)
            if not math.isfinite(value):
                raise ParseError(f"numeric literal {token.text!r} is not finite", token.offset)
            return Number(complex(value))
        if token.type == TokenType.LPAREN:
            self._advance()
            self._enter()
            try:
                inner = self._expr()
            finally:
                self._leave()
            self._expect(TokenType.RPAREN, "')'")
            return inner
        if token.type == TokenType.IDENTIFIER:
            self._advance()
            name = token.text
            if name == "x":
                return VariableX()
            if name in CONSTANTS:
                return Number(CONSTANTS[name])
            if name in FUNCTIONS:
                self._expect(TokenType.LPAREN, "'('")
                self._enter()
                try:
                    argument = self._expr()
                finally:
                    self._leave()
                self._expect(TokenType.RPAREN, "')'")
                return Call(FUNCTIONS[name], argument)
            raise UnknownIdentifier(name, token.offset)
        raise ParseError(f"unexpected token {token.text or 'end of input'!r}", token.offset,
                         self._PRIMARY_START)

    def _expect(self, token_type: TokenType, description: str) -> Token:
        if self.current.type != token_type:
            raise ParseError(f"unexpected token {self.current.text or 'end of input'!r}",
                             self.current.offset, frozenset({description}))
        return self._advance()


def parse(source: str) -> ExprAst:
    """Parse source text into an expression tree.

    Raises:
        ParseError: On grammar violations, with byte offset and expected tokens
        UnknownIdentifier: For names outside x, i, pi, e and the function list
    """
    return Parser(source).parse()


def substitute_parameter(source: str, name: str, value: float) -> str:
    """Replace every whole-word occurrence of a parameter name by a literal value."""
    literal = repr(float(value))
    return re.sub(rf"\b{re.escape(name)}\b", f"({literal})", source)

"""Scalar arithmetic expressions for parameterized matrix entries.

Recursive descent parser over the grammar

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | base ('^' factor)?
    base   := NUMBER | IDENT | FUNC '(' expr ')' | '(' expr ')'

'^' is right associative.  Unary minus binds looser than '^', so
``-2^2`` evaluates to -4 (the conventional reading).  Supported
functions: sin, cos, tan, exp, ln, sqrt, abs.

Domain problems (ln of a non-positive number, sqrt of a negative
number, division by zero, fractional power of a negative base) raise
EvalError instead of producing NaN or inf, so downstream numerics never
silently walk through invalid territory.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

__all__ = [
    "ExprError",
    "ParseError",
    "EvalError",
    "Num",
    "Var",
    "Neg",
    "BinOp",
    "Call",
    "parse",
    "evaluate",
    "to_source",
]

FUNCTIONS = ("sin", "cos", "tan", "exp", "ln", "sqrt", "abs")


class ExprError(ValueError):
    pass


class ParseError(ExprError):
    """Syntax error with the byte offset and what was expected."""

    def __init__(self, message, offset, expected):
        super().__init__(f"{message} at offset {offset} (expected {expected})")
        self.offset = offset
        self.expected = expected


class EvalError(ExprError):
    pass


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


Node = Num | Var | Neg | BinOp | Call

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(source):
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            stripped = source[pos:].lstrip()
            if not stripped:
                break
            off = len(source) - len(stripped)
            raise ParseError(f"unrecognized character {stripped[0]!r}", off, "a token")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("eof", "", len(source)))
    return tokens


class _Parser:
    def __init__(self, source):
        self.source = source
        self.tokens = _tokenize(source)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, text, off = self.peek()
        if kind != "op" or text != op:
            raise ParseError(f"unexpected {text or 'end of input'!r}", off, repr(op))
        return self.next()

    def parse(self):
        node = self.expr()
        kind, text, off = self.peek()
        if kind != "eof":
            raise ParseError(f"trailing input {text!r}", off, "end of input")
        return node

    def expr(self):
        node = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.next()
                node = BinOp(text, node, self.term())
            else:
                return node

    def term(self):
        node = self.factor()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "*/":
                self.next()
                node = BinOp(text, node, self.factor())
            else:
                return node

    def factor(self):
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.next()
            return Neg(self.factor())
        node = self.base()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.next()
            node = BinOp("^", node, self.factor())
        return node

    def base(self):
        kind, text, off = self.next()
        if kind == "num":
            return Num(float(text))
        if kind == "ident":
            k, t, _ = self.peek()
            if k == "op" and t == "(":
                if text not in FUNCTIONS:
                    raise ParseError(
                        f"unknown function {text!r}", off, "one of " + ", ".join(FUNCTIONS)
                    )
                self.next()
                arg = self.expr()
                self.expect_op(")")
                return Call(text, arg)
            return Var(text)
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError(
            f"unexpected {text or 'end of input'!r}", off, "a number, name or '('"
        )


def parse(source):
    """Parse *source* into an immutable expression tree."""
    return _Parser(source).parse()


def _apply_func(func, x):
    if func == "sin":
        return math.sin(x)
    if func == "cos":
        return math.cos(x)
    if func == "tan":
        return math.tan(x)
    if func == "exp":
        return math.exp(x)
    if func == "ln":
        if x <= 0.0:
            raise EvalError(f"ln of non-positive value {x!r}")
        return math.log(x)
    if func == "sqrt":
        if x < 0.0:
            raise EvalError(f"sqrt of negative value {x!r}")
        return math.sqrt(x)
    if func == "abs":
        return abs(x)
    raise EvalError(f"unknown function {func!r}")


def evaluate(ast, env):
    """Evaluate *ast* with identifier bindings from *env* (name -> float)."""
    if isinstance(ast, Num):
        return ast.value
    if isinstance(ast, Var):
        try:
            return float(env[ast.name])
        except KeyError:
            raise EvalError(f"unbound identifier {ast.name!r}") from None
    if isinstance(ast, Neg):
        return -evaluate(ast.operand, env)
    if isinstance(ast, Call):
        return _apply_func(ast.func, evaluate(ast.arg, env))
    if isinstance(ast, BinOp):
        a = evaluate(ast.left, env)
        b = evaluate(ast.right, env)
        op = ast.op
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if op == "/":
            if b == 0.0:
                raise EvalError("division by zero")
            return a / b
        if op == "^":
            if a == 0.0 and b < 0.0:
                raise EvalError("zero raised to a negative power")
            if a < 0.0 and b != int(b):
                raise EvalError(f"fractional power of negative base {a!r}")
            try:
                return a**b
            except OverflowError:
                raise EvalError("overflow in power") from None
    raise EvalError(f"not an expression node: {ast!r}")


def to_source(ast):
    """Render *ast* back to parseable text (fully parenthesized)."""
    if isinstance(ast, Num):
        if ast.value < 0 or math.copysign(1.0, ast.value) < 0:
            return f"(-{abs(ast.value)!r})"
        return repr(ast.value)
    if isinstance(ast, Var):
        return ast.name
    if isinstance(ast, Neg):
        return f"(-{to_source(ast.operand)})"
    if isinstance(ast, Call):
        return f"{ast.func}({to_source(ast.arg)})"
    if isinstance(ast, BinOp):
        return f"({to_source(ast.left)}{ast.op}{to_source(ast.right)})"
    raise ExprError(f"not an expression node: {ast!r}")

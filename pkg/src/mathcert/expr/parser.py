"""Recursive-descent parser and renderer for the candidate expression language.

    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := "-" factor | base ("^" factor)?
    base   := INTEGER | INTEGER "/" INTEGER | CONST | NAME "(" expr ("," expr)* ")"
            | NAME | "(" expr ")"

Unary minus binds looser than ``^`` (``-x^2`` is ``-(x^2)``).  Two integers
around ``/`` form one rational literal unless either integer is an operand of
``^``: ``1/3`` is a literal, ``x^2/3`` is ``(x^2)/3`` and ``2/3^2`` is
``2/(3^2)``.  Write ``(2/3)^2`` for the power of a literal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .nodes import (
    ALL_FUNCTIONS,
    CONSTANTS,
    BinOp,
    Call,
    Const,
    Expression,
    Neg,
    Rat,
    Var,
)


class ExpressionSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int, expected=()):
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        detail = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"line {line}, column {column}: {message}{detail}")


class UnknownIdentifierError(ExpressionSyntaxError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str   # INTEGER, NAME, OP, EOF
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(r"(?P<ws>[ \t\r\n]+)|(?P<int>[0-9]+)|(?P<name>[a-z][a-z0-9_]*)|(?P<op>[-+*/^(),])")


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            ch = text[pos]
            hint = ""
            if ch == ".":
                hint = "; decimal literals are not allowed, write a ratio such as 1/2"
            raise ExpressionSyntaxError(f"unexpected character {ch!r}{hint}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind == "int":
            tokens.append(Token("INTEGER", chunk, line, col))
        elif kind == "name":
            tokens.append(Token("NAME", chunk, line, col))
        elif kind == "op":
            tokens.append(Token("OP", chunk, line, col))
        else:
            newlines = chunk.count("\n")
            if newlines:
                line += newlines
                line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at_op(self, *ops: str) -> bool:
        t = self.peek()
        return t.kind == "OP" and t.text in ops

    def fail(self, message: str, expected=()):
        t = self.peek()
        raise ExpressionSyntaxError(message, t.line, t.column, expected)

    def expect_op(self, op: str):
        if not self.at_op(op):
            t = self.peek()
            self.fail(f"unexpected {_describe(t)}", {f'"{op}"'})
        return self.advance()

    def parse(self) -> Expression:
        if self.peek().kind == "EOF":
            self.fail("empty expression", _expected_base())
        e = self.expr()
        if self.peek().kind != "EOF":
            self.fail(f"unexpected {_describe(self.peek())}",
                      {'"+"', '"-"', '"*"', '"/"', '"^"', "end of input"})
        return e

    def expr(self) -> Expression:
        left = self.term()
        while self.at_op("+", "-"):
            op = "add" if self.advance().text == "+" else "sub"
            left = BinOp(op, left, self.term())
        return left

    def term(self) -> Expression:
        left = self.factor()
        while self.at_op("*", "/"):
            op = "mul" if self.advance().text == "*" else "div"
            left = BinOp(op, left, self.factor())
        return left

    def factor(self) -> Expression:
        if self.at_op("-"):
            self.advance()
            return Neg(self.factor())
        b = self.base()
        if self.at_op("^"):
            self.advance()
            return BinOp("pow", b, self.factor())
        return b

    def base(self) -> Expression:
        t = self.peek()
        if t.kind == "INTEGER":
            self.advance()
            nxt, after, beyond = self.peek(), self.peek(1), self.peek(2)
            before = self.tokens[self.i - 2] if self.i >= 2 else None
            in_power = (before is not None and before.kind == "OP" and before.text == "^") or \
                (beyond.kind == "OP" and beyond.text == "^")
            if nxt.kind == "OP" and nxt.text == "/" and after.kind == "INTEGER" and not in_power:
                self.advance()
                den = int(self.advance().text)
                if den == 0:
                    raise ExpressionSyntaxError("zero denominator in rational literal",
                                                after.line, after.column)
                return Rat(Fraction(int(t.text), den))
            return Rat(Fraction(int(t.text)))
        if t.kind == "NAME":
            self.advance()
            if self.at_op("("):
                if t.text not in ALL_FUNCTIONS:
                    raise UnknownIdentifierError(f"unknown function {t.text!r}", t.line, t.column)
                self.advance()
                args = [self.expr()]
                while self.at_op(","):
                    self.advance()
                    args.append(self.expr())
                if not self.at_op(")"):
                    self.fail(f"unexpected {_describe(self.peek())}", {'","', '")"'})
                self.advance()
                return Call(t.text, tuple(args))
            if t.text in CONSTANTS:
                return Const(t.text)
            if t.text in ALL_FUNCTIONS:
                raise ExpressionSyntaxError(f"function {t.text!r} used without arguments",
                                            t.line, t.column, {'"("'})
            return Var(t.text)
        if t.kind == "OP" and t.text == "(":
            self.advance()
            e = self.expr()
            self.expect_op(")")
            return e
        self.fail(f"unexpected {_describe(t)}", _expected_base())


def _expected_base():
    return {"integer", "constant", "name", '"("', '"-"'}


def _describe(t: Token) -> str:
    if t.kind == "EOF":
        return "end of input"
    return f"{t.text!r}"


def parse(text: str) -> Expression:
    """Parse candidate text into an expression tree."""
    return _Parser(text).parse()


# -- rendering ------------------------------------------------------------

_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2}
_SYMBOL = {"add": "+", "sub": "-", "mul": "*", "div": "/", "pow": "^"}


def _render_base(e: Expression) -> str:
    """Render so the result parses back through the ``base`` rule."""
    if isinstance(e, Rat):
        v = e.value
        return str(v.numerator) if v.denominator == 1 else f"({v.numerator}/{v.denominator})"
    if isinstance(e, (Const, Var)):
        return e.name
    if isinstance(e, Call):
        return f"{e.fn}({', '.join(render(a) for a in e.args)})"
    return f"({render(e)})"


def _render_factor(e: Expression) -> str:
    if isinstance(e, Neg):
        return "-" + _render_factor(e.child)
    if isinstance(e, BinOp) and e.op == "pow":
        return f"{_render_base(e.left)}^{_render_factor(e.right)}"
    return _render_base(e)


def render(e: Expression) -> str:
    """Text form that re-parses to a structurally identical tree."""
    if isinstance(e, BinOp):
        if e.op == "pow":
            return _render_factor(e)
        prec = _PREC[e.op]
        left = render(e.left)
        if isinstance(e.left, BinOp) and e.left.op != "pow" and _PREC[e.left.op] < prec:
            left = f"({left})"
        if isinstance(e.right, BinOp) and e.right.op != "pow" and _PREC[e.right.op] <= prec:
            right = f"({render(e.right)})"
        else:
            right = render(e.right)
            if e.op == "div" and right[0].isdigit():
                # "2 / 3" would re-parse as a single rational literal
                right = f"({right})"
        return f"{left} {_SYMBOL[e.op]} {right}"
    return _render_factor(e)

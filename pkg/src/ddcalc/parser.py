"""Tokenizer and recursive-descent parser for the curve expression grammar.

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' uint)? | '-' factor
    atom   := number | 'x' | func '(' expr ')' | '(' expr ')'
    func   := sin|cos|exp|sqrt|log|relu|abs
    curve  := expr | '[' expr (',' expr)* ']'

Numbers are decimal literals with an optional exponent. Precedence is the
standard one: ^ binds tightest, then unary minus, then * and /, then + and -.
"""

from __future__ import annotations

import re

from .errors import ExprSyntaxError
from .expr import (
    FUNCTION_NODES, Add, Const, Div, Expr, Mul, Neg, PowInt, Sub, Var,
)

__all__ = ["parse", "parse_components", "tokenize"]

_TOKEN_RE = re.compile(
    r"""
    (?P<number>(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)
  | (?P<name>[a-zA-Z_]+)
  | (?P<op>[-+*/^(),\[\]])
  | (?P<ws>\s+)
    """,
    re.VERBOSE,
)


class _Token:
    __slots__ = ("kind", "text", "offset")

    def __init__(self, kind: str, text: str, offset: int):
        self.kind = kind
        self.text = text
        self.offset = offset

    def __repr__(self):
        return f"_Token({self.kind}, {self.text!r}, {self.offset})"


def tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.peek()
        if tok.kind == "op" and tok.text == text:
            return self.advance()
        raise ExprSyntaxError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.offset)

    def at_op(self, *texts: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text in texts

    def parse_curve(self) -> Expr | list[Expr]:
        if self.at_op("["):
            self.advance()
            components = [self.parse_expr()]
            while self.at_op(","):
                self.advance()
                components.append(self.parse_expr())
            self.expect("]")
            self.finish()
            return components
        e = self.parse_expr()
        self.finish()
        return e

    def finish(self):
        tok = self.peek()
        if tok.kind != "eof":
            raise ExprSyntaxError(f"unexpected trailing input {tok.text!r}", tok.offset)

    def parse_expr(self) -> Expr:
        e = self.parse_term()
        while self.at_op("+", "-"):
            op = self.advance().text
            rhs = self.parse_term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def parse_term(self) -> Expr:
        e = self.parse_factor()
        while self.at_op("*", "/"):
            op = self.advance().text
            rhs = self.parse_factor()
            e = Mul(e, rhs) if op == "*" else Div(e, rhs)
        return e

    def parse_factor(self) -> Expr:
        if self.at_op("-"):
            self.advance()
            return Neg(self.parse_factor())
        atom = self.parse_atom()
        if self.at_op("^"):
            self.advance()
            tok = self.peek()
            if tok.kind != "number" or not tok.text.isdigit():
                raise ExprSyntaxError(
                    "exponent must be a nonnegative integer literal", tok.offset)
            self.advance()
            return PowInt(atom, int(tok.text))
        return atom

    def parse_atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "number":
            self.advance()
            return Const(float(tok.text))
        if tok.kind == "name":
            self.advance()
            if tok.text == "x":
                return Var()
            node = FUNCTION_NODES.get(tok.text)
            if node is None:
                raise ExprSyntaxError(f"unknown identifier {tok.text!r}", tok.offset)
            self.expect("(")
            inner = self.parse_expr()
            self.expect(")")
            return node(inner)
        if self.at_op("("):
            self.advance()
            inner = self.parse_expr()
            self.expect(")")
            return inner
        raise ExprSyntaxError(
            f"expected a number, 'x', a function call or '(', found "
            f"{tok.text or 'end of input'!r}", tok.offset)


def parse(text: str) -> Expr | list[Expr]:
    """Parse curve text: a single expression or '[e1, e2, ...]'."""
    return _Parser(text).parse_curve()


def parse_components(text: str) -> list[Expr]:
    """Parse curve text and normalize the result to a component list."""
    result = parse(text)
    return result if isinstance(result, list) else [result]

"""Recursive-descent parser for the expression grammar.

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := "-" factor | base ("^" (integer | "(" expr ")"))?
    base   := integer | integer "/" integer | "pi" | "x"
            | ("sin" | "cos" | "ln") "(" expr ")" | "(" expr ")"
            | name | name "(" expr ")"          (previously defined names)

A literal ``a/b`` is read as one rational unless a power follows ``b``.
Floating-point literals are rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ParseError
from . import expr as E

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))", re.S)
_FUNCS = {"sin": E.Sin, "cos": E.Cos, "ln": E.Ln}
RESERVED = {"pi", "x", "sin", "cos", "ln"}


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "sym", "end"
    text: str
    pos: int


def tokenize(text: str):
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            out.append(Token("end", "", len(text)))
            return out
        m = _TOKEN.match(text, pos)
        if m.group(1):
            if m.end() < len(text) and text[m.end()] == ".":
                raise ParseError("floating-point literals are not allowed", m.end(), "an integer")
            out.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(Token("name", m.group(2), m.start(2)))
        else:
            out.append(Token("sym", m.group(3), m.start(3)))
        pos = m.end()


@dataclass(frozen=True)
class Definition:
    param: bool  # True for name(x) = ..., False for name = ...
    body: E.Expr


class Parser:
    def __init__(self, text: str, definitions=None):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.definitions = dict(definitions or {})

    # -- token helpers --------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("sym", "name") and t.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected '{text}'", f"'{text}'")
        t = self.tok
        self.i += 1
        return t

    def fail(self, message: str, expected=None):
        raise ParseError(message, self.tok.pos, expected)

    def expect_end(self):
        if self.tok.kind != "end":
            self.fail(f"unexpected '{self.tok.text}'", "end of input")

    def integer(self) -> int:
        if self.tok.kind != "int":
            self.fail("expected an integer", "integer")
        value = int(self.tok.text)
        self.i += 1
        return value

    # -- grammar --------------------------------------------------------------

    def expr(self) -> E.Expr:
        left = self.term()
        while True:
            if self.accept("+"):
                left = E.Add(left, self.term())
            elif self.accept("-"):
                left = E.Sub(left, self.term())
            else:
                return left

    def term(self) -> E.Expr:
        left = self.factor()
        while True:
            if self.accept("*"):
                left = E.Mul(left, self.factor())
            elif self.accept("/"):
                left = E.Div(left, self.factor())
            else:
                return left

    def factor(self) -> E.Expr:
        if self.accept("-"):
            return E.Neg(self.factor())
        base = self.base()
        if self.accept("^"):
            if self.accept("("):
                exponent = self.expr()
                self.expect(")")
                return E.VarPow(base, exponent)
            return E.Pow(base, self.integer())
        return base

    def base(self) -> E.Expr:
        t = self.tok
        if t.kind == "int":
            self.i += 1
            value = Fraction(int(t.text))
            nxt, after = self.peek(1), self.peek(2)
            if self.at("/") and nxt.kind == "int" and not (after.kind == "sym" and after.text == "^"):
                self.i += 2
                if int(nxt.text) == 0:
                    raise ParseError("zero denominator", nxt.pos)
                value /= int(nxt.text)
            return E.Num(value)
        if t.kind == "name":
            self.i += 1
            if t.text == "pi":
                return E.PI_SYM
            if t.text == "x":
                return E.X
            if t.text in _FUNCS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return _FUNCS[t.text](arg)
            if t.text in self.definitions:
                d = self.definitions[t.text]
                if not d.param:
                    return d.body
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return d.body if arg == E.X else E.substitute(d.body, arg)
            self.i -= 1
            self.fail(f"unknown name '{t.text}'", "pi, x, sin, cos, ln or a defined name")
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        if t.kind == "end":
            self.fail("unexpected end of input", "an expression")
        if t.kind == "sym" and t.text == ".":
            self.fail("floating-point literals are not allowed", "an integer")
        self.fail(f"unexpected '{t.text}'", "an expression")


def parse_expr(text: str, definitions=None) -> E.Expr:
    p = Parser(text, definitions)
    e = p.expr()
    p.expect_end()
    return e

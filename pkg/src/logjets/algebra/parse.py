"""Parser for the polynomial/series expression grammar used in input files.

    expr   ::= term (('+' | '-') term)*
    term   ::= power ('*' power)*
    power  ::= unary ('^' nat)?
    unary  ::= '-' unary | atom
    atom   ::= int | name | '(' expr ')'
"""

from __future__ import annotations

import re
from typing import Sequence

from .fields import QQ, Field
from .poly import Poly
from .series import TruncSeries

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class ExpressionError(ValueError):
    def __init__(self, message: str, text: str, column: int):
        self.message = message
        self.text = text
        self.column = column
        super().__init__(f"column {column}: {message} in {text!r}")


class _Parser:
    def __init__(self, text: str, variables: Sequence[str], field: Field):
        self.text = text
        self.variables = tuple(variables)
        self.field = field
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            if m.group(0).strip() == "":
                break
            kind = "int" if m.group(1) else "name" if m.group(2) else "op"
            value = m.group(1) or m.group(2) or m.group(3)
            self.tokens.append((kind, value, m.start(m.lastindex) + 1))
            pos = m.end()
        self.i = 0

    def error(self, msg, col=None):
        if col is None:
            col = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text) + 1
        raise ExpressionError(msg, self.text, col)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text) + 1)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if not self.tokens:
            self.error("empty expression", 1)
        p = self.expr()
        if self.i != len(self.tokens):
            self.error(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.power()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            p = p * self.power()
        return p

    def power(self):
        p = self.unary()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, value, col = self.take()
            if kind != "int":
                self.error("exponent must be a natural number", col)
            p = p ** int(value)
        return p

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return -self.unary()
        return self.atom()

    def atom(self):
        kind, value, col = self.take()
        if kind == "int":
            return Poly.constant(int(value), self.variables, self.field)
        if kind == "name":
            if value not in self.variables:
                self.error(f"unknown variable {value!r}", col)
            return Poly.var(value, self.variables, self.field)
        if kind == "op" and value == "(":
            p = self.expr()
            k, v, c = self.take()
            if v != ")":
                self.error("expected ')'", c)
            return p
        if kind is None:
            self.error("unexpected end of expression", col)
        self.error(f"unexpected {value!r}", col)


def parse_poly(text: str, variables: Sequence[str], field: Field = QQ) -> Poly:
    return _Parser(text, variables, field).parse()


def parse_series(text: str, precision: int, field: Field = QQ) -> tuple[TruncSeries, Poly]:
    """Parse a polynomial in ``t``; return it truncated at ``precision`` and exactly."""
    p = parse_poly(text, ("t",), field)
    return poly_to_series(p, precision), p


def poly_to_series(p: Poly, precision: int) -> TruncSeries:
    if p.variables != ("t",):
        raise ValueError(f"expected a polynomial in t, got variables {p.variables}")
    coeffs = [p.field.zero] * precision
    for (k,), c in p.terms.items():
        if k < precision:
            coeffs[k] = c
    return TruncSeries(coeffs, precision)

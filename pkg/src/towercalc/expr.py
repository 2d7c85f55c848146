"""Evaluate intersection expressions such as ``c1 * (1*HH - 1*L1 - 1*M1)``.

Names are basis labels of the chosen level plus ``c1`` and ``c2``; ``*`` is the
intersection product (scalars scale), ``/`` divides by a scalar.  Values carry
a degree: scalars 0, divisors 1, curves 2, top-degree numbers 3.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from .errors import ExpressionError
from .ring import CurveClass, DivisorClass, intersect_dd, pair_dc
from .tower import Variety

Value = Union[DivisorClass, CurveClass, Fraction]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("name", name))
        elif op in "+-*/()":
            tokens.append(("op", op))
        else:
            raise ExpressionError(f"unexpected character {op!r}")
        pos = m.end()
    tokens.append(("end", ""))
    return tokens


class _Parser:
    def __init__(self, v: Variety, text: str):
        self.v = v
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op: str):
        tok = self.take()
        if tok != ("op", op):
            raise ExpressionError(f"expected {op!r}, got {tok[1] or 'end of input'!r}")

    def parse(self):
        val = self.expr()
        if self.peek()[0] != "end":
            raise ExpressionError(f"unexpected {self.peek()[1]!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = _add(val, rhs if op == "+" else _neg(rhs))
        return val

    def term(self):
        val = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.unary()
            val = _mul(val, rhs) if op == "*" else _div(val, rhs)
        return val

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return _neg(self.unary())
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.atom()

    def atom(self):
        kind, text = self.take()
        if kind == "num":
            return (0, Fraction(int(text)))
        if kind == "name":
            if text == "c1":
                return (1, self.v.c1)
            if text == "c2":
                return (2, self.v.c2)
            if text in self.v.div_basis:
                return (1, self.v.div(text))
            if text in self.v.curve_basis:
                return (2, self.v.curve(text))
            raise ExpressionError(f"unknown name {text!r} at level {self.v.level}")
        if (kind, text) == ("op", "("):
            val = self.expr()
            self.expect(")")
            return val
        raise ExpressionError(f"unexpected {text or 'end of input'!r}")


def _neg(a):
    return (a[0], -a[1])


def _add(a, b):
    # plain numbers (degree 0) and intersection numbers (degree 3) are both rationals
    if {a[0], b[0]} <= {0, 3}:
        return (max(a[0], b[0]), a[1] + b[1])
    if a[0] != b[0]:
        raise ExpressionError(f"cannot add terms of degree {a[0]} and {b[0]}")
    return (a[0], a[1] + b[1])


def _mul(a, b):
    deg = a[0] + b[0]
    if deg > 3:
        raise ExpressionError("product exceeds top degree")
    if a[0] == 0 or b[0] == 0:
        scalar, other = (a, b) if a[0] == 0 else (b, a)
        if other[0] in (0, 3):
            return (deg, scalar[1] * other[1])
        return (deg, other[1].scale(scalar[1]))
    if a[0] == 1 and b[0] == 1:
        return (2, intersect_dd(a[1], b[1]))
    div, cur = (a, b) if a[0] == 1 else (b, a)
    return (3, pair_dc(div[1], cur[1]))


def _div(a, b):
    if b[0] != 0:
        raise ExpressionError("can only divide by a scalar")
    if b[1] == 0:
        raise ExpressionError("division by zero")
    inv = (0, 1 / b[1])
    return _mul(a, inv)


def eval_expr(v: Variety, expr: str) -> Value:
    """Exact value of ``expr`` on level ``v``: a class or a rational number."""
    return _Parser(v, expr).parse()[1]


def eval_expr_graded(v: Variety, expr: str) -> tuple[int, Value]:
    return _Parser(v, expr).parse()

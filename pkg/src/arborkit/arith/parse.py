"""Infix polynomial parser: ``"x^4-2*x^2-1"``, ``"1/3*x^2 + 2x"``, ``"(x-1)^2"``."""

import re

from gmpy2 import mpq

from ..errors import ParseError
from .poly import QQ, UniPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[\^*/+\-()]))")


def _tokens(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("var", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, var):
        self.toks = _tokens(text)
        self.i = 0
        self.var = var
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def fail(self, msg):
        raise ParseError(f"{msg} in {self.text!r}")

    def expr(self):
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self):
        acc = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.power()
            elif kind == "op" and val == "/":
                self.take()
                d = self.power()
                if d.degree != 0:
                    self.fail("division by a non-constant")
                acc = acc * (1 / d.coeffs[0])
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                acc = acc * self.power()  # implicit multiplication, e.g. 2x
            else:
                return acc

    def power(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, e = self.take()
            if kind != "num":
                self.fail("exponent must be a non-negative integer")
            return base ** e
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return UniPoly([mpq(val)], QQ)
        if kind == "var":
            if val != self.var:
                self.fail(f"unknown variable {val!r}")
            return UniPoly.x(QQ)
        if kind == "op" and val == "(":
            e = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return e
        if kind == "op" and val == "-":
            return -self.power()
        self.fail("unexpected end of input" if kind is None else f"unexpected {val!r}")


def parse_poly(text: str, var: str = "x") -> UniPoly:
    p = _Parser(text, var)
    if not p.toks:
        raise ParseError("empty polynomial")
    out = p.expr()
    if p.i != len(p.toks):
        p.fail("trailing input")
    return out

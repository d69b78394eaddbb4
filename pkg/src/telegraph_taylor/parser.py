"""Text grammar for expressions in ``x`` and ``t``.

::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom (('^' | '**') unary)?
    atom    := NUMBER | 'x' | 't' | 'pi' | FUNC '(' expr ')' | '(' expr ')'
    FUNC    := sin | cos | sinh | cosh | exp

Numeric literals are read as exact rationals (``0.1`` is 1/10).  Exponents
must be non-negative integer constants.  ``/`` is accepted only when the
divisor is a nonzero constant, since there is no division node.
"""

from __future__ import annotations

import re
from fractions import Fraction

from . import expr as E

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^()]))"
)


class ParseError(ValueError):
    """Malformed expression text."""


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r} at {pos}")
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r} at {tok[2]}, found {tok[1] or 'end'!r}")
        self.i += 1
        return tok

    def parse(self) -> E.Expr:
        e = self.expr()
        if self.peek()[0] != "end":
            tok = self.peek()
            raise ParseError(f"unexpected {tok[1]!r} at {tok[2]}")
        return e

    def expr(self):
        terms = [self.term()]
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            terms.append(rhs if op == "+" else E.Neg(rhs))
        return terms[0] if len(terms) == 1 else E.Add(*terms)

    def term(self):
        factors = [self.unary()]
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            pos = self.peek()[2]
            rhs = self.unary()
            if op == "/":
                v = E.as_constant(rhs)
                if v is None or v == 0:
                    raise ParseError(f"division only by a nonzero constant (at {pos})")
                rhs = E.Const(1 / v if isinstance(v, float) else Fraction(1) / v)
            factors.append(rhs)
        return factors[0] if len(factors) == 1 else E.Mul(*factors)

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return E.Neg(self.unary())
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] in ("^", "**"):
            self.take()
            pos = self.peek()[2]
            ex = E.as_constant(self.unary())
            if ex is None or ex != int(ex) or ex < 0:
                raise ParseError(f"exponent must be a non-negative integer constant (at {pos})")
            n = int(ex)
            return E.Const(1) if n == 0 else E.Pow(base, n)
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return E.Const(Fraction(val))
        if kind == "name":
            if val in ("x", "t"):
                return E.Var(val)
            if val == "pi":
                return E.PI
            if val in E.FUNCS:
                self.take("(")
                arg = self.expr()
                self.take(")")
                return E.FUNCS[val](arg)
            raise ParseError(f"unknown name {val!r} at {pos}")
        if val == "(":
            e = self.expr()
            self.take(")")
            return e
        raise ParseError(f"unexpected {val or 'end'!r} at {pos}")


def parse(text: str) -> E.Expr:
    """Parse ``text`` into a raw (unsimplified) expression tree."""
    if not isinstance(text, str):
        raise ParseError(f"expression must be a string, got {type(text).__name__}")
    if not text.strip():
        raise ParseError("empty expression")
    return _Parser(text).parse()

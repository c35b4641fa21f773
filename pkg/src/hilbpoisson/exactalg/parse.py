"""Text grammar for polynomials.

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('+' | '-') factor | power
    power  := atom ('^' integer)?
    atom   := number | variable | '(' expr ')'

Numbers are integers, decimals or ``a/b`` written as a quotient.  Variables
are ``x``, ``y``, ``E[i][j]`` and ``C[i][j]``.  Division is only allowed by
a nonzero constant.  Whitespace is ignored.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import Poly, PolyRing, poly_ring

__all__ = ["ParseError", "parse_poly", "parse_rational"]


class ParseError(ValueError):
    pass


_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+(?:\.\d+)?)"
    r"|(?P<var>[EC]\[\d+\]\[\d+\]|[xy])"
    r"|(?P<op>[-+*/^()])"
    r")"
)


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at position {pos}: {text[pos:pos + 10]!r}")
        for kind in ("num", "var", "op"):
            if m.group(kind) is not None:
                out.append((kind, m.group(kind)))
                break
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, ring):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, value):
        kind, tok = self.take()
        if tok != value:
            raise ParseError(f"expected {value!r}, found {tok!r}")

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ParseError("division is only allowed by a nonzero constant")
                value = value / rhs.constant_term()
        return value

    def factor(self):
        if self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            inner = self.factor()
            return inner if op == "+" else -inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, tok = self.take()
            if kind != "num" or "." in tok:
                raise ParseError("exponents must be non-negative integers")
            base = base ** int(tok)
        return base

    def atom(self):
        kind, tok = self.take()
        if kind == "num":
            return self.ring.const(Fraction(tok))
        if kind == "var":
            return self.ring.gen(tok)
        if tok == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected token {tok!r}")


def parse_poly(text: str, ring: PolyRing | None = None) -> Poly:
    """Parse ``text``; without ``ring`` the ring of the variables that occur."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial")
    if ring is None:
        ring = poly_ring(tok for kind, tok in tokens if kind == "var")
    else:
        for kind, tok in tokens:
            if kind == "var" and tok not in ring:
                raise ParseError(f"variable {tok} is not declared")
    parser = _Parser(tokens, ring)
    value = parser.expr()
    if parser.pos != len(tokens):
        raise ParseError(f"trailing input at token {parser.peek()[1]!r}")
    return value


def parse_rational(text) -> Fraction:
    """A rational from an int, Fraction, or a string like '3/2' or '-0.5'."""
    if isinstance(text, bool):
        raise ParseError("not a rational number")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc

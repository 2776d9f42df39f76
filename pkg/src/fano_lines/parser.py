"""Text form of exact polynomials: a small parser and canonical printer.

The grammar accepts integer and rational literals (``-33``, ``1/2``),
variables from a declared set, ``+ - * ^``, parentheses, and implicit
multiplication between adjacent factors (``2x^2y``).  ``^`` binds tighter
than ``*``, which binds tighter than ``+``/``-``; unary minus is allowed.
Exponents are capped at 64.  Errors carry the 0-based text offset at which
parsing failed.

The canonical printer is :func:`format_poly`; ``parse_poly(format_poly(p),
p.ring) == p`` for every polynomial whose exponents stay within the cap.
"""

from __future__ import annotations

from fractions import Fraction

from .exact_poly import MultiPoly

__all__ = ["MAX_EXPONENT", "ParseError", "parse_poly", "format_poly"]

MAX_EXPONENT = 64

_INT = "int"
_NAME = "name"
_OP = "op"
_EOF = "eof"


class ParseError(ValueError):
    """A syntax or validation error, carrying the text offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


def _tokenize(text: str, variables) -> list:
    """Lex into (kind, value, position) triples, ending with an eof marker.

    Variable names are matched longest-first against the declared set, so
    adjacent single-letter variables (``xy``) lex as two tokens while a
    declared multi-letter name is kept whole.
    """
    names = sorted(variables, key=len, reverse=True)
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append((_INT, int(text[i:j]), i))
            i = j
            continue
        if ch in "+-*/^()":
            tokens.append((_OP, ch, i))
            i += 1
            continue
        for name in names:
            if text.startswith(name, i):
                tokens.append((_NAME, name, i))
                i += len(name)
                break
        else:
            if ch.isalpha():
                raise ParseError(f"unknown variable {ch!r}", i)
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append((_EOF, None, n))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: tuple):
        self.ring = ring
        self.tokens = _tokenize(text, ring)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect_op(self, op: str):
        kind, value, position = self.peek()
        if kind != _OP or value != op:
            raise ParseError(f"expected {op!r}", position)
        return self.advance()

    def constant(self, value) -> MultiPoly:
        zero = (0,) * len(self.ring)
        value = Fraction(value)
        return MultiPoly(self.ring, {zero: value} if value else {})

    # expr := term (('+'|'-') term)*
    def parse_expr(self) -> MultiPoly:
        result = self.parse_term()
        while True:
            kind, value, _ = self.peek()
            if kind == _OP and value in "+-":
                self.advance()
                term = self.parse_term()
                result = result + term if value == "+" else result - term
            else:
                return result

    # term := factor (['*'] factor)*   -- bare adjacency multiplies
    def parse_term(self) -> MultiPoly:
        result = self.parse_factor()
        while True:
            kind, value, _ = self.peek()
            if kind == _OP and value == "*":
                self.advance()
                result = result * self.parse_factor()
            elif kind in (_INT, _NAME) or (kind == _OP and value == "("):
                result = result * self.parse_factor()
            else:
                return result

    # factor := ('-'|'+') factor | primary ('^' exponent)?
    def parse_factor(self) -> MultiPoly:
        kind, value, _ = self.peek()
        if kind == _OP and value in "+-":
            self.advance()
            factor = self.parse_factor()
            return factor if value == "+" else -factor
        base = self.parse_primary()
        kind, value, _ = self.peek()
        if kind == _OP and value == "^":
            self.advance()
            return base ** self.parse_exponent()
        return base

    def parse_exponent(self) -> int:
        kind, value, position = self.peek()
        if kind != _INT:
            raise ParseError("expected a nonnegative integer exponent", position)
        self.advance()
        if value > MAX_EXPONENT:
            raise ParseError(
                f"exponent {value} exceeds the maximum {MAX_EXPONENT}", position
            )
        return value

    # primary := int ('/' int)? | variable | '(' expr ')'
    def parse_primary(self) -> MultiPoly:
        kind, value, position = self.advance()
        if kind == _INT:
            nxt_kind, nxt_value, _ = self.peek()
            if nxt_kind == _OP and nxt_value == "/":
                self.advance()
                den_kind, den_value, den_position = self.advance()
                if den_kind != _INT:
                    raise ParseError("expected an integer denominator", den_position)
                if den_value == 0:
                    raise ParseError("zero denominator", den_position)
                return self.constant(Fraction(value, den_value))
            return self.constant(value)
        if kind == _NAME:
            return MultiPoly.variable(self.ring, value)
        if kind == _OP and value == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        article = "end of input" if kind == _EOF else f"{value!r}"
        raise ParseError(f"expected an expression, found {article}", position)


def parse_poly(text: str, variables) -> MultiPoly:
    """Parse ``text`` into an exact polynomial over the given variables."""
    ring = tuple(variables)
    if len(set(ring)) != len(ring):
        raise ValueError("variable names must be distinct")
    parser = _Parser(text, ring)
    result = parser.parse_expr()
    kind, value, position = parser.peek()
    if kind != _EOF:
        raise ParseError(f"unexpected {value!r}", position)
    return result


def format_poly(poly: MultiPoly) -> str:
    """Canonical text form; parsing it back yields the same polynomial."""
    return str(poly)

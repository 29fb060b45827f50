"""Recursive-descent parser for potential expressions.

Grammar:

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ['^' ['-' | '+'] INT]
    atom   := INT | VAR | '(' expr ')'

Variables are x1, x2, ... up to the ambient rank.  '/' is exact division and
'^' accepts negative exponents; both require the divisor (or the base) to be
a monomial times a product of two-term factors, so 'x1^-2', '(1+x1)^-1',
and '1/(x1+x2)' are fine while '1/(1+x1+x2)' is rejected.
"""

from __future__ import annotations

import re

from .laurent import BinomialRationalFn, LaurentPoly, UnsupportedDenominatorError

__all__ = ["ExpressionError", "parse_expression", "parse_laurent"]


class ExpressionError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_INT_RE = re.compile(r"\d+")
_VAR_RE = re.compile(r"x(\d+)")


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isdigit():
            m = _INT_RE.match(text, pos)
            tokens.append(("int", int(m.group()), pos))
            pos = m.end()
            continue
        if ch == "x":
            m = _VAR_RE.match(text, pos)
            if not m:
                raise ExpressionError("expected a variable like x1", pos)
            tokens.append(("var", int(m.group(1)), pos))
            pos = m.end()
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, pos))
            pos += 1
            continue
        raise ExpressionError(f"unexpected character {ch!r}", pos)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, tokens, rank):
        self.tokens = tokens
        self.i = 0
        self.rank = rank

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op, _, _ = self.advance()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.advance()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                try:
                    value = value / rhs
                except UnsupportedDenominatorError as exc:
                    raise ExpressionError(str(exc), pos) from None
        return value

    def unary(self):
        if self.peek()[0] == "-":
            self.advance()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] != "^":
            return base
        _, _, pos = self.advance()
        sign = 1
        if self.peek()[0] in ("-", "+"):
            op, _, _ = self.advance()
            sign = -1 if op == "-" else 1
        kind, val, vpos = self.peek()
        if kind != "int":
            raise ExpressionError("expected an integer exponent after '^'", vpos)
        self.advance()
        try:
            return base ** (sign * val)
        except UnsupportedDenominatorError as exc:
            raise ExpressionError(str(exc), pos) from None

    def atom(self):
        kind, val, pos = self.advance()
        if kind == "int":
            return BinomialRationalFn.constant(self.rank, val)
        if kind == "var":
            if not 1 <= val <= self.rank:
                raise ExpressionError(
                    f"variable x{val} exceeds rank {self.rank}", pos
                )
            return BinomialRationalFn(LaurentPoly.variable(self.rank, val - 1))
        if kind == "(":
            value = self.expr()
            k2, _, p2 = self.advance()
            if k2 != ")":
                raise ExpressionError("expected ')'", p2)
            return value
        raise ExpressionError("expected a number, a variable, or '('", pos)


def parse_expression(text, rank):
    """Parse text into a LaurentPoly, or a normalized BinomialRationalFn
    when a denominator binomial genuinely survives."""
    if rank < 1:
        raise ValueError("rank must be positive")
    parser = _Parser(_tokenize(text), rank)
    value = parser.expr()
    kind, _, pos = parser.peek()
    if kind != "end":
        raise ExpressionError("unexpected trailing input", pos)
    value = value.normalized()
    poly, _ = value.laurent_or_witness()
    return value if poly is None else poly


def parse_laurent(text, rank):
    """Parse text and require the result to be a Laurent polynomial."""
    value = parse_expression(text, rank)
    if isinstance(value, LaurentPoly):
        return value
    _, witness = value.laurent_or_witness()
    raise ExpressionError(
        f"expression is not a Laurent polynomial (blocked by a binomial "
        f"factor in direction {witness.direction})",
        0,
    )

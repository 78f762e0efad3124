"""Recursive-descent parser for the shared expression grammar.

    expr     := ['-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' natural)*
    atom     := rational | variable | '(' expr ')'
    rational := integer | integer '/' positive-integer
    variable := x<j>[t0,t1,...,t(M-1)]

Whitespace is insignificant.  Errors carry 1-based line and column.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ExprParseError
from .poly import DPolynomial
from .ordering import DVariable

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<var>x(?P<vidx>\d+)\[(?P<slots>\d+(?:,\d+)*)\])
  | (?P<int>\d+)
  | (?P<op>[-+*^/()])
""", re.VERBOSE)


class _Token:
    __slots__ = ("kind", "value", "line", "column")

    def __init__(self, kind, value, line, column):
        self.kind = kind
        self.value = value
        self.line = line
        self.column = column


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise ExprParseError(f"unexpected character {text[pos]!r}", line, col)
        lexeme = match.group(0)
        if not match.group("ws"):
            if match.group("var"):
                tokens.append(_Token("var", match, line, col))
            elif match.group("int") is not None:
                tokens.append(_Token("int", int(match.group("int")), line, col))
            else:
                tokens.append(_Token(match.group("op"), lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = match.end()
    tokens.append(_Token("end", None, line, col))
    return tokens


class _Parser:
    def __init__(self, text, algebra):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.algebra = algebra

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok.kind != kind:
            raise ExprParseError(
                f"expected {kind!r}, found {tok.value!r}", tok.line, tok.column)
        self.pos += 1
        return tok

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ExprParseError(
                f"unexpected trailing input {tok.value!r}", tok.line, tok.column)
        return value

    def expr(self):
        negate = False
        if self.peek().kind == "-":
            self.take()
            negate = True
        value = self.term()
        if negate:
            value = -value
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek().kind == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self):
        value = self.atom()
        while self.peek().kind == "^":
            self.take()
            tok = self.take("int")
            value = value ** tok.value
        return value

    def atom(self):
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            # optional denominator
            if self.peek().kind == "/":
                self.take()
                den = self.take("int")
                if den.value == 0:
                    raise ExprParseError("zero denominator", den.line, den.column)
                return DPolynomial.constant(
                    self.algebra, Fraction(tok.value, den.value))
            return DPolynomial.constant(self.algebra, tok.value)
        if tok.kind == "var":
            self.take()
            match = tok.value
            theta = tuple(int(e) for e in match.group("slots").split(","))
            if len(theta) != self.algebra.M:
                raise ExprParseError(
                    f"variable has {len(theta)} slots, algebra has "
                    f"{self.algebra.M}", tok.line, tok.column)
            var = int(match.group("vidx"))
            if var < 1:
                raise ExprParseError("indeterminate index must be >= 1",
                                     tok.line, tok.column)
            return DPolynomial.from_variable(self.algebra, DVariable(var, theta))
        if tok.kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        raise ExprParseError(f"unexpected token {tok.value!r}", tok.line, tok.column)


def parse_poly(text, algebra):
    """Parse an expression over the given algebra into a DPolynomial."""
    return _Parser(text, algebra).parse()


def parse_generator_file(text, algebra):
    """One expression per line; blank lines and '#' comments skipped."""
    polys = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        try:
            polys.append(parse_poly(stripped, algebra))
        except ExprParseError as exc:
            raise ExprParseError(str(exc).rsplit(" (line", 1)[0],
                                 lineno, exc.column)
    return polys

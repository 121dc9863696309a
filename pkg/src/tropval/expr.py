"""Parser and pretty-printer for tropical expressions.

``+`` is tropical addition (max) and ``*`` tropical multiplication (ordinary
sum), as in the usual polynomial notation over Q_max::

    expr   := sum ('/' sum)?
    sum    := term ('+' term)*
    term   := factor ('*'? factor)*        # '*' may be omitted: 2T, 3(T + 1)
    factor := atom ('^' nat)?
    atom   := scalar | 'T' | '(' expr ')'
    scalar := ['-'] digits ['/' digits] | '-inf'

A fraction literal must be written without spaces (``3/2``); with spaces,
``3 / 2`` is a quotient of two constants.  There is no subtraction, so ``-``
only ever starts a negative literal.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .trop_core import BOTTOM, Trop
from .trop_poly import T as T_POLY
from .trop_poly import TropPoly, constant, poly_add, poly_mul
from .trop_ratfunc import TropRational, rat_add, rat_mul

__all__ = [
    "Num",
    "Var",
    "Add",
    "Mul",
    "Pow",
    "Div",
    "Expr",
    "ExprSyntaxError",
    "parse_expr",
    "pretty",
    "to_poly",
    "to_rational",
]


@dataclass(frozen=True)
class Num:
    value: Trop


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int


@dataclass(frozen=True)
class Div:
    num: "Expr"
    den: "Expr"


Expr = Union[Num, Var, Add, Mul, Pow, Div]


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {message}")
        self.line, self.column = line, col


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>-inf\b|-?\d+(?:/\d+)?)
  | (?P<var>T\b)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks, pos = [], 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind == "op" and m.group() == "-":
            raise ExprSyntaxError("'-' must begin a number or -inf (there is no subtraction)", text, pos)
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), pos))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, expected: str):
        got = "end of input" if self.tok.kind == "end" else repr(self.tok.text)
        raise ExprSyntaxError(f"expected {expected}, got {got}", self.text, self.tok.pos)

    def eat(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            self.error("an operator or end of input")
        return e

    def expr(self) -> Expr:
        num = self.sum()
        if self.eat("/"):
            return Div(num, self.sum())
        return num

    def sum(self) -> Expr:
        e = self.term()
        while self.eat("+"):
            e = Add(e, self.term())
        return e

    def term(self) -> Expr:
        e = self.factor()
        while True:
            if self.eat("*"):
                e = Mul(e, self.factor())
            elif self.tok.kind == "var" or (self.tok.kind == "op" and self.tok.text == "("):
                e = Mul(e, self.factor())
            else:
                return e

    def factor(self) -> Expr:
        base = self.atom()
        if self.eat("^"):
            if self.tok.kind != "num" or not self.tok.text.isdigit():
                self.error("a natural-number exponent")
            n = int(self.tok.text)
            self.i += 1
            return Pow(base, n)
        return base

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Num(BOTTOM if tok.text == "-inf" else Trop(Fraction(tok.text)))
        if tok.kind == "var":
            self.i += 1
            return Var()
        if self.eat("("):
            e = self.expr()
            if not self.eat(")"):
                self.error("')'")
            return e
        self.error("a number, T or '('")


def parse_expr(text: str) -> Expr:
    return _Parser(text).parse()


# precedence: Div 0 < Add 1 < Mul 2 < Pow 3 < atoms 4
def _prec(e: Expr) -> int:
    return {Div: 0, Add: 1, Mul: 2, Pow: 3}.get(type(e), 4)


def pretty(e: Expr) -> str:
    """Inverse of :func:`parse_expr` up to whitespace and redundant parentheses."""

    def wrap(sub: Expr, min_prec: int) -> str:
        s = pretty(sub)
        return f"({s})" if _prec(sub) < min_prec else s

    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return "T"
    if isinstance(e, Add):
        return f"{wrap(e.left, 1)} + {wrap(e.right, 2)}"
    if isinstance(e, Mul):
        return f"{wrap(e.left, 2)}*{wrap(e.right, 3)}"
    if isinstance(e, Pow):
        return f"{wrap(e.base, 4)}^{e.exp}"
    if isinstance(e, Div):
        return f"{wrap(e.num, 1)} / {wrap(e.den, 1)}"
    raise TypeError(f"not an expression: {e!r}")


def to_poly(e: Expr) -> TropPoly:
    """Evaluate to a raw polynomial; division is rejected."""
    if isinstance(e, Num):
        return constant(e.value)
    if isinstance(e, Var):
        return T_POLY
    if isinstance(e, Add):
        return poly_add(to_poly(e.left), to_poly(e.right))
    if isinstance(e, Mul):
        return poly_mul(to_poly(e.left), to_poly(e.right))
    if isinstance(e, Pow):
        return to_poly(e.base) ** e.exp
    if isinstance(e, Div):
        raise ValueError("expression is a fraction, not a polynomial")
    raise TypeError(f"not an expression: {e!r}")


def _has_div(e: Expr) -> bool:
    if isinstance(e, Div):
        return True
    return any(_has_div(getattr(e, f)) for f in ("left", "right", "base") if hasattr(e, f))


def to_rational(e: Expr) -> TropRational:
    if not _has_div(e):
        return TropRational.of(to_poly(e))
    if isinstance(e, Div):
        return to_rational(e.num) / to_rational(e.den)
    if isinstance(e, Add):
        return rat_add(to_rational(e.left), to_rational(e.right))
    if isinstance(e, Mul):
        return rat_mul(to_rational(e.left), to_rational(e.right))
    if isinstance(e, Pow):
        return to_rational(e.base) ** e.exp
    raise TypeError(f"not an expression: {e!r}")

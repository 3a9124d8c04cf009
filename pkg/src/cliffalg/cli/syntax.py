"""Expression grammar: lexer, AST, parser and canonical printer.

Precedence, tightest first: function calls and unary sign, ``^``,
``<|`` and ``|>``, ``*``, then ``+`` and ``-``.  All binary operators are
left-associative.  Basis monomials such as ``e1e2`` are single tokens.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from ..errors import CliffordError


class ExprSyntaxError(CliffordError):
    def __init__(self, message: str, position: int):
        super().__init__(f"syntax error at position {position}: {message}")
        self.position = position


@dataclass(frozen=True)
class Token:
    kind: str  # num, mono, ident, op, end
    text: str
    pos: int


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+/\d+|(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<mono>(?:e\d+)+(?![A-Za-z_0-9]))
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op><\||\|>|[-+*^(),=])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


# AST

@dataclass(frozen=True)
class Num:
    text: str


@dataclass(frozen=True)
class Gen:
    text: str
    pos: int = -1

    def __eq__(self, other):
        return isinstance(other, Gen) and self.text == other.text

    def __hash__(self):
        return hash(("gen", self.text))


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


Expr = Union[Num, Gen, Var, Neg, BinOp, Call]

FUNCTIONS = {
    "sp": 2,
    "gp": 2,
    "rev": 1,
    "gi": 1,
    "conj": 1,
    "dual": 1,
    "meet": 2,
    "exp": 1,
    "inv": 1,
    "norm": 1,
    "grade": 2,
    "classify": 1,
    "factor": 1,
}

LEVEL = {"+": 1, "-": 1, "*": 2, "<|": 3, "|>": 3, "^": 4}


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "end":
            raise ExprSyntaxError(f"expected {text!r}", self.tok.pos)
        return self.take()

    def parse(self) -> Expr:
        expr = self.binary(1)
        if self.tok.kind != "end":
            raise ExprSyntaxError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return expr

    def binary(self, level: int) -> Expr:
        if level > 4:
            return self.unary()
        left = self.binary(level + 1)
        while self.tok.kind == "op" and LEVEL.get(self.tok.text) == level:
            op = self.take().text
            left = BinOp(op, left, self.binary(level + 1))
        return left

    def unary(self) -> Expr:
        if self.tok.kind == "op" and self.tok.text == "-":
            self.take()
            return Neg(self.unary())
        if self.tok.kind == "op" and self.tok.text == "+":
            self.take()
            return self.unary()
        return self.atom()

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.take()
            return Num(t.text)
        if t.kind == "mono":
            self.take()
            return Gen(t.text, t.pos)
        if t.kind == "ident":
            self.take()
            if self.tok.text == "(" and self.tok.kind == "op":
                return self.call(t)
            return Var(t.text)
        if t.kind == "op" and t.text == "(":
            self.take()
            inner = self.binary(1)
            self.expect(")")
            return inner
        what = "end of input" if t.kind == "end" else repr(t.text)
        raise ExprSyntaxError(f"unexpected {what}", t.pos)

    def call(self, name: Token) -> Expr:
        if name.text not in FUNCTIONS:
            raise ExprSyntaxError(f"unknown function {name.text!r}", name.pos)
        self.expect("(")
        args = [self.binary(1)]
        while self.tok.text == "," and self.tok.kind == "op":
            self.take()
            args.append(self.binary(1))
        self.expect(")")
        if len(args) != FUNCTIONS[name.text]:
            raise ExprSyntaxError(
                f"{name.text} takes {FUNCTIONS[name.text]} argument(s), got {len(args)}", name.pos
            )
        if name.text == "grade" and not isinstance(args[0], Num):
            raise ExprSyntaxError("grade needs an integer literal first", name.pos)
        return Call(name.text, tuple(args))


def parse(text: str) -> Expr:
    return Parser(text).parse()


def _level(e: Expr) -> int:
    if isinstance(e, BinOp):
        return LEVEL[e.op]
    return 5


def to_text(e: Expr) -> str:
    """Canonical text with the fewest parentheses that re-parse to the same tree."""
    if isinstance(e, Num):
        return e.text
    if isinstance(e, Gen):
        return e.text
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        inner = to_text(e.operand)
        if isinstance(e.operand, BinOp):
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(e, Call):
        return f"{e.name}({', '.join(to_text(a) for a in e.args)})"
    if isinstance(e, BinOp):
        lv = LEVEL[e.op]
        left = to_text(e.left)
        right = to_text(e.right)
        if _level(e.left) < lv:
            left = f"({left})"
        if _level(e.right) <= lv:
            right = f"({right})"
        return f"{left} {e.op} {right}"
    raise TypeError(f"not an expression node: {e!r}")

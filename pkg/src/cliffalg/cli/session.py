"""Evaluation of parsed expressions against a session, and the REPL loop."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Callable, TextIO

from .. import algebra
from ..algebra import Multivector, Signature
from ..blades import BladeFactorization, factor_blade
from ..errors import CliffordError
from ..norms import VersorClass, classify_versor, invert, norm
from ..scalars import EXACT, Backend, format_literal
from ..textfmt import UnknownGenerator, format_multivector, parse_monomial
from .syntax import BinOp, Call, Expr, Gen, Neg, Num, Var, parse, to_text


class SignatureUnset(CliffordError):
    def __init__(self):
        super().__init__("no signature set; use 'sig s,t,u' or --sig")


class UnknownVariable(CliffordError):
    pass


@dataclass
class Session:
    sig: Signature | None = None
    backend: Backend = EXACT
    bindings: dict[str, Multivector] = field(default_factory=dict)

    def set_signature(self, sig: Signature) -> None:
        self.sig = sig
        self.bindings.clear()

    def require_sig(self) -> Signature:
        if self.sig is None:
            raise SignatureUnset()
        return self.sig

    def evaluate(self, text: str):
        return evaluate(parse(text), self)

    def execute(self, line: str) -> str | None:
        """Run one REPL line; returns text to print (or None)."""
        line = line.strip()
        if not line or line.startswith("#"):
            return None
        head, _, rest = line.partition(" ")
        if head == "sig":
            self.set_signature(Signature.parse(rest))
            return str(self.sig)
        if head == "backend":
            from ..scalars import backend

            self.backend = backend(rest.strip())
            return f"backend {self.backend.name}"
        if head in ("vars", ":vars"):
            return "\n".join(f"{k} = {format_multivector(v)}" for k, v in sorted(self.bindings.items()))
        if head in ("help", ":help"):
            return HELP
        name, eq, body = line.partition("=")
        if eq and name.strip().isidentifier() and not body.startswith("="):
            value = self.evaluate(body)
            if not isinstance(value, Multivector):
                raise CliffordError("only multivectors can be bound to names")
            self.bindings[name.strip()] = value
            return f"{name.strip()} = {format_value(value)}"
        return format_value(self.evaluate(line))


HELP = """\
statements:
  sig s,t,u          set the signature (clears variables)
  backend exact|float
  name = expr        bind a variable
  expr               evaluate and print
  vars               list variables
operators (loosest first): + -   *   <| |>   ^   then unary -, calls
functions: sp gp rev gi conj dual meet exp inv norm grade(k,x) classify factor"""


def _number(text: str, session: Session):
    return session.backend.parse(text)


def _coerce(x: Multivector, session: Session) -> Multivector:
    return x.to_float() if not session.backend.exact else x


def evaluate(expr: Expr, session: Session):
    sig = session.require_sig()
    if isinstance(expr, Num):
        return sig.scalar(_number(expr.text, session))
    if isinstance(expr, Gen):
        try:
            return _coerce(parse_monomial(expr.text, sig), session)
        except UnknownGenerator as exc:
            raise UnknownGenerator(exc.name, sig, expr.pos) from None
    if isinstance(expr, Var):
        if expr.name not in session.bindings:
            raise UnknownVariable(f"unknown name {expr.name!r}")
        return session.bindings[expr.name]
    if isinstance(expr, Neg):
        return -_mv(evaluate(expr.operand, session))
    if isinstance(expr, BinOp):
        left = _mv(evaluate(expr.left, session))
        right = _mv(evaluate(expr.right, session))
        return BINARY[expr.op](left, right)
    if isinstance(expr, Call):
        return _call(expr, session)
    raise TypeError(f"not an expression node: {expr!r}")


def _mv(value) -> Multivector:
    if not isinstance(value, Multivector):
        raise CliffordError(f"{type(value).__name__} cannot be used as a multivector")
    return value


BINARY: dict[str, Callable[[Multivector, Multivector], Multivector]] = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": algebra.geometric_product,
    "^": algebra.outer,
    "<|": algebra.left_inner,
    "|>": algebra.right_inner,
}

UNARY: dict[str, Callable[[Multivector], object]] = {
    "rev": lambda x: x.dagger(),
    "gi": lambda x: x.star(),
    "conj": lambda x: x.box(),
    "dual": algebra.dual,
    "exp": algebra.exp,
    "inv": invert,
    "norm": lambda x: x.sig.scalar(norm(x).value),
    "classify": classify_versor,
    "factor": factor_blade,
}


def _call(expr: Call, session: Session):
    name = expr.name
    if name == "grade":
        k = int(expr.args[0].text)
        return _mv(evaluate(expr.args[1], session)).grade(k)
    args = [_mv(evaluate(a, session)) for a in expr.args]
    if name == "sp":
        return algebra.scalar_product(*args)
    if name == "gp":
        return algebra.geometric_product(*args)
    if name == "meet":
        return algebra.meet(*args)
    return UNARY[name](args[0])


def format_value(value) -> str:
    if isinstance(value, Multivector):
        return format_multivector(value)
    if isinstance(value, VersorClass):
        flags = ("invertible", "lipschitz", "pin", "spin", "rotor")
        return " ".join(f"{f}={'yes' if getattr(value, f) else 'no'}" for f in flags)
    if isinstance(value, BladeFactorization):
        if not value.vectors:
            return format_literal(value.scale)
        vecs = " ^ ".join(f"({format_multivector(v)})" for v in value.vectors)
        return f"{format_literal(value.scale)} * {vecs}"
    return str(value)


def repl(session: Session, stdin: TextIO = sys.stdin, stdout: TextIO = sys.stdout, prompt: str = "> ") -> int:
    interactive = stdin.isatty()
    while True:
        if interactive:
            stdout.write(prompt)
            stdout.flush()
        line = stdin.readline()
        if not line:
            break
        if line.strip() in ("quit", "exit", ":q"):
            break
        try:
            out = session.execute(line)
        except (CliffordError, ValueError, ZeroDivisionError) as exc:
            out = f"error: {exc}"
        if out:
            stdout.write(out + "\n")
    return 0


__all__ = ["Session", "SignatureUnset", "evaluate", "format_value", "repl", "to_text"]

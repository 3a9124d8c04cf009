"""Plain-text multivector format.

One line of terms joined by ``+``/``-``.  A term is a scalar literal
(``3``, ``-2/7``, ``1.5``) optionally followed by ``*`` and a basis monomial
such as ``e1e2e3``; a bare monomial means coefficient 1.  A document may start
with a ``sig s,t,u`` header line.
"""

from __future__ import annotations

import re

from .algebra import Multivector, Signature, grade_of, mask_indices
from .errors import CliffordError
from .scalars import EXACT, Backend, format_literal

_NUMBER = r"(?:\d+/\d+|(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)"
_MONO = r"(?:e\d+)+"
_TERM = re.compile(
    rf"\s*(?P<sign>[+-])?\s*(?:(?P<num>{_NUMBER})(?:\s*\*\s*(?P<mono1>{_MONO}))?|(?P<mono2>{_MONO}))\s*"
)


class TextFormatError(CliffordError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def monomial(mask: int) -> str:
    return "".join(f"e{i + 1}" for i in mask_indices(mask))


def format_multivector(x: Multivector) -> str:
    parts: list[str] = []
    for mask, coef in sorted(x.terms.items(), key=lambda kv: (grade_of(kv[0]), kv[0])):
        negative = coef < 0
        mag = -coef if negative else coef
        lit = format_literal(mag)
        if mask == 0:
            body = lit
        elif lit == "1":
            body = monomial(mask)
        else:
            body = f"{lit}*{monomial(mask)}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts) if parts else "0"


def format_document(x: Multivector) -> str:
    s, t, u = x.sig.stu
    return f"sig {s},{t},{u}\n{format_multivector(x)}\n"


def parse_monomial(text: str, sig: Signature) -> Multivector:
    """Product of the generators named in ``e3e1...`` (any order allowed)."""
    out = sig.scalar(1)
    for idx in re.findall(r"e(\d+)", text):
        i = int(idx) - 1
        if not 0 <= i < sig.n:
            raise UnknownGenerator(f"e{idx}", sig)
        out = out * sig.generator(i)
    return out


class UnknownGenerator(CliffordError):
    def __init__(self, name: str, sig: Signature | None = None, position: int | None = None):
        where = f" at position {position}" if position is not None else ""
        n = f" (algebra has {sig.n} generators)" if sig is not None else ""
        super().__init__(f"unknown generator {name}{n}{where}")
        self.name = name
        self.position = position


def parse_multivector(text: str, sig: Signature | None = None, backend: Backend = EXACT) -> Multivector:
    lines = [ln for ln in text.strip().splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if lines and lines[0].strip().startswith("sig"):
        header = Signature.parse(lines[0].strip()[3:])
        if sig is not None and sig != header:
            raise TextFormatError("header signature does not match", 0)
        sig = header
        lines = lines[1:]
    if sig is None:
        raise TextFormatError("no signature given", 0)
    body = " ".join(lines).strip()
    if body in ("", "0"):
        return sig.zero()
    terms: dict[int, object] = {}
    pos = 0
    first = True
    while pos < len(body):
        m = _TERM.match(body, pos)
        if not m or m.end() == pos or (not first and m.group("sign") is None):
            raise TextFormatError("expected a term", pos)
        first = False
        coef = backend.parse(m.group("num")) if m.group("num") else 1
        if m.group("sign") == "-":
            coef = -coef
        mono = m.group("mono1") or m.group("mono2") or ""
        blade = parse_monomial(mono, sig)
        for mask, c in blade.terms.items():
            terms[mask] = terms.get(mask, 0) + c * coef
        pos = m.end()
    return Multivector(sig, terms)

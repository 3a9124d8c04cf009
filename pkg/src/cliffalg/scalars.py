"""Scalar backends.

Two backends are supported.  The exact one keeps coefficients as ``int`` or
:class:`fractions.Fraction`; the float one uses binary64.  Coefficients of
both kinds are plain Python numbers, so a multivector never carries a backend
object around: its backend is read off its coefficients.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction

# Default relative tolerance for float comparisons.
FLOAT_RTOL = 1e-10
# Singular values below RANK_RTOL * sigma_max count as zero.
RANK_RTOL = 1e-10


def is_exact(value) -> bool:
    return isinstance(value, numbers.Rational)


def div(a, b):
    """Divide keeping rationals exact (``1 / 2`` gives ``Fraction(1, 2)``)."""
    if is_exact(a) and is_exact(b):
        return Fraction(a) / b
    return a / b


def exact_sqrt(value):
    """Square root of a non-negative rational if it is a perfect square, else None."""
    value = Fraction(value)
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def parse_literal(text: str, exact: bool):
    """Parse ``3``, ``-2/7`` or ``1.5e-3``."""
    text = text.strip()
    if exact:
        value = Fraction(text)
        return value.numerator if value.denominator == 1 else value
    if "/" in text:
        return float(Fraction(text))
    return float(text)


def format_literal(value) -> str:
    if isinstance(value, bool):
        value = int(value)
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Rational):
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    text = repr(float(value))
    if text in ("inf", "-inf", "nan"):
        raise ValueError(f"cannot format non-finite coefficient {text}")
    return text


@dataclass(frozen=True)
class Backend:
    """Coercion rules for one of the two scalar kinds."""

    name: str
    exact: bool

    def coerce(self, value):
        if self.exact:
            if isinstance(value, str):
                return parse_literal(value, True)
            if isinstance(value, numbers.Integral):
                return int(value)
            if isinstance(value, numbers.Rational):
                return Fraction(value)
            return Fraction(float(value))
        if isinstance(value, str):
            return parse_literal(value, False)
        return float(value)

    def parse(self, text: str):
        return parse_literal(text, self.exact)

    def is_zero(self, value, scale=1.0) -> bool:
        if self.exact:
            return value == 0
        return abs(value) <= FLOAT_RTOL * max(1.0, abs(scale))


EXACT = Backend("exact", True)
FLOAT = Backend("float", False)


def backend(name: str) -> Backend:
    if name == "exact":
        return EXACT
    if name == "float":
        return FLOAT
    raise ValueError(f"unknown backend {name!r}")

"""Clifford algebra kernel over exact rationals or binary64 floats."""

from .algebra import (
    Multivector,
    Signature,
    dual,
    exp,
    geometric_product,
    grade_project,
    involution,
    left_inner,
    meet,
    outer,
    right_inner,
    scalar_product,
    tau,
)
from .textfmt import format_multivector, parse_multivector

__version__ = "0.1.0"

__all__ = [
    "Multivector",
    "Signature",
    "dual",
    "exp",
    "format_multivector",
    "geometric_product",
    "grade_project",
    "involution",
    "left_inner",
    "meet",
    "outer",
    "parse_multivector",
    "right_inner",
    "scalar_product",
    "tau",
]

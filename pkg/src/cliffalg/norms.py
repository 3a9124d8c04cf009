"""Norm functions, inversion, versor membership and rotor synthesis.

For algebras on at most five generators there is a multiplicative scalar
valued norm built from involutions alone:

    n = 0        N(x) = x
    n = 1, 2     N(x) = x^box x
    n = 3, 4     N(x) = [x^box x] x^box x
    n = 5        N(x) = [[x^dag x]_{1,4} x^dag x] [x^dag x]_{1,4} x^dag x

and each gives an inverse formula.  Larger algebras invert by solving the
linear system of left multiplication.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .algebra import Multivector, Signature, grade_of
from .errors import (
    DegenerateSignature,
    NotInvertible,
    NotOrthogonal,
    UnsupportedDimension,
)
from .scalars import div, exact_sqrt, is_exact

MAX_NORM_DIM = 5


@dataclass(frozen=True)
class NormValue:
    value: object
    dim_class: int


@dataclass(frozen=True)
class VersorClass:
    invertible: bool
    lipschitz: bool
    pin: bool
    spin: bool
    rotor: bool


def _scalar_of(x: Multivector):
    if not x.is_scalar():
        if x.is_exact:
            raise ArithmeticError(f"norm came out non-scalar: {x}")
        return x.scalar_part
    return x.scalar_part


def _norm_pieces(x: Multivector):
    """Return (N(x), left factor L) with N(x) = L x."""
    n = x.sig.n
    if n > MAX_NORM_DIM:
        raise UnsupportedDimension(f"no norm function for n = {n} > {MAX_NORM_DIM}")
    if n == 0:
        return x, x.sig.scalar(1)
    if n <= 2:
        left = x.box()
        return left * x, left
    if n <= 4:
        xb = x.box()
        left = (xb * x).bracket() * xb
        return left * x, left
    xd = x.dagger()
    m = xd * x
    mb = m.bracket(1, 4)
    left = (mb * m).bracket() * mb * xd
    return left * x, left


def norm(x: Multivector) -> NormValue:
    value, _ = _norm_pieces(x)
    return NormValue(_scalar_of(value), x.sig.n)


def _float_zero(value, x: Multivector) -> bool:
    if is_exact(value):
        return value == 0
    n = x.sig.n
    degree = 1 if n == 0 else 2 if n <= 2 else 4 if n <= 4 else 8
    return abs(value) <= 1e-12 * x.coef_norm() ** degree


def invert(x: Multivector) -> Multivector:
    """Two-sided inverse of x."""
    if x.is_zero():
        raise NotInvertible("zero is not invertible")
    if x.is_scalar():
        return x.sig.scalar(div(1, x.scalar_part))
    if x.sig.n <= MAX_NORM_DIM:
        value, left = _norm_pieces(x)
        nv = _scalar_of(value)
        if _float_zero(nv, x):
            raise NotInvertible(f"norm is zero for {x}")
        return left / nv
    return _invert_linear(x)


def left_mult_matrix(x: Multivector) -> list[list]:
    sig = x.sig
    size = 1 << sig.n
    cols = []
    for b in range(size):
        col = [0] * size
        for a, c in x.terms.items():
            t = sig.tau(a, b)
            if t:
                col[a ^ b] += t * c
        cols.append(col)
    return linalg.transpose(cols)


def _invert_linear(x: Multivector) -> Multivector:
    sig = x.sig
    size = 1 << sig.n
    rhs = [1] + [0] * (size - 1)
    sol = linalg.solve(left_mult_matrix(x), rhs)
    if sol is None:
        raise NotInvertible("left multiplication is singular")
    return Multivector(sig, {m: c for m, c in enumerate(sol)})


def is_invertible(x: Multivector) -> bool:
    try:
        invert(x)
    except NotInvertible:
        return False
    return True


def twisted_adjoint(x: Multivector, v: Multivector, x_inv: Multivector | None = None) -> Multivector:
    """x^star v x^-1."""
    if x_inv is None:
        x_inv = invert(x)
    return x.star() * v * x_inv


def adjoint_matrix(x: Multivector) -> list[list]:
    """Matrix of the twisted adjoint action on V (column j is the image of e_j)."""
    sig = x.sig
    x_inv = invert(x)
    cols = [twisted_adjoint(x, e, x_inv) for e in sig.generators()]
    return [[c.coef(1 << i) for c in cols] for i in range(sig.n)]


def _is_vector(y: Multivector, tol: float) -> bool:
    if y.is_exact:
        return y.grades() <= {1}
    rest = sum(float(c) ** 2 for m, c in y.terms.items() if grade_of(m) != 1)
    return math.sqrt(rest) <= tol * max(1.0, y.coef_norm())


def _is_unit_scalar(y: Multivector, target, tol: float) -> bool:
    if y.is_exact:
        return y == target
    return y.isclose(y.sig.scalar(target), rtol=tol)


def classify_versor(x: Multivector, tol: float = 1e-9) -> VersorClass:
    sig = x.sig
    if sig.is_degenerate:
        raise DegenerateSignature("versor classes need a nondegenerate signature")
    try:
        x_inv = invert(x)
    except NotInvertible:
        return VersorClass(False, False, False, False, False)
    lipschitz = all(_is_vector(twisted_adjoint(x, e, x_inv), tol) for e in sig.generators())
    xxd = x * x.dagger()
    pin = lipschitz and (_is_unit_scalar(xxd, 1, tol) or _is_unit_scalar(xxd, -1, tol))
    even = x.is_even() if x.is_exact else _is_even_approx(x, tol)
    spin = pin and even
    rotor = spin and _is_unit_scalar(xxd, 1, tol)
    return VersorClass(True, lipschitz, pin, spin, rotor)


def _is_even_approx(x: Multivector, tol: float) -> bool:
    odd = x.odd().coef_norm()
    return odd <= tol * max(1.0, x.coef_norm())


@dataclass(frozen=True)
class VersorSynthesis:
    versor: Multivector
    reflections: tuple[Multivector, ...]
    norm: object


def gram_matrix(sig: Signature) -> list[list]:
    return [[sig.squares[i] if i == j else 0 for j in range(sig.n)] for i in range(sig.n)]


def _reflect_vec(w: Sequence, v: Sequence, sig: Signature) -> list:
    """Image of v under reflection in the hyperplane orthogonal to w."""
    k = div(2 * sig.inner(v, w), sig.inner(w, w))
    return [a - k * b for a, b in zip(v, w)]


def _normalized(v: Multivector, q):
    if is_exact(q):
        r = exact_sqrt(abs(q))
        if r is None:
            return v
        return v / r
    return v.scale(1.0 / math.sqrt(abs(q)))


def rotor_from_orthogonal(matrix: Sequence[Sequence], sig: Signature, tol: float = 1e-9) -> VersorSynthesis:
    """Versor x with x^star v x^-1 = R v for every vector v.

    Works column by column: the current map M is composed with reflections
    until M e_i = e_i.  With w = M e_i - e_i non-null one reflection in w
    suffices; otherwise reflect in u = M e_i + e_i (sending M e_i to -e_i)
    and then in e_i itself.  Reflection vectors multiply in creation order.
    """
    n = sig.n
    if sig.is_degenerate:
        raise DegenerateSignature("orthogonal group of a degenerate form is not covered")
    m = [list(row) for row in matrix]
    if len(m) != n or any(len(r) != n for r in m):
        raise ValueError(f"need an {n}x{n} matrix")
    exact = linalg.all_exact(m)
    g = gram_matrix(sig)
    check = linalg.matmul(linalg.matmul(linalg.transpose(m), g), m)
    if exact:
        if check != g:
            raise NotOrthogonal("R^T G R differs from G")
    elif max(abs(check[i][j] - g[i][j]) for i in range(n) for j in range(n)) > tol * 10:
        raise NotOrthogonal("R^T G R differs from G")

    cols = [[m[i][j] for i in range(n)] for j in range(n)]  # images of e_j
    reflections: list[Sequence] = []

    def apply_all(w):
        for j in range(n):
            cols[j] = _reflect_vec(w, cols[j], sig)
        reflections.append(w)

    for i in range(n):
        e = [1 if k == i else 0 for k in range(n)]
        img = cols[i]
        w = [a - b for a, b in zip(img, e)]
        if _is_null(w, sig, exact, tol, zero_vector=True):
            continue  # already fixed
        if not _is_null(w, sig, exact, tol):
            apply_all(w)
        else:
            u = [a + b for a, b in zip(img, e)]
            apply_all(u)
            apply_all(e)

    vectors = []
    total_norm = 1
    for w in reflections:
        v = sig.vector(w)
        q = sig.inner(w, w)
        v = _normalized(v, q)
        vectors.append(v)
        total_norm = total_norm * sig.inner(v.vector_coords(), v.vector_coords())
    versor = sig.scalar(1)
    for v in vectors:
        versor = versor * v
    if not exact:
        versor = versor.to_float()
    return VersorSynthesis(versor, tuple(vectors), total_norm)


def _is_null(w: Sequence, sig: Signature, exact: bool, tol: float, zero_vector: bool = False) -> bool:
    if zero_vector:
        if exact:
            return all(c == 0 for c in w)
        return math.sqrt(sum(float(c) ** 2 for c in w)) <= tol
    q = sig.inner(w, w)
    if exact:
        return q == 0
    return abs(q) <= tol * max(1.0, sum(float(c) ** 2 for c in w))

"""Outermorphisms: linear maps on V extended to the whole algebra.

Only the n x n matrix of the map on V is stored (column j holds the
coordinates of f(e_j)); images of basis blades are wedges of columns,
computed on demand and memoized.
"""

from __future__ import annotations

from typing import Callable, Sequence

from . import linalg
from .algebra import Multivector, Signature, _check_same, left_inner, pseudoscalar_inverse, right_inner
from .blades import wedge
from .errors import DegenerateSignature, SignatureMismatch, SingularMap
from .scalars import div


class Outermorphism:
    def __init__(self, sig: Signature, matrix: Sequence[Sequence]):
        matrix = tuple(tuple(row) for row in matrix)
        if len(matrix) != sig.n or any(len(row) != sig.n for row in matrix):
            raise ValueError(f"need an {sig.n}x{sig.n} matrix")
        self.sig = sig
        self.matrix = matrix
        self._images: dict[int, Multivector] = {0: sig.scalar(1)}
        self._det = None

    @classmethod
    def identity(cls, sig: Signature) -> "Outermorphism":
        return cls(sig, linalg.identity(sig.n))

    def column(self, j: int) -> Multivector:
        return self.sig.vector([row[j] for row in self.matrix])

    def image(self, mask: int) -> Multivector:
        img = self._images.get(mask)
        if img is None:
            idx = [i for i in range(self.sig.n) if mask >> i & 1]
            img = wedge([self.column(i) for i in idx], self.sig)
            self._images[mask] = img
        return img

    def apply(self, x: Multivector) -> Multivector:
        if x.sig != self.sig:
            raise SignatureMismatch(f"{x.sig} vs {self.sig}")
        out: dict = {}
        for mask, c in x.terms.items():
            for m, d in self.image(mask).terms.items():
                out[m] = out.get(m, 0) + c * d
        return Multivector(self.sig, out)

    __call__ = apply

    def compose(self, other: "Outermorphism") -> "Outermorphism":
        """self after other."""
        if other.sig != self.sig:
            raise SignatureMismatch(f"{other.sig} vs {self.sig}")
        return Outermorphism(self.sig, linalg.matmul(self.matrix, other.matrix))

    __matmul__ = compose

    def determinant(self):
        if self._det is None:
            if self.sig.is_degenerate:
                raise DegenerateSignature("determinant uses the inverse pseudoscalar")
            top = self.image(self.sig.pseudoscalar_mask)
            self._det = (top * pseudoscalar_inverse(self.sig)).scalar_part
        return self._det

    def adjoint(self) -> "Outermorphism":
        """Metric transpose G^-1 M^T G, so F*(x) * y = x * F(y)."""
        if self.sig.is_degenerate:
            raise DegenerateSignature("adjoint needs a nondegenerate scalar product")
        q = self.sig.squares
        n = self.sig.n
        m = self.matrix
        adj = [[div(m[j][i] * q[j], q[i]) for j in range(n)] for i in range(n)]
        return Outermorphism(self.sig, adj)

    def inverse(self) -> "Outermorphism":
        """(det f)^-1 times the dual of the adjoint, restricted to V."""
        d = self.determinant()
        if d == 0:
            raise SingularMap("map has zero determinant")
        dual_adj = dual_map(self.adjoint())
        cols = [dual_adj(self.sig.generator(j)).grade(1) for j in range(self.sig.n)]
        matrix = [[div(c.coef(1 << i), d) for c in cols] for i in range(self.sig.n)]
        return Outermorphism(self.sig, matrix)

    def __eq__(self, other):
        if not isinstance(other, Outermorphism):
            return NotImplemented
        return self.sig == other.sig and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.sig, self.matrix))

    def __repr__(self):
        return f"Outermorphism({self.sig}, {self.matrix})"


class GradedMap:
    """A plain linear map on the algebra, used for dual maps."""

    def __init__(self, sig: Signature, fn: Callable[[Multivector], Multivector]):
        self.sig = sig
        self.fn = fn

    def __call__(self, x: Multivector) -> Multivector:
        return self.fn(x)

    def compose(self, other) -> "GradedMap":
        return GradedMap(self.sig, lambda x: self(other(x)))

    __matmul__ = compose


def dual_map(f) -> GradedMap:
    """x -> F(x I) I^-1."""
    sig = f.sig
    big_i = sig.pseudoscalar()
    i_inv = pseudoscalar_inverse(sig)
    return GradedMap(sig, lambda x: f(x * big_i) * i_inv)


def determinant(f: Outermorphism):
    return f.determinant()


def adjoint(f: Outermorphism) -> Outermorphism:
    return f.adjoint()


def inverse(f: Outermorphism) -> Outermorphism:
    return f.inverse()


def _equal(x: Multivector, y: Multivector) -> bool:
    if x.is_exact and y.is_exact:
        return x == y
    return x.isclose(y)


def hestenes_check(f: Outermorphism, x: Multivector, y: Multivector) -> bool:
    """Both contraction identities relating F and its adjoint."""
    _check_same(x, y)
    fa = f.adjoint()
    left = _equal(left_inner(x, f(y)), f(left_inner(fa(x), y)))
    right = _equal(right_inner(f(x), y), f(right_inner(x, fa(y))))
    return left and right

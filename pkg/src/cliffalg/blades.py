"""Blade detection and factorization, reciprocal bases, subspace relations.

A homogeneous k-vector ``x`` is a blade exactly when its annihilator
``{v in V : v ^ x = 0}`` has dimension k; a basis of the annihilator then
factors ``x`` up to a scalar.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from typing import Sequence

from . import linalg
from .algebra import Multivector, Signature, outer, scalar_product
from .errors import (
    DegenerateSignature,
    DependentBasis,
    NonHomogeneous,
    NotABlade,
    NullBlade,
    ZeroBlade,
)
from .scalars import FLOAT_RTOL, div


@dataclass(frozen=True)
class BladeFactorization:
    vectors: tuple[Multivector, ...]
    scale: object
    grade: int

    def rebuild(self, sig: Signature) -> Multivector:
        return wedge(self.vectors, sig).scale(self.scale)


@dataclass(frozen=True)
class ReciprocalBasis:
    base: tuple[Multivector, ...]
    recip: tuple[Multivector, ...]

    def blade(self, indices: Sequence[int]) -> Multivector:
        """e_{i1} ^ ... ^ e_{ik} for ascending 0-based indices."""
        return wedge([self.base[i] for i in indices], self.base[0].sig)

    def recip_blade(self, indices: Sequence[int]) -> Multivector:
        """e^{ik} ^ ... ^ e^{i1} (reversed order)."""
        return wedge([self.recip[i] for i in reversed(indices)], self.base[0].sig)

    def coordinates(self, x: Multivector) -> dict[tuple[int, ...], object]:
        """Coefficients x * e^I for every multi-index I."""
        n = len(self.base)
        out = {}
        for k in range(n + 1):
            for idx in combinations(range(n), k):
                out[idx] = scalar_product(x, self.recip_blade(idx)).scalar_part
        return out

    def expand(self, coords: dict[tuple[int, ...], object]) -> Multivector:
        sig = self.base[0].sig
        total = sig.zero()
        for idx, c in coords.items():
            if c != 0:
                total = total + self.blade(idx).scale(c)
        return total


def wedge(vectors: Sequence[Multivector], sig: Signature | None = None) -> Multivector:
    if not vectors:
        if sig is None:
            raise ValueError("empty wedge needs a signature")
        return sig.scalar(1)
    return reduce(outer, vectors)


def _homogeneous_grade(x: Multivector) -> int:
    gs = x.grades()
    if len(gs) > 1:
        raise NonHomogeneous(f"mixed grades {sorted(gs)}")
    return gs.pop() if gs else 0


def _grade_masks(n: int, k: int) -> list[int]:
    return [sum(1 << i for i in c) for c in combinations(range(n), k)]


def annihilator(x: Multivector) -> list[list]:
    """Coordinate basis of {v : v ^ x = 0}."""
    sig = x.sig
    n = sig.n
    k = _homogeneous_grade(x)
    if x.is_zero():
        return linalg.identity(n)
    if k == n:
        return linalg.identity(n)
    rows_masks = _grade_masks(n, k + 1)
    cols = [outer(sig.generator(i), x) for i in range(n)]
    rows = [[c.coef(m) for c in cols] for m in rows_masks]
    return linalg.nullspace(rows, n)


def is_blade(x: Multivector) -> bool:
    k = _homogeneous_grade(x)
    if x.is_zero() or k == 0:
        return True
    return len(annihilator(x)) == k


def factor_blade(x: Multivector) -> BladeFactorization:
    sig = x.sig
    k = _homogeneous_grade(x)
    if x.is_zero():
        return BladeFactorization((), 0, 0)
    if k == 0:
        return BladeFactorization((), x.scalar_part, 0)
    basis = annihilator(x)
    if len(basis) != k:
        raise NotABlade(f"annihilator has dimension {len(basis)}, expected {k}")
    vectors = tuple(sig.vector(v) for v in basis)
    w = wedge(vectors)
    scale = div(x.coef_dot(w), w.coef_dot(w))
    return BladeFactorization(vectors, scale, k)


def _require_blade(a: Multivector) -> None:
    if not is_blade(a):
        raise NotABlade("input is not a blade")


def blade_square(a: Multivector):
    _require_blade(a)
    sq = a * a
    if not sq.is_scalar():
        # float round-off only; blades square to scalars
        sq = sq.grade(0)
    return sq.scalar_part


def blade_inverse(a: Multivector) -> Multivector:
    sq = blade_square(a)
    if sq == 0:
        raise NullBlade("blade squares to zero")
    return a / sq


def wedge_independent(vectors: Sequence[Multivector]) -> bool:
    if not vectors:
        return True
    w = wedge(vectors)
    if w.is_exact:
        return not w.is_zero()
    scale = 1.0
    for v in vectors:
        scale *= max(v.coef_norm(), 1e-300)
    return w.coef_norm() > FLOAT_RTOL * scale


def reciprocal_basis(base: Sequence[Multivector]) -> ReciprocalBasis:
    base = tuple(base)
    if not base:
        raise DependentBasis("empty basis")
    sig = base[0].sig
    if sig.is_degenerate:
        raise DegenerateSignature("reciprocal basis needs a nondegenerate signature")
    if len(base) != sig.n or any(v.grades() - {1} for v in base):
        raise DependentBasis("need n vectors")
    e = wedge(base)
    if e.is_zero() or not wedge_independent(base):
        raise DependentBasis("basis vectors are linearly dependent")
    e_inv = e / (e * e).scalar_part
    recip = []
    for i in range(len(base)):
        rest = wedge(base[:i] + base[i + 1:], sig)
        r = (rest * e_inv).grade(1)
        recip.append(-r if i % 2 else r)
    return ReciprocalBasis(base, tuple(recip))


# subspace helpers on coordinate vectors

def _span_rank(vectors: list[list]) -> int:
    return linalg.rank(vectors) if vectors else 0


def _contains(big: list[list], small: list[list]) -> bool:
    if not small:
        return True
    return _span_rank(big + small) == _span_rank(big)


def _same_span(a: list[list], b: list[list]) -> bool:
    return _contains(a, b) and _contains(b, a)


def _constraints(basis: list[list], n: int) -> list[list]:
    """Rows C with C v = 0 exactly on span(basis)."""
    if not basis:
        return linalg.identity(n)
    return linalg.nullspace(basis, n)


def _intersection(a: list[list], b: list[list], n: int) -> list[list]:
    rows = _constraints(a, n) + _constraints(b, n)
    return linalg.nullspace(rows, n) if rows else linalg.identity(n)


def _orth_complement(basis: list[list], sig: Signature) -> list[list]:
    n = sig.n
    if not basis:
        return linalg.identity(n)
    rows = [[q * x for q, x in zip(sig.squares, v)] for v in basis]
    return linalg.nullspace(rows, n)


@dataclass(frozen=True)
class SubspaceReport:
    """Checks of the blade/subspace implications; None where a premise fails."""

    span_a: list
    span_b: list
    wedge_nonzero: bool
    wedge_disjoint: bool | None
    dual_complement: bool | None
    contraction_nonzero: bool
    contraction_support: bool | None
    subset_contraction: bool | None
    orthogonal_contraction: bool | None
    meet_intersection: bool | None

    def all_hold(self) -> bool:
        checks = (
            self.wedge_disjoint,
            self.dual_complement,
            self.contraction_support,
            self.subset_contraction,
            self.orthogonal_contraction,
            self.meet_intersection,
        )
        return all(c is not False for c in checks)


def _mv_equal(x: Multivector, y: Multivector) -> bool:
    if x.is_exact and y.is_exact:
        return x == y
    return x.isclose(y)


def _mv_zero(x: Multivector) -> bool:
    if x.is_exact:
        return x.is_zero()
    return x.coef_norm() <= 1e-9


def subspace_relations(a: Multivector, b: Multivector) -> SubspaceReport:
    from .algebra import dual, left_inner, meet

    if a.is_zero() or b.is_zero():
        raise ZeroBlade("blades must be nonzero")
    _require_blade(a)
    _require_blade(b)
    sig = a.sig
    n = sig.n
    span_a = annihilator(a)
    span_b = annihilator(b)

    w = outer(a, b)
    wedge_nonzero = not _mv_zero(w)
    wedge_disjoint = None
    if wedge_nonzero:
        wedge_disjoint = _span_rank(span_a + span_b) == len(span_a) + len(span_b)

    contraction = left_inner(a, b)
    contraction_nonzero = not _mv_zero(contraction)

    nondeg = not sig.is_degenerate
    dual_complement = contraction_support = orthogonal = meet_ok = None
    a_perp = _orth_complement(span_a, sig)
    if nondeg:
        dual_complement = _same_span(annihilator(dual(a)), a_perp)
    if contraction_nonzero:
        target = _intersection(a_perp, span_b, n)
        contraction_support = _contains(target, annihilator(contraction))

    subset = None
    if _contains(span_b, span_a):
        subset = _mv_equal(contraction, a * b)

    if nondeg:
        b_perp = _orth_complement(span_b, sig)
        if _intersection(span_a, b_perp, n):
            orthogonal = not contraction_nonzero
        if _span_rank(span_a + span_b) == n:
            m = meet(a, b)
            inter = _intersection(span_a, span_b, n)
            meet_ok = not _mv_zero(m) and _same_span(annihilator(m), inter)

    return SubspaceReport(
        span_a=span_a,
        span_b=span_b,
        wedge_nonzero=wedge_nonzero,
        wedge_disjoint=wedge_disjoint,
        dual_complement=dual_complement,
        contraction_nonzero=contraction_nonzero,
        contraction_support=contraction_support,
        subset_contraction=subset,
        orthogonal_contraction=orthogonal,
        meet_intersection=meet_ok,
    )

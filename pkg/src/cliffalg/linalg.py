"""Small dense linear algebra layer.

Exact matrices (all entries ``int``/``Fraction``) go through sympy's
``DomainMatrix`` over QQ; anything containing a float goes through numpy,
with numerical rank decided by an SVD threshold.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .scalars import RANK_RTOL, is_exact

Matrix = Sequence[Sequence]


def all_exact(rows: Matrix) -> bool:
    return all(is_exact(v) for row in rows for v in row)


def _to_qq(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _from_qq(value):
    num, den = int(value.numerator), int(value.denominator)
    return num if den == 1 else Fraction(num, den)


def _dm(rows: Matrix, ncols: int | None = None) -> DomainMatrix:
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return DomainMatrix([[_to_qq(v) for v in r] for r in rows], (len(rows), ncols), QQ)


def _to_lists(m: DomainMatrix) -> list[list]:
    return [[_from_qq(v) for v in row] for row in m.to_list()]


def _svd_rank(a: np.ndarray) -> tuple[int, np.ndarray]:
    if a.size == 0:
        return 0, np.eye(a.shape[1])
    _, s, vt = np.linalg.svd(a)
    if s.size == 0 or s[0] == 0:
        return 0, vt
    r = int(np.sum(s > RANK_RTOL * s[0]))
    return r, vt


def rank(rows: Matrix, ncols: int | None = None) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    if all_exact(rows):
        return _dm(rows, ncols).rank()
    return _svd_rank(np.array(rows, dtype=float))[0]


def nullspace(rows: Matrix, ncols: int) -> list[list]:
    """Basis of {v : A v = 0} for an m x ncols matrix A."""
    rows = [list(r) for r in rows]
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    if all_exact(rows):
        ns = _dm(rows, ncols).nullspace()
        return _to_lists(ns) if ns.shape[0] else []
    a = np.array(rows, dtype=float)
    r, vt = _svd_rank(a)
    return [list(map(float, v)) for v in vt[r:]]


def det(rows: Matrix):
    rows = [list(r) for r in rows]
    if not rows:
        return 1
    if all_exact(rows):
        return _from_qq(_dm(rows).det())
    return float(np.linalg.det(np.array(rows, dtype=float)))


def solve(rows: Matrix, rhs: Sequence) -> list | None:
    """Solve A x = b for square A; None when A is singular."""
    rows = [list(r) for r in rows]
    if all_exact(rows) and all(is_exact(v) for v in rhs):
        a = _dm(rows)
        if a.rank() < a.shape[0]:
            return None
        b = _dm([[v] for v in rhs], 1)
        return [row[0] for row in _to_lists(a.lu_solve(b))]
    a = np.array(rows, dtype=float)
    if _svd_rank(a)[0] < a.shape[0]:
        return None
    return list(map(float, np.linalg.solve(a, np.array(rhs, dtype=float))))


def inverse(rows: Matrix) -> list[list] | None:
    rows = [list(r) for r in rows]
    if all_exact(rows):
        a = _dm(rows)
        if a.rank() < a.shape[0]:
            return None
        return _to_lists(a.inv())
    a = np.array(rows, dtype=float)
    if _svd_rank(a)[0] < a.shape[0]:
        return None
    return np.linalg.inv(a).tolist()


def matmul(a: Matrix, b: Matrix) -> list[list]:
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def transpose(a: Matrix) -> list[list]:
    return [list(c) for c in zip(*a)]


def identity(n: int) -> list[list]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]

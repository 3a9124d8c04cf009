"""Matrix-algebra classification, explicit representations, vector fields on spheres.

Real algebras are classified from four base cases with the tensor steps

    G(n+2, 0) = G(0, n) (x) R[2]
    G(0, n+2) = G(n, 0) (x) H
    G(s+1, t+1) = G(s, t) (x) R[2]

and the ring rules C(x)C = C+C, C(x)H = C[2], H(x)H = R[4].  Representation
counts and dimensions are read off the descriptor: a double algebra has two
inequivalent irreducibles, and an irreducible of K[N] has real dimension
dim(K)*N.  This holds for mixed signatures too, so no second table is kept.

Explicit generators are integer matrices obtained by the same tensor steps.
The tensor step can produce a reducible representation; it is cut down to an
irreducible one with a primitive idempotent built from commuting basis blades
that square to +1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import linalg

RING_DIM = {"R": 1, "C": 2, "H": 4}


@dataclass(frozen=True)
class MatrixAlgebraDescriptor:
    ring: str
    block: int
    double: bool = False

    @property
    def real_dim(self) -> int:
        return RING_DIM[self.ring] * self.block ** 2 * (2 if self.double else 1)

    def __str__(self) -> str:
        base = self.ring if self.block == 1 else f"{self.ring}[{self.block}]"
        return f"{base}+{base}" if self.double else base

    def row(self, s: int, t: int) -> str:
        return f"{s},{t},{self.ring},{self.block},{int(self.double)}"


@dataclass(frozen=True)
class RepInfo:
    nu: int
    d: int


_RING_TENSOR = {
    ("R", "R"): ("R", 1, False),
    ("R", "C"): ("C", 1, False),
    ("R", "H"): ("H", 1, False),
    ("C", "C"): ("C", 1, True),
    ("C", "H"): ("C", 2, False),
    ("H", "H"): ("R", 4, False),
}


def tensor(a: MatrixAlgebraDescriptor, b: MatrixAlgebraDescriptor) -> MatrixAlgebraDescriptor:
    if a.double and b.double:
        raise ValueError("tensor of two double algebras is not a single descriptor")
    key = tuple(sorted((a.ring, b.ring), key="RCH".index))
    ring, extra, dbl = _RING_TENSOR[key]
    return MatrixAlgebraDescriptor(ring, a.block * b.block * extra, a.double or b.double or dbl)


def _mat(ring: str, block: int = 1, double: bool = False) -> MatrixAlgebraDescriptor:
    return MatrixAlgebraDescriptor(ring, block, double)


_BASE = {
    ("pos", 0): _mat("R"),
    ("pos", 1): _mat("R", 1, True),
    ("pos", 2): _mat("R", 2),
    ("neg", 0): _mat("R"),
    ("neg", 1): _mat("C"),
    ("neg", 2): _mat("H"),
}


@lru_cache(maxsize=None)
def _pure(kind: str, n: int, periodic: bool = True) -> MatrixAlgebraDescriptor:
    """G(n,0) for kind 'pos', G(0,n) for kind 'neg'."""
    if (kind, n) in _BASE:
        return _BASE[kind, n]
    if periodic and n >= 8:
        return tensor(_pure(kind, n - 8, periodic), _mat("R", 16))
    if kind == "pos":
        return tensor(_pure("neg", n - 2, periodic), _mat("R", 2))
    return tensor(_pure("pos", n - 2, periodic), _mat("H"))


def classify_real(s: int, t: int, periodic: bool = True) -> MatrixAlgebraDescriptor:
    if s < 0 or t < 0:
        raise ValueError("s and t must be non-negative")
    m = min(s, t)
    base = _pure("pos", s - m, periodic) if s >= t else _pure("neg", t - m, periodic)
    return tensor(base, _mat("R", 2 ** m)) if m else base


def classify_complex(n: int) -> MatrixAlgebraDescriptor:
    if n < 0:
        raise ValueError("n must be non-negative")
    return _mat("C", 2 ** (n // 2), bool(n % 2))


def rep_info(s: int, t: int) -> RepInfo:
    """Count and real dimension of the irreducible representations of G(s,t).

    For s*t = 0 the value is taken at n mod 8 and scaled by 16 per period.
    """
    if s * t == 0:
        n = s + t
        k, m = divmod(n, 8)
        base = _rep_from_descriptor(classify_real(m, 0) if s else classify_real(0, m))
        return RepInfo(base.nu, base.d * 16 ** k)
    return _rep_from_descriptor(classify_real(s, t))


def _rep_from_descriptor(desc: MatrixAlgebraDescriptor) -> RepInfo:
    return RepInfo(2 if desc.double else 1, RING_DIM[desc.ring] * desc.block)


def table2_text(size: int = 8, width: int = 14) -> str:
    """Aligned grid; rows t = size..0, columns s = 0..size."""
    lines = ["t\\s".ljust(5) + "".join(str(s).ljust(width) for s in range(size + 1))]
    for t in range(size, -1, -1):
        cells = "".join(str(classify_real(s, t)).ljust(width) for s in range(size + 1))
        lines.append((str(t).ljust(5) + cells).rstrip())
    return "\n".join(ln.rstrip() for ln in lines) + "\n"


def table2_rows(size: int = 8) -> str:
    out = ["s,t,ring,block,double"]
    for s in range(size + 1):
        for t in range(size + 1):
            out.append(classify_real(s, t).row(s, t))
    return "\n".join(out) + "\n"


def table3_text(size: int = 8) -> str:
    head = f"{'n':<4}{'G(R^{n,0})':<14}{'nu':<4}{'d':<6}{'G(R^{0,n})':<14}{'nu':<4}{'d'}"
    lines = [head]
    for n in range(size + 1):
        a, ra = classify_real(n, 0), rep_info(n, 0)
        b, rb = classify_real(0, n), rep_info(0, n)
        lines.append(
            f"{n:<4}{str(a):<14}{ra.nu:<4}{ra.d:<6}{str(b):<14}{rb.nu:<4}{rb.d}".rstrip()
        )
    return "\n".join(lines) + "\n"


def table3_rows(size: int = 8) -> str:
    out = ["n,kind,ring,block,double,nu,d"]
    for n in range(size + 1):
        for kind, (s, t) in (("euclidean", (n, 0)), ("anti_euclidean", (0, n))):
            desc, r = classify_real(s, t), rep_info(s, t)
            out.append(f"{n},{kind},{desc.ring},{desc.block},{int(desc.double)},{r.nu},{r.d}")
    return "\n".join(out) + "\n"


# explicit generators

@dataclass(frozen=True)
class GeneratorSet:
    kind: str
    n: int
    mats: tuple = field(repr=False)

    @property
    def dim(self) -> int:
        return self.mats[0].shape[0] if self.mats else 1

    @property
    def square_sign(self) -> int:
        return 1 if self.kind == "euclidean" else -1

    def check(self) -> bool:
        eye = np.eye(self.dim, dtype=np.int64)
        for i, a in enumerate(self.mats):
            if not np.array_equal(a @ a, self.square_sign * eye):
                return False
            for b in self.mats[i + 1:]:
                if (a @ b + b @ a).any():
                    return False
        return True

    def blade(self, mask: int) -> np.ndarray:
        out = np.eye(self.dim, dtype=np.int64)
        for i in range(self.n):
            if mask >> i & 1:
                out = out @ self.mats[i]
        return out


_J2 = np.array([[0, -1], [1, 0]], dtype=np.int64)
_E1 = np.array([[1, 0], [0, -1]], dtype=np.int64)
_E2 = np.array([[0, 1], [1, 0]], dtype=np.int64)


def _quat_left(q: int) -> np.ndarray:
    """Left multiplication by i (q=1) or j (q=2) on H = R^4 with basis 1,i,j,k."""
    # products of basis units: table[a][b] = (sign, index) for unit_a * unit_b
    table = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ]
    m = np.zeros((4, 4), dtype=np.int64)
    for b in range(4):
        sign, idx = table[q][b]
        m[idx, b] = sign
    return m


_LI = _quat_left(1)
_LJ = _quat_left(2)
_LK = _LI @ _LJ


def _naive(kind: str, n: int) -> list[np.ndarray]:
    if kind == "anti_euclidean":
        if n == 0:
            return []
        if n == 1:
            return [_J2.copy()]
        inner = build_generators("euclidean", n - 2)
        eye = np.eye(inner.dim, dtype=np.int64)
        return [np.kron(m, _LK) for m in inner.mats] + [np.kron(eye, _LI), np.kron(eye, _LJ)]
    if n == 0:
        return []
    if n == 1:
        return [np.ones((1, 1), dtype=np.int64)]
    inner = build_generators("anti_euclidean", n - 2)
    eye = np.eye(inner.dim, dtype=np.int64)
    e12 = _E1 @ _E2
    return [np.kron(m, e12) for m in inner.mats] + [np.kron(eye, _E1), np.kron(eye, _E2)]


def _all_blades(mats: Sequence[np.ndarray], dim: int) -> list[np.ndarray]:
    out = [np.eye(dim, dtype=np.int64)]
    for m in mats:
        out = out + [b @ m for b in out]
    return out


def _orbit_basis(blades: list[np.ndarray], u: np.ndarray):
    seen: dict[bytes, np.ndarray] = {}
    for b in blades:
        v = b @ u
        nz = np.flatnonzero(v)
        if nz.size == 0:
            continue
        if v[nz[0]] < 0:
            v = -v
        seen.setdefault(v.tobytes(), v)
    return list(seen.values())


def _restrict(mats: Sequence[np.ndarray], basis: list[np.ndarray]) -> list[np.ndarray]:
    """Matrices of the generators in the given orbit basis (signed permutations)."""
    index = {v.tobytes(): i for i, v in enumerate(basis)}
    d = len(basis)
    out = []
    for m in mats:
        r = np.zeros((d, d), dtype=np.int64)
        for j, v in enumerate(basis):
            w = m @ v
            k = index.get(w.tobytes())
            if k is not None:
                r[k, j] = 1
                continue
            k = index.get((-w).tobytes())
            if k is None:
                raise ArithmeticError("orbit basis is not closed")
            r[k, j] = -1
        out.append(r)
    return out


def _reduce(mats: list[np.ndarray], target: int) -> list[np.ndarray]:
    dim = mats[0].shape[0] if mats else 1
    if dim == target:
        return mats
    blades = _all_blades(mats, dim)
    eye = blades[0]
    proj = eye.copy()
    chosen: list[np.ndarray] = []
    for t in blades[1:]:
        if not np.array_equal(t @ t, eye):
            continue
        if any((t @ c - c @ t).any() for c in chosen):
            continue
        candidate = proj @ (eye + t)
        if not candidate.any():
            continue
        if np.linalg.matrix_rank(candidate) == np.linalg.matrix_rank(proj):
            continue
        proj = candidate
        chosen.append(t)
        col = proj[:, np.flatnonzero(proj.any(axis=0))[0]]
        col = col // np.gcd.reduce(np.abs(col[col != 0]))
        basis = _orbit_basis(blades, col)
        if len(basis) == target and np.linalg.matrix_rank(np.array(basis)) == target:
            return _restrict(mats, basis)
    raise ArithmeticError(f"could not reduce a {dim}-dimensional representation to {target}")


@lru_cache(maxsize=None)
def build_generators(kind: str, n: int) -> GeneratorSet:
    """Irreducible real representation of G(R^{n,0}) or G(R^{0,n}) by integer matrices."""
    if kind not in ("euclidean", "anti_euclidean"):
        raise ValueError(f"unknown kind {kind!r}")
    if n < 0:
        raise ValueError("n must be non-negative")
    target = rep_info(n, 0).d if kind == "euclidean" else rep_info(0, n).d
    mats = _reduce(_naive(kind, n), target)
    for m in mats:
        m.setflags(write=False)
    return GeneratorSet(kind, n, tuple(mats))


def hurwitz_admissible(n: int) -> bool:
    if n < 1:
        raise ValueError("n must be at least 1")
    return n % rep_info(0, n - 1).d == 0


def radon_hurwitz(n_plus_1: int) -> int:
    """8a + 2^b - 1 where n_plus_1 = odd * 2^(4a+b), 0 <= b < 4."""
    if n_plus_1 < 1:
        raise ValueError("argument must be positive")
    e = (n_plus_1 & -n_plus_1).bit_length() - 1
    a, b = divmod(e, 4)
    return 8 * a + 2 ** b - 1


def field_count_from_reps(N: int) -> int:
    """Largest n with d_{0,n} dividing N+1."""
    best = 0
    n = 1
    while rep_info(0, n).d <= N + 1:
        if (N + 1) % rep_info(0, n).d == 0:
            best = n
        n += 1
    return best


@dataclass(frozen=True)
class SphereFields:
    N: int
    count: int
    mats: tuple = field(repr=False)
    exact_frame: bool = True

    def evaluate(self, x: Sequence) -> list[list]:
        """V_i(x) = rho(e_i) x for i = 1..count."""
        if len(x) != self.N + 1:
            raise ValueError(f"point must have {self.N + 1} coordinates")
        out = []
        for m in self.mats:
            rows = m.tolist()
            out.append([sum(c * v for c, v in zip(row, x) if c) for row in rows])
        return out


def _orthonormal_frame(mats: list[np.ndarray]) -> tuple[list, bool]:
    """Change basis so the averaged inner product becomes the standard one."""
    dim = mats[0].shape[0]
    blades = _all_blades(mats, dim)
    gram = sum(b.T @ b for b in blades)
    c = gram[0, 0]
    if np.array_equal(gram, c * np.eye(dim, dtype=np.int64)):
        return mats, True
    low = np.linalg.cholesky(gram.astype(float))
    lt = low.T
    lt_inv = np.linalg.inv(lt)
    return [lt @ m @ lt_inv for m in mats], False


def sphere_fields(N: int) -> SphereFields:
    if N < 0:
        raise ValueError("N must be non-negative")
    count = radon_hurwitz(N + 1)
    if count == 0:
        return SphereFields(N, 0, ())
    gens = build_generators("anti_euclidean", count)
    d = gens.dim
    if (N + 1) % d:
        raise ArithmeticError(f"d = {d} does not divide {N + 1}")
    mats, exact = _orthonormal_frame(list(gens.mats))
    blocks = (N + 1) // d
    big = [np.kron(np.eye(blocks, dtype=m.dtype), m) for m in mats]
    return SphereFields(N, count, tuple(big), exact)


def rational_sphere_point(params: Sequence[Fraction]) -> list[Fraction]:
    """Exact point on the unit sphere S^N from N rational parameters."""
    s = sum(Fraction(p) ** 2 for p in params)
    den = s + 1
    return [2 * Fraction(p) / den for p in params] + [(s - 1) / den]


def fields_certificate(fields: SphereFields, x: Sequence) -> tuple[bool, bool]:
    """(all tangent, independent together with x) at the point x."""
    vs = fields.evaluate(x)
    tangent = all(sum(a * b for a, b in zip(v, x)) == 0 for v in vs)
    independent = linalg.rank(vs + [list(x)]) == len(vs) + 1
    return tangent, independent

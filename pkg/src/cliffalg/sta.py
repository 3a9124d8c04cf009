"""Spacetime algebra toolkit (signature 1,3; float coefficients).

Generators: g0 squares to +1, g1..g3 to -1 (in the text format they are
e1..e4).  Relative vectors are the bivectors g_i g0, and I = g0 g1 g2 g3
squares to -1.  The derivative is nabla = g^mu d_mu with g^0 = g0 and
g^i = -g_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import Multivector, Signature, exp
from .errors import GridShapeMismatch

STA = Signature.from_stu(1, 3, labels=("g0", "g1", "g2", "g3"))
PAULI = Signature.from_stu(3)

# Every tolerance used by this module.
TOL_GRADE = 1e-9
TOL_NULL = 1e-10

EVEN_MASKS = (0b0000, 0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100, 0b1111)


def gamma(mu: int) -> Multivector:
    return STA.generator(mu)


def gamma_up(mu: int) -> Multivector:
    g = STA.generator(mu)
    return g if mu == 0 else -g


def rel(i: int) -> Multivector:
    """Relative vector e_i = g_i g0, i in 1..3."""
    return (gamma(i) * gamma(0)).to_float()


I4 = STA.pseudoscalar()


@dataclass(frozen=True)
class StaSpinor:
    psi: Multivector

    def __post_init__(self):
        if self.psi.sig != STA:
            raise ValueError("spinor must live in the spacetime algebra")
        if not self.psi.is_even():
            raise ValueError("spinor must be even")

    @classmethod
    def from_components(cls, comps: Sequence[float]) -> "StaSpinor":
        if len(comps) != 8:
            raise ValueError("need 8 components")
        return cls(Multivector(STA, {m: float(c) for m, c in zip(EVEN_MASKS, comps)}))

    def components(self) -> list[float]:
        return [float(self.psi.coef(m)) for m in EVEN_MASKS]


@dataclass(frozen=True)
class Observables:
    alpha: float
    beta: float
    J: Multivector
    S: Multivector
    K: Multivector


def _graded(x: Multivector, k: int) -> Multivector:
    part = x.grade(k)
    rest = (x - part).coef_norm()
    if rest > TOL_GRADE * max(1.0, x.coef_norm()):
        raise ArithmeticError(f"expected a grade-{k} result, residue {rest:g}")
    return part


def observables(psi: StaSpinor | Multivector, check: bool = False) -> Observables:
    """alpha + beta I = psi psi~, J = psi g0 psi~, S = psi g1g2 psi~, K = psi g3 psi~."""
    p = psi.psi if isinstance(psi, StaSpinor) else StaSpinor(psi).psi
    p = p.to_float()
    pr = p.dagger()
    rho = p * pr
    alpha = float(rho.scalar_part)
    beta = float(rho.coef(0b1111))
    j = _graded(p * gamma(0) * pr, 1)
    s = _graded(p * gamma(1) * gamma(2) * pr, 2)
    k = _graded(p * gamma(3) * pr, 1)
    obs = Observables(alpha, beta, j, s, k)
    if check:
        res = fierz_residuals(obs)
        bad = {k: v for k, v in res.items() if v > 1e-9}
        if bad:
            raise AssertionError(f"Fierz identities violated: {bad}")
    return obs


def fierz_residuals(obs: Observables) -> dict[str, float]:
    """Relative residuals of the Fierz identities (and the null ones when rho = 0)."""
    a, b, j, s, k = obs.alpha, obs.beta, obs.J, obs.S, obs.K
    scale = max(1.0, j.coef_norm() ** 2, k.coef_norm() ** 2)
    rho2 = a * a + b * b
    out = {
        "J2": abs(float((j * j).scalar_part) - rho2) / scale,
        "K2": abs(float((k * k).scalar_part) + rho2) / scale,
        "JK": abs(float((j * k).scalar_part)) / scale,
        "JwedgeK": ((j ^ k) + (I4.scale(a) + b) * s).coef_norm() / scale,
    }
    if rho2 <= TOL_NULL * scale:
        out["S2"] = (s * s).coef_norm() / scale
        out["JS"] = (j * s).coef_norm() / scale
        out["SJ"] = (s * j).coef_norm() / scale
        out["KS"] = (k * s).coef_norm() / scale
        out["SK"] = (s * k).coef_norm() / scale
    return out


@dataclass(frozen=True)
class BivectorField:
    """F = E + I B with E, B relative vectors."""

    F: Multivector
    E: Multivector = field(init=False)
    B: Multivector = field(init=False)

    def __post_init__(self):
        f = self.F.to_float()
        if (f - f.grade(2)).coef_norm() > TOL_GRADE * max(1.0, f.coef_norm()):
            raise ValueError("field must be a bivector")
        f = f.grade(2)
        object.__setattr__(self, "F", f)
        g0 = gamma(0)
        e = (f - g0 * f * g0).scale(0.5)
        ib = f - e
        object.__setattr__(self, "E", e)
        object.__setattr__(self, "B", -(ib * I4))

    @classmethod
    def from_eb(cls, e: Sequence[float], b: Sequence[float]) -> "BivectorField":
        ev = sum((rel(i + 1).scale(float(c)) for i, c in enumerate(e)), STA.zero())
        bv = sum((rel(i + 1).scale(float(c)) for i, c in enumerate(b)), STA.zero())
        return cls(ev + I4 * bv)

    def e_coords(self) -> list[float]:
        return _rel_coords(self.E)

    def b_coords(self) -> list[float]:
        return _rel_coords(self.B)


def _rel_coords(v: Multivector) -> list[float]:
    # e_i = g_i g0 = -g0 g_i, stored on mask (1 | 1<<i) with coefficient -1
    return [-float(v.coef(1 | 1 << i)) for i in range(1, 4)]


def _from_rel(c: Sequence[float]) -> Multivector:
    return Multivector(STA, {1 | 1 << (i + 1): -float(x) for i, x in enumerate(c)})


def _unit(v: Sequence[float]) -> list[float]:
    n = math.sqrt(sum(x * x for x in v))
    return [x / n for x in v]


def _rotor_taking(u: Sequence[float], v: Sequence[float]) -> Multivector:
    """Spatial rotor R with R u R~ = v for unit relative vectors u, v."""
    uu, vv = _from_rel(u), _from_rel(v)
    dot = sum(a * b for a, b in zip(u, v))
    if dot > -1 + 1e-12:
        r = vv * uu + 1.0
        return r.scale(1.0 / math.sqrt(2.0 * (1.0 + dot)))
    # antiparallel: half turn in a plane containing u
    w = _perpendicular(u)
    return _from_rel(w) * uu


def _perpendicular(u: Sequence[float]) -> list[float]:
    i = min(range(3), key=lambda k: abs(u[k]))
    e = [1.0 if k == i else 0.0 for k in range(3)]
    d = sum(a * b for a, b in zip(e, u))
    return _unit([a - d * b for a, b in zip(e, u)])


def _cross(a: Sequence[float], b: Sequence[float]) -> list[float]:
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


g0g1 = [-1.0, 0.0, 0.0]  # g0 g1 = -e_1 in relative coordinates


def factor_bivector(field_: BivectorField | Multivector) -> StaSpinor:
    """Spinor psi with psi g0 g1 psi~ = F."""
    fld = field_ if isinstance(field_, BivectorField) else BivectorField(field_)
    f = fld.F
    size = f.coef_norm()
    if size == 0:
        return StaSpinor(STA.zero().to_float())
    sq = f * f
    c, d = float(sq.scalar_part), float(sq.coef(0b1111))
    rho = math.hypot(c, d)
    e, b = fld.e_coords(), fld.b_coords()
    e2 = sum(x * x for x in e)
    b2 = sum(x * x for x in b)
    if rho <= TOL_NULL * (e2 + b2):
        return _factor_null(e, b)
    phi = math.atan2(d, c)
    # duality rotation to F' with F'^2 = rho > 0
    f1 = (exp(I4.scale(-phi / 2)) * f)
    fld1 = BivectorField(f1)
    e1c, b1c = fld1.e_coords(), fld1.b_coords()
    emag = math.sqrt(sum(x * x for x in e1c))
    bmag = math.sqrt(sum(x * x for x in b1c))
    ax1 = _unit(e1c)
    if bmag > TOL_NULL * emag:
        proj = sum(a * x for a, x in zip(ax1, b1c))
        ax2 = _unit([x - proj * a for a, x in zip(ax1, b1c)])
    else:
        ax2 = _perpendicular(ax1)
    ax3 = _cross(ax1, ax2)
    alpha = math.atanh(min(bmag / emag, 1.0 - 1e-16))
    boost = None
    f2 = None
    for sgn in (1.0, -1.0):
        a_vec = _from_rel(ax3).scale(sgn * alpha)
        boost = exp(a_vec.scale(0.5))
        f2 = boost.dagger() * f1 * boost
        if BivectorField(f2).B.coef_norm() <= 1e-7 * size:
            break
    e2c = BivectorField(f2).e_coords()
    e2mag = math.sqrt(sum(x * x for x in e2c))
    r = _rotor_taking(g0g1, _unit(e2c))
    psi = exp(I4.scale(phi / 4)) * boost * r
    return StaSpinor(psi.scale(math.sqrt(e2mag)))


def _factor_null(e: Sequence[float], b: Sequence[float]) -> StaSpinor:
    emag = math.sqrt(sum(x * x for x in e))
    ev, bv = _from_rel(e), _from_rel(b)
    r = _rotor_taking(g0g1, _unit(e))
    psi = (1.0 - (I4 * ev * bv).scale(1.0 / emag ** 2)) * r
    return StaSpinor(psi.scale(math.sqrt(emag / 2.0)))


def spinor_image(psi: StaSpinor) -> Multivector:
    p = psi.psi
    return p * gamma(0) * gamma(1) * p.dagger()


def stress_energy(field_: BivectorField | Multivector, x: Multivector) -> Multivector:
    """T(x) = 1/2 F x F~."""
    f = field_.F if isinstance(field_, BivectorField) else field_.to_float()
    return (f * x * f.dagger()).scale(0.5).grade(1)


def dirac_hestenes_residual(
    psi: Multivector, dpsi: Sequence[Multivector], a: Multivector, m: float
) -> Multivector:
    """(g^mu d_mu psi) g1 g2 - A psi - m psi g0."""
    if len(dpsi) != 4:
        raise ValueError("need four directional derivatives")
    nabla = sum((gamma_up(mu) * dpsi[mu] for mu in range(4)), STA.zero())
    return nabla * gamma(1) * gamma(2) - a * psi - (psi * gamma(0)).scale(m)


def pauli_observable(psi: Multivector) -> Multivector:
    """s = psi e3 psi~ in the algebra of signature 3,0."""
    if psi.sig != PAULI:
        raise ValueError("expected an element of the 3,0 algebra")
    return (psi * PAULI.generator(2) * psi.dagger()).grade(1)


# dense grid helpers

def to_dense(x: Multivector) -> np.ndarray:
    out = np.zeros(16)
    for m, c in x.terms.items():
        out[m] = float(c)
    return out


def from_dense(v: Sequence[float]) -> Multivector:
    return Multivector(STA, {m: float(c) for m, c in enumerate(v)})


def _left_matrix(a: Multivector) -> np.ndarray:
    cols = [to_dense(a * STA.blade(b)) for b in range(16)]
    return np.array(cols).T


def _right_matrix(a: Multivector) -> np.ndarray:
    cols = [to_dense(STA.blade(b) * a) for b in range(16)]
    return np.array(cols).T


_GAMMA_UP_L = [_left_matrix(gamma_up(mu)) for mu in range(4)]
_G12_R = _right_matrix(gamma(1) * gamma(2))
_G0_R = _right_matrix(gamma(0))


def central_difference(grid: np.ndarray, spacing: Sequence[float], axis: int) -> np.ndarray:
    """Central difference along one spacetime axis, on interior nodes of all axes."""
    if grid.ndim != 5:
        raise GridShapeMismatch("grid must have shape (n0, n1, n2, n3, components)")
    if min(grid.shape[:4]) < 3:
        raise GridShapeMismatch("every axis needs at least 3 nodes")
    h = spacing[axis]
    sl_hi = [slice(1, -1)] * 4
    sl_lo = [slice(1, -1)] * 4
    sl_hi[axis] = slice(2, None)
    sl_lo[axis] = slice(None, -2)
    return (grid[tuple(sl_hi)] - grid[tuple(sl_lo)]) / (2.0 * h)


def interior(grid: np.ndarray) -> np.ndarray:
    return grid[1:-1, 1:-1, 1:-1, 1:-1]


def maxwell_residual(d_f: Sequence[np.ndarray], j: np.ndarray) -> np.ndarray:
    """sum_mu g^mu d_mu F - J per node (arrays of dense 16-component rows)."""
    if len(d_f) != 4:
        raise GridShapeMismatch("need four derivative grids")
    shape = j.shape
    if any(d.shape != shape for d in d_f) or shape[-1] != 16:
        raise GridShapeMismatch("derivative and source grids differ in shape")
    total = -j.astype(float)
    for mu in range(4):
        total = total + d_f[mu] @ _GAMMA_UP_L[mu].T
    return total


def maxwell_residual_grid(f_grid: np.ndarray, j_grid: np.ndarray, spacing: Sequence[float]) -> np.ndarray:
    if f_grid.shape != j_grid.shape:
        raise GridShapeMismatch("field and source grids differ in shape")
    d_f = [central_difference(f_grid, spacing, mu) for mu in range(4)]
    return maxwell_residual(d_f, interior(j_grid))


def dirac_residual_grid(
    psi_grid: np.ndarray, spacing: Sequence[float], a: Multivector, m: float
) -> np.ndarray:
    """Dirac-Hestenes residual on interior nodes of a dense spinor grid."""
    d_psi = [central_difference(psi_grid, spacing, mu) for mu in range(4)]
    nabla = sum(d @ _GAMMA_UP_L[mu].T for mu, d in enumerate(d_psi))
    psi = interior(psi_grid)
    a_left = _left_matrix(a.to_float())
    return nabla @ _G12_R.T - psi @ a_left.T - m * (psi @ _G0_R.T)


def max_norm(residual: np.ndarray) -> float:
    if residual.size == 0:
        return 0.0
    return float(np.max(np.linalg.norm(residual, axis=-1)))


@dataclass
class SpinorGrid:
    axes: list[np.ndarray]
    psi: np.ndarray  # shape (n0, n1, n2, n3, 16)

    @property
    def spacing(self) -> list[float]:
        return [float(ax[1] - ax[0]) if len(ax) > 1 else 1.0 for ax in self.axes]


def read_spinor_grid(text: str) -> SpinorGrid:
    """Lines ``x0 x1 x2 x3  c1 .. c8`` on a full regular grid."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            vals = [float(v) for v in line.split()]
            if len(vals) != 12:
                raise GridShapeMismatch(f"expected 12 numbers per line, got {len(vals)}")
            rows.append(vals)
    if not rows:
        raise GridShapeMismatch("empty grid")
    data = np.array(rows)
    axes = [np.unique(data[:, k]) for k in range(4)]
    shape = tuple(len(ax) for ax in axes)
    if int(np.prod(shape)) != len(rows):
        raise GridShapeMismatch("points do not form a full regular grid")
    for ax in axes:
        if len(ax) > 2 and not np.allclose(np.diff(ax), ax[1] - ax[0], rtol=1e-9, atol=1e-12):
            raise GridShapeMismatch("grid spacing is not uniform")
    psi = np.zeros(shape + (16,))
    for row in data:
        idx = tuple(int(np.searchsorted(axes[k], row[k])) for k in range(4))
        for mask, c in zip(EVEN_MASKS, row[4:]):
            psi[idx + (mask,)] = c
    return SpinorGrid(axes, psi)


def write_spinor_grid(grid: SpinorGrid) -> str:
    lines = []
    for idx in np.ndindex(*grid.psi.shape[:4]):
        xs = [grid.axes[k][idx[k]] for k in range(4)]
        comps = [grid.psi[idx + (m,)] for m in EVEN_MASKS]
        lines.append(" ".join(repr(float(v)) for v in xs) + "  " + " ".join(repr(float(c)) for c in comps))
    return "\n".join(lines) + "\n"


def gamma_matrices() -> list[np.ndarray]:
    """Standard 4x4 complex representation: g0 = diag(1,1,-1,-1), g_i = [[0,-s_i],[s_i,0]]."""
    sig = [
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, -1j], [1j, 0]], dtype=complex),
        np.array([[1, 0], [0, -1]], dtype=complex),
    ]
    eye = np.eye(2, dtype=complex)
    zero = np.zeros((2, 2), dtype=complex)
    g = [np.block([[eye, zero], [zero, -eye]])]
    for s in sig:
        g.append(np.block([[zero, -s], [s, zero]]))
    return g

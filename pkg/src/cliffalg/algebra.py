"""Signatures, the sign function tau, multivectors and their products.

A basis blade is a subset of the generators, stored as a bitmask (bit ``i``
set means generator ``i`` is present).  The product of two basis blades is
``tau(A, B) * (A xor B)``, and every other product is the same sum with a
set predicate deciding which blade pairs contribute.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import DegeneratePseudoscalar, ExactSeriesUnsupported, SignatureMismatch
from .scalars import FLOAT_RTOL, div, is_exact

MAX_GENERATORS = 24


def grade_of(mask: int) -> int:
    return mask.bit_count()


def reorder_sign(a: int, b: int) -> int:
    """(-1) to the number of pairs (x in A, y in B) with x > y."""
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


def mask_indices(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


@dataclass(frozen=True)
class Signature:
    """Generator squares in a fixed order.

    ``Signature.from_stu(s, t, u)`` builds the canonical form (s squares of +1,
    then t of -1, then u of 0).  Any tuple of ring values is accepted for
    generic use; labels are display names only and do not affect equality.
    """

    squares: tuple
    labels: tuple = field(default=None, compare=False)
    _neg: int = field(default=0, init=False, repr=False, compare=False)
    _null: int = field(default=0, init=False, repr=False, compare=False)
    _canonical_values: bool = field(default=True, init=False, repr=False, compare=False)
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        squares = tuple(self.squares)
        if len(squares) > MAX_GENERATORS:
            raise ValueError(f"at most {MAX_GENERATORS} generators are supported")
        object.__setattr__(self, "squares", squares)
        labels = self.labels or tuple(f"e{i + 1}" for i in range(len(squares)))
        if len(labels) != len(squares):
            raise ValueError("labels and squares differ in length")
        object.__setattr__(self, "labels", tuple(labels))
        neg = null = 0
        plain = True
        for i, q in enumerate(squares):
            if q == -1:
                neg |= 1 << i
            elif q == 0:
                null |= 1 << i
            elif q != 1:
                plain = False
        object.__setattr__(self, "_neg", neg)
        object.__setattr__(self, "_null", null)
        object.__setattr__(self, "_canonical_values", plain)

    @classmethod
    def from_stu(cls, s: int, t: int = 0, u: int = 0, labels=None) -> "Signature":
        if min(s, t, u) < 0:
            raise ValueError("signature counts must be non-negative")
        return cls((1,) * s + (-1,) * t + (0,) * u, labels)

    @classmethod
    def parse(cls, text: str) -> "Signature":
        """Parse ``"s,t,u"`` (``u`` optional)."""
        parts = [p.strip() for p in text.replace(" ", ",").split(",") if p.strip()]
        if not 1 <= len(parts) <= 3:
            raise ValueError(f"bad signature {text!r}; expected s,t,u")
        nums = [int(p) for p in parts] + [0] * (3 - len(parts))
        return cls.from_stu(*nums)

    @property
    def n(self) -> int:
        return len(self.squares)

    @property
    def stu(self) -> tuple[int, int, int]:
        s = sum(1 for q in self.squares if q == 1)
        t = sum(1 for q in self.squares if q == -1)
        u = sum(1 for q in self.squares if q == 0)
        return s, t, u

    @property
    def is_canonical(self) -> bool:
        if not self._canonical_values:
            return False
        return self.squares == Signature.from_stu(*self.stu).squares

    @property
    def is_degenerate(self) -> bool:
        return any(q == 0 for q in self.squares)

    @property
    def pseudoscalar_mask(self) -> int:
        return (1 << self.n) - 1

    def pseudoscalar_square(self):
        n = self.n
        if self._canonical_values:
            if self.is_degenerate:
                return 0
            t = self.stu[1]
            return -1 if (n * (n - 1) // 2 + t) & 1 else 1
        i = self.pseudoscalar_mask
        return self.tau(i, i)

    def tau(self, a: int, b: int):
        """Sign/contraction factor with ``AB = tau(A, B) * (A xor B)``."""
        key = (a << MAX_GENERATORS) | b
        cache = self._cache
        value = cache.get(key)
        if value is not None:
            return value
        common = a & b
        if self._canonical_values:
            if common & self._null:
                value = 0
            else:
                value = reorder_sign(a, b)
                if (common & self._neg).bit_count() & 1:
                    value = -value
        else:
            value = reorder_sign(a, b)
            for i in mask_indices(common):
                value = value * self.squares[i]
        cache[key] = value
        return value

    # constructors for elements
    def scalar(self, value) -> "Multivector":
        return Multivector(self, {0: value})

    def blade(self, mask: int, coef=1) -> "Multivector":
        if mask >> self.n:
            raise ValueError(f"blade mask {mask:#b} does not fit {self.n} generators")
        return Multivector(self, {mask: coef})

    def generator(self, i: int) -> "Multivector":
        if not 0 <= i < self.n:
            raise IndexError(f"generator index {i} out of range")
        return Multivector(self, {1 << i: 1})

    def generators(self) -> tuple["Multivector", ...]:
        return tuple(self.generator(i) for i in range(self.n))

    def vector(self, coords: Sequence) -> "Multivector":
        if len(coords) != self.n:
            raise ValueError("need one coordinate per generator")
        return Multivector(self, {1 << i: c for i, c in enumerate(coords)})

    def pseudoscalar(self) -> "Multivector":
        return Multivector(self, {self.pseudoscalar_mask: 1})

    def zero(self) -> "Multivector":
        return Multivector(self, {})

    def inner(self, u: Sequence, v: Sequence):
        """Bilinear form on coordinate vectors (the basis is orthogonal)."""
        return sum(q * a * b for q, a, b in zip(self.squares, u, v))

    def mask_label(self, mask: int) -> str:
        return "".join(self.labels[i] for i in mask_indices(mask))

    def __str__(self) -> str:
        if self._canonical_values:
            return "sig {},{},{}".format(*self.stu)
        return f"Signature({self.squares})"


def _check_same(x: "Multivector", y: "Multivector") -> Signature:
    if x.sig is not y.sig and x.sig != y.sig:
        raise SignatureMismatch(f"{x.sig} vs {y.sig}")
    return x.sig


def _is_scalar_value(v) -> bool:
    return isinstance(v, numbers.Number) and not isinstance(v, complex)


Gate = Callable[[int, int], bool]


def _gate_outer(a: int, b: int) -> bool:
    return not a & b


def _gate_left(a: int, b: int) -> bool:
    return not a & ~b


def _gate_right(a: int, b: int) -> bool:
    return not b & ~a


def _gate_scalar(a: int, b: int) -> bool:
    return a == b


class Multivector:
    """Sparse linear combination of basis blades; treat as immutable.

    Operators: ``*`` geometric product, ``^`` outer product, ``<<`` left
    contraction, ``>>`` right contraction, ``~x`` reversion.
    """

    __slots__ = ("sig", "_terms", "_hash")

    def __init__(self, sig: Signature, terms: Mapping[int, object] | None = None):
        self.sig = sig
        clean = {}
        if terms:
            for m, c in terms.items():
                if c != 0:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, sig: Signature, terms: dict) -> "Multivector":
        obj = cls.__new__(cls)
        obj.sig = sig
        obj._terms = terms
        obj._hash = None
        return obj

    @property
    def terms(self) -> Mapping[int, object]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[tuple[int, object]]:
        return iter(sorted(self._terms.items(), key=lambda kv: (grade_of(kv[0]), kv[0])))

    def coef(self, mask: int):
        return self._terms.get(mask, 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # predicates
    @property
    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self._terms.values())

    def is_zero(self) -> bool:
        return not self._terms

    def grades(self) -> set[int]:
        return {grade_of(m) for m in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    def is_scalar(self) -> bool:
        return all(m == 0 for m in self._terms)

    def is_even(self) -> bool:
        return all(grade_of(m) % 2 == 0 for m in self._terms)

    @property
    def scalar_part(self):
        return self._terms.get(0, 0)

    def vector_coords(self) -> list:
        return [self._terms.get(1 << i, 0) for i in range(self.sig.n)]

    # coefficient maps
    def map_coefs(self, fn: Callable) -> "Multivector":
        return Multivector(self.sig, {m: fn(c) for m, c in self._terms.items()})

    def to_float(self) -> "Multivector":
        return Multivector(self.sig, {m: float(c) for m, c in self._terms.items()})

    def to_exact(self) -> "Multivector":
        return Multivector(self.sig, {m: _exact(c) for m, c in self._terms.items()})

    def chop(self, tol: float = 1e-12) -> "Multivector":
        return Multivector(self.sig, {m: c for m, c in self._terms.items() if abs(c) > tol})

    def coef_norm(self) -> float:
        """Euclidean norm of the coefficient vector."""
        return math.sqrt(sum(float(c) ** 2 for c in self._terms.values()))

    def coef_norm1(self) -> float:
        return sum(abs(float(c)) for c in self._terms.values())

    def coef_dot(self, other: "Multivector"):
        _check_same(self, other)
        return sum(c * other._terms.get(m, 0) for m, c in self._terms.items())

    def isclose(self, other, rtol: float = FLOAT_RTOL, atol: float = 0.0) -> bool:
        """Coefficient-wise closeness, scaled by the larger coefficient norm."""
        other = self._lift(other)
        diff = (self - other).coef_norm()
        scale = max(self.coef_norm(), other.coef_norm(), 1.0)
        return diff <= atol + rtol * scale

    # arithmetic
    def _lift(self, other) -> "Multivector":
        if isinstance(other, Multivector):
            _check_same(self, other)
            return other
        if _is_scalar_value(other):
            return Multivector(self.sig, {0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
        return Multivector._raw(self.sig, out)

    __radd__ = __add__

    def __neg__(self):
        return Multivector._raw(self.sig, {m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, k) -> "Multivector":
        if k == 0:
            return Multivector._raw(self.sig, {})
        return Multivector(self.sig, {m: k * c for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if _is_scalar_value(other):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if _is_scalar_value(other):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if _is_scalar_value(other):
            if other == 0:
                raise ZeroDivisionError("division of a multivector by zero")
            return Multivector(self.sig, {m: div(c, other) for m, c in self._terms.items()})
        if isinstance(other, Multivector):
            if other.is_scalar() and other.scalar_part != 0:
                return self / other.scalar_part
            from .norms import invert

            return self * invert(other)
        return NotImplemented

    def __rtruediv__(self, other):
        if _is_scalar_value(other):
            from .norms import invert

            return invert(self).scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            from .norms import invert

            return invert(self) ** (-k)
        result = self.sig.scalar(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __xor__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return outer(self, other)

    def __rxor__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return outer(other, self)

    def __lshift__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return left_inner(self, other)

    def __rshift__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return right_inner(self, other)

    def __invert__(self):
        return self.dagger()

    def __eq__(self, other):
        if isinstance(other, Multivector):
            if self.sig != other.sig:
                return False
            return self._terms == other._terms
        if _is_scalar_value(other):
            if other == 0:
                return not self._terms
            return self._terms == {0: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.sig.squares, frozenset(self._terms.items())))
        return self._hash

    # grades and involutions
    def grade(self, k: int) -> "Multivector":
        return grade_project(self, k)

    def grades_project(self, ks: Iterable[int]) -> "Multivector":
        ks = set(ks)
        return Multivector._raw(self.sig, {m: c for m, c in self._terms.items() if grade_of(m) in ks})

    def even(self) -> "Multivector":
        return Multivector._raw(self.sig, {m: c for m, c in self._terms.items() if not grade_of(m) & 1})

    def odd(self) -> "Multivector":
        return Multivector._raw(self.sig, {m: c for m, c in self._terms.items() if grade_of(m) & 1})

    def star(self) -> "Multivector":
        return involution("star", self)

    def dagger(self) -> "Multivector":
        return involution("dagger", self)

    def box(self) -> "Multivector":
        return involution("box", self)

    def bracket(self, *grades: int) -> "Multivector":
        return involution("bracket", self, grades)

    def dual(self) -> "Multivector":
        return dual(self)

    def inverse(self) -> "Multivector":
        from .norms import invert

        return invert(self)

    def __repr__(self) -> str:
        from .textfmt import format_multivector

        return f"Multivector({format_multivector(self)!r})"

    def __str__(self) -> str:
        from .textfmt import format_multivector

        return format_multivector(self)


def _exact(c):
    if is_exact(c):
        return c
    f = Fraction(float(c))
    return f.numerator if f.denominator == 1 else f


def _bilinear(x: Multivector, y: Multivector, gate: Gate | None) -> Multivector:
    sig = _check_same(x, y)
    tau = sig.tau
    out: dict = {}
    get = out.get
    for a, ca in x._terms.items():
        for b, cb in y._terms.items():
            if gate is not None and not gate(a, b):
                continue
            t = tau(a, b)
            if t == 0:
                continue
            m = a ^ b
            out[m] = get(m, 0) + (ca * cb if t == 1 else t * ca * cb)
    return Multivector(sig, out)


def tau(a: int, b: int, sig: Signature):
    return sig.tau(a, b)


def geometric_product(x: Multivector, y: Multivector) -> Multivector:
    return _bilinear(x, y, None)


def outer(x: Multivector, y: Multivector) -> Multivector:
    return _bilinear(x, y, _gate_outer)


def left_inner(x: Multivector, y: Multivector) -> Multivector:
    """Left contraction: blade pairs with A a subset of B."""
    return _bilinear(x, y, _gate_left)


def right_inner(x: Multivector, y: Multivector) -> Multivector:
    """Right contraction: blade pairs with A a superset of B."""
    return _bilinear(x, y, _gate_right)


def scalar_product(x: Multivector, y: Multivector) -> Multivector:
    return _bilinear(x, y, _gate_scalar)


def grade_project(x: Multivector, k: int) -> Multivector:
    if not 0 <= k <= x.sig.n:
        raise ValueError(f"grade {k} outside 0..{x.sig.n}")
    return Multivector._raw(x.sig, {m: c for m, c in x._terms.items() if grade_of(m) == k})


INVOLUTIONS = ("star", "dagger", "box", "bracket")


def involution_sign(kind: str, k: int, grades: Iterable[int] = ()) -> int:
    """Sign picked up by a grade-k blade under an involution."""
    if kind == "star":
        return -1 if k & 1 else 1
    if kind == "dagger":
        return -1 if (k * (k - 1) // 2) & 1 else 1
    if kind == "box":
        return -1 if (k * (k + 1) // 2) & 1 else 1
    if kind == "bracket":
        grades = tuple(grades)
        if grades:
            return -1 if k in grades else 1
        return -1 if k > 0 else 1
    raise ValueError(f"unknown involution {kind!r}")


def involution(kind: str, x: Multivector, grades: Iterable[int] = ()) -> Multivector:
    """Apply ``star``, ``dagger``, ``box`` or ``bracket`` (optionally on given grades)."""
    grades = tuple(grades)
    signs = [involution_sign(kind, k, grades) for k in range(x.sig.n + 1)]
    return Multivector._raw(
        x.sig, {m: (c if signs[grade_of(m)] == 1 else -c) for m, c in x._terms.items()}
    )


def pseudoscalar_inverse(sig: Signature) -> Multivector:
    sq = sig.pseudoscalar_square()
    if sq == 0:
        raise DegeneratePseudoscalar("pseudoscalar squares to zero")
    return Multivector(sig, {sig.pseudoscalar_mask: div(1, sq)})


def dual(x: Multivector) -> Multivector:
    return x * pseudoscalar_inverse(x.sig)


def undual(x: Multivector) -> Multivector:
    return x * x.sig.pseudoscalar()


def meet(x: Multivector, y: Multivector) -> Multivector:
    _check_same(x, y)
    return outer(dual(x), dual(y)) * x.sig.pseudoscalar()


def exp(x: Multivector) -> Multivector:
    """Exponential.

    If ``x*x`` is a scalar the trigonometric/hyperbolic closed form is used
    (exact when ``x*x == 0``).  Otherwise the float power series with scaling
    and squaring; exact input of that kind raises ExactSeriesUnsupported.
    """
    sq = x * x
    if sq.is_scalar():
        lam = sq.scalar_part
        if lam == 0:
            return x + 1
        lam = float(lam)
        xf = x.to_float()
        if lam < 0:
            r = math.sqrt(-lam)
            return xf.scale(math.sin(r) / r) + math.cos(r)
        r = math.sqrt(lam)
        return xf.scale(math.sinh(r) / r) + math.cosh(r)
    if x.is_exact:
        raise ExactSeriesUnsupported("power series needs the float backend")
    return _exp_series(x.to_float())


def _exp_series(x: Multivector) -> Multivector:
    norm = x.coef_norm1()
    squarings = 0
    if norm > 0.5:
        squarings = int(math.ceil(math.log2(norm / 0.5)))
    y = x.scale(0.5 ** squarings)
    unit = x.sig.scalar(1.0)
    total = unit
    term = unit
    for k in range(1, 200):
        term = (term * y).scale(1.0 / k)
        total = total + term
        if term.coef_norm() < 2.0 ** -52 * total.coef_norm():
            break
    for _ in range(squarings):
        total = total * total
    return total


def sum_mv(sig: Signature, items: Iterable[Multivector]) -> Multivector:
    out: dict = {}
    for x in items:
        for m, c in x._terms.items():
            out[m] = out.get(m, 0) + c
    return Multivector(sig, out)


__all__ = [
    "MAX_GENERATORS",
    "Multivector",
    "Signature",
    "dual",
    "exp",
    "geometric_product",
    "grade_of",
    "grade_project",
    "involution",
    "involution_sign",
    "left_inner",
    "meet",
    "outer",
    "right_inner",
    "scalar_product",
    "tau",
]

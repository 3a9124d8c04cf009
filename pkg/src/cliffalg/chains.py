"""Simplicial chains as elements of a Clifford algebra over points.

Every registered point is an orthonormal generator squaring to +1, so a
product of points is an oriented simplex and reordering picks up the sign of
the permutation.  Points are bits of a Python int, which has no width limit,
so registries of any size share the same sign machinery as the algebra core.

Text format::

    @ p0 0 0        # optional coordinate lines
    @ p1 1 0
    3·[p0 p1 p2] - [p1 p3]

``·`` and ``*`` are both accepted between coefficient and simplex.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import Multivector, Signature, mask_indices, reorder_sign
from .blades import wedge
from .errors import CliffordError, MissingCoordinates, RegistryMismatch


class PointSet:
    """Registry of point ids, optionally with coordinates in a host signature."""

    def __init__(self, host: Signature | None = None):
        self.host = host
        self._ids: list[str] = []
        self._index: dict[str, int] = {}
        self._coords: dict[int, tuple] = {}

    def add(self, pid: str, coords: Sequence | None = None) -> int:
        if pid in self._index:
            i = self._index[pid]
        else:
            i = len(self._ids)
            self._ids.append(pid)
            self._index[pid] = i
        if coords is not None:
            self.set_coords(pid, coords)
        return i

    def set_coords(self, pid: str, coords: Sequence) -> None:
        coords = tuple(coords)
        if self.host is None:
            self.host = Signature.from_stu(len(coords))
        if len(coords) != self.host.n:
            raise ValueError(f"point {pid} needs {self.host.n} coordinates")
        self._coords[self._index[pid]] = coords

    def index(self, pid: str) -> int:
        return self._index[pid]

    def __contains__(self, pid: str) -> bool:
        return pid in self._index

    def ids(self) -> list[str]:
        return list(self._ids)

    def id_of(self, i: int) -> str:
        return self._ids[i]

    def coords(self, i: int) -> tuple | None:
        return self._coords.get(i)

    def __len__(self) -> int:
        return len(self._ids)


class Chain:
    """Integer combination of oriented point sets; treat as immutable."""

    __slots__ = ("points", "_terms")

    def __init__(self, points: PointSet, terms: Mapping[int, int] | None = None):
        self.points = points
        self._terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def simplex(cls, points: PointSet, ids: Sequence[str], coef: int = 1) -> "Chain":
        """Product of the listed points in the given order."""
        mask = 0
        sign = 1
        for pid in ids:
            bit = 1 << points.index(pid)
            sign *= reorder_sign(mask, bit)
            mask ^= bit
        return cls(points, {mask: sign * coef})

    @classmethod
    def unit(cls, points: PointSet, coef: int = 1) -> "Chain":
        return cls(points, {0: coef})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def _same(self, other: "Chain") -> None:
        if self.points is not other.points:
            raise RegistryMismatch("chains use different point registries")

    def __add__(self, other: "Chain") -> "Chain":
        self._same(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Chain(self.points, out)

    def __neg__(self) -> "Chain":
        return Chain(self.points, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Chain):
            return chain_product(self, other)
        return Chain(self.points, {m: c * other for m, c in self._terms.items()})

    def __rmul__(self, other):
        return Chain(self.points, {m: c * other for m, c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, Chain):
            return self.points is other.points and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    __hash__ = None

    def is_zero(self) -> bool:
        return not self._terms

    def __repr__(self) -> str:
        return f"Chain({format_chain(self)!r})"


def chain_product(x: Chain, y: Chain) -> Chain:
    x._same(y)
    out: dict[int, int] = {}
    for a, ca in x._terms.items():
        for b, cb in y._terms.items():
            m = a ^ b
            out[m] = out.get(m, 0) + reorder_sign(a, b) * ca * cb
    return Chain(x.points, out)


def boundary(x: Chain) -> Chain:
    """Sum over points v of v contracted into x."""
    out: dict[int, int] = {}
    support = 0
    for m in x._terms:
        support |= m
    for v in mask_indices(support):
        bit = 1 << v
        for a, c in x._terms.items():
            if a & bit:
                m = a ^ bit
                out[m] = out.get(m, 0) + reorder_sign(bit, a) * c
    return Chain(x.points, out)


def measure(x: Chain) -> Multivector:
    """Directed volume: 0 on the unit, 1 on a point, (1/k!) (v1-v0)^...^(vk-v0) on a k-simplex."""
    host = x.points.host
    if host is None:
        raise MissingCoordinates("point registry has no coordinates")
    total = host.zero()
    for mask, c in x._terms.items():
        idx = mask_indices(mask)
        if not idx:
            continue
        coords = [x.points.coords(i) for i in idx]
        missing = [x.points.id_of(i) for i, p in zip(idx, coords) if p is None]
        if missing:
            raise MissingCoordinates(f"no coordinates for {', '.join(missing)}")
        k = len(idx) - 1
        if k == 0:
            total = total + c
            continue
        v0 = coords[0]
        edges = [host.vector([a - b for a, b in zip(p, v0)]) for p in coords[1:]]
        total = total + wedge(edges) * Fraction(c, math.factorial(k))
    return total


# text format

_COORD = re.compile(r"^\s*@\s*(\S+)\s+(.*)$")
_TERM = re.compile(r"\s*(?P<sign>[+-])?\s*(?P<coef>\d+)?\s*(?:[·*]\s*)?\[(?P<ids>[^\]]*)\]\s*")


class ChainSyntaxError(CliffordError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _parse_number(text: str):
    f = Fraction(text)
    return f.numerator if f.denominator == 1 else f


def parse_coords(text: str, points: PointSet) -> None:
    """Lines ``id x1 x2 ...`` (a leading ``@`` is optional)."""
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("@"):
            line = line[1:].strip()
        pid, *vals = line.split()
        points.add(pid, [_parse_number(v) for v in vals])


def parse_chain(text: str, points: PointSet | None = None) -> Chain:
    points = points if points is not None else PointSet()
    body = []
    for line in text.splitlines():
        stripped = line.split("#", 1)[0]
        m = _COORD.match(stripped)
        if m:
            points.add(m.group(1), [_parse_number(v) for v in m.group(2).split()])
        elif stripped.strip():
            body.append(stripped.strip())
    expr = " ".join(body)
    total = Chain(points)
    if expr in ("", "0"):
        return total
    pos = 0
    first = True
    while pos < len(expr):
        m = _TERM.match(expr, pos)
        if not m or m.end() == pos or (not first and not m.group("sign")):
            raise ChainSyntaxError("expected a chain term", pos)
        first = False
        coef = int(m.group("coef")) if m.group("coef") else 1
        if m.group("sign") == "-":
            coef = -coef
        ids = m.group("ids").split()
        for pid in ids:
            if pid not in points:
                points.add(pid)
        total = total + Chain.simplex(points, ids, coef)
        pos = m.end()
    return total


def format_chain(x: Chain) -> str:
    parts = []
    for mask, c in sorted(x._terms.items(), key=lambda kv: (kv[0].bit_count(), mask_indices(kv[0]))):
        ids = " ".join(x.points.id_of(i) for i in mask_indices(mask))
        mag = abs(c)
        body = f"[{ids}]" if mag == 1 else f"{mag}·[{ids}]"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts) if parts else "0"


def chains_from(points: PointSet, simplices: Iterable[Sequence[str]]) -> Chain:
    total = Chain(points)
    for s in simplices:
        total = total + Chain.simplex(points, s)
    return total

"""Random generators and independent oracles shared by the test modules."""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from cliffalg.algebra import Multivector, Signature


def rand_rational(rng: random.Random, size: int = 9, int_bias: float = 0.5):
    num = rng.randint(-size, size)
    if rng.random() < int_bias:
        return num
    return Fraction(num, rng.randint(1, size))


def rand_mv(rng: random.Random, sig: Signature, terms: int | None = None, grades=None, exact=True):
    """Sparse random multivector; ``terms=None`` means dense."""
    masks = [m for m in range(1 << sig.n) if grades is None or m.bit_count() in grades]
    if terms is not None:
        masks = rng.sample(masks, min(terms, len(masks)))
    if exact:
        coefs = {m: rand_rational(rng) for m in masks}
    else:
        coefs = {m: rng.uniform(-1, 1) for m in masks}
    return Multivector(sig, coefs)


def rand_vector(rng, sig, exact=True):
    return rand_mv(rng, sig, grades={1}, exact=exact)


def all_signatures(n: int, with_null: bool = True):
    out = []
    for s in range(n + 1):
        for t in range(n + 1 - s):
            u = n - s - t
            if u and not with_null:
                continue
            out.append(Signature.from_stu(s, t, u))
    return out


def rand_signature(rng, n, with_null=True):
    return rng.choice(all_signatures(n, with_null))


# oracles

def tau_inductive(squares):
    """Sign table built by adding one generator at a time (new one is largest).

    For A, B inside the smaller set Y and A' = A + {z}:
      tau(A, B) = tau'(A, B);  tau(A', B) = (-1)^|B| tau'(A, B);
      tau(A, B') = tau'(A, B); tau(A', B') = r(z) (-1)^|B| tau'(A, B).
    """
    table = {(0, 0): 1}
    for k, r in enumerate(squares):
        z = 1 << k
        new = dict(table)
        for (a, b), v in table.items():
            sb = -1 if b.bit_count() & 1 else 1
            new[(a | z, b)] = sb * v
            new[(a, b | z)] = v
            new[(a | z, b | z)] = r * sb * v
        table = new
    return table


def leibniz_det(m):
    """Determinant by the permutation expansion (no elimination)."""
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inv & 1 else 1
        for i in range(n):
            term = term * m[i][perm[i]]
        total += term
    return total


def ordered_subsets(n: int, max_size: int | None = None):
    max_size = n if max_size is None else max_size
    for k in range(max_size + 1):
        for combo in itertools.combinations(range(n), k):
            yield combo


def so_plus_sample(rng: np.random.Generator, s: int, t: int, steps: int = 6) -> np.ndarray:
    """Random element of the identity component, as a product of plane rotations and boosts."""
    n = s + t
    m = np.eye(n)
    for _ in range(steps):
        i, j = rng.choice(n, size=2, replace=False)
        a = rng.uniform(-2.0, 2.0)
        g = np.eye(n)
        same = (i < s) == (j < s)
        if same:
            c, sn = math.cos(a), math.sin(a)
            g[i, i], g[i, j], g[j, i], g[j, j] = c, -sn, sn, c
        else:
            a *= 0.5
            c, sh = math.cosh(a), math.sinh(a)
            g[i, i], g[i, j], g[j, i], g[j, j] = c, sh, sh, c
        m = g @ m
    return m


# hypothesis strategies

rationals = st.one_of(
    st.integers(-6, 6),
    st.fractions(min_value=-6, max_value=6, max_denominator=7),
)


def mv_strategy(sig: Signature, max_terms: int = 5, grades=None):
    masks = [m for m in range(1 << sig.n) if grades is None or m.bit_count() in grades]
    if not masks:
        return st.just(sig.zero())
    return st.dictionaries(st.sampled_from(masks), rationals, max_size=max_terms).map(
        lambda d: Multivector(sig, d)
    )


signature_strategy = st.builds(
    lambda s, t, u: Signature.from_stu(s, t, u),
    st.integers(0, 3), st.integers(0, 2), st.integers(0, 1),
)


@st.composite
def sig_and_mvs(draw, count: int = 3, max_terms: int = 5):
    sig = draw(signature_strategy)
    return (sig,) + tuple(draw(mv_strategy(sig, max_terms)) for _ in range(count))

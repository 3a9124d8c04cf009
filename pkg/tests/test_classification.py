import random
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from cliffalg.algebra import Signature
from cliffalg.classification import (
    MatrixAlgebraDescriptor,
    RepInfo,
    build_generators,
    classify_complex,
    classify_real,
    field_count_from_reps,
    fields_certificate,
    hurwitz_admissible,
    radon_hurwitz,
    rational_sphere_point,
    rep_info,
    sphere_fields,
    table2_rows,
    table2_text,
    table3_text,
)

GOLDEN = Path(__file__).parent / "golden"


def trace_form_descriptor(s, t):
    """Recover the matrix-algebra type from blade squares alone.

    The form <xy>_0 has signature k on R[k], 0 on C[k] and -2k on H[k];
    the centre is two-dimensional exactly when n is odd and I^2 = +1.
    """
    n = s + t
    squares = [1] * s + [-1] * t

    def blade_sq(mask):
        k = mask.bit_count()
        out = -1 if (k * (k - 1) // 2) % 2 else 1
        for i in range(n):
            if mask >> i & 1:
                out *= squares[i]
        return out

    total = sum(blade_sq(m) for m in range(1 << n))
    double = n % 2 == 1 and blade_sq((1 << n) - 1) == 1
    assert Signature.from_stu(s, t).pseudoscalar_square() == blade_sq((1 << n) - 1)
    parts = 2 if double else 1
    per = total // parts
    if per > 0:
        ring, block = "R", per
    elif per < 0:
        ring, block = "H", -per // 2
    else:
        ring = "C"
        block = int(round((2 ** n // parts / 2) ** 0.5))
    return MatrixAlgebraDescriptor(ring, block, double)


def test_table2_golden():
    assert table2_text() == (GOLDEN / "table2.txt").read_text()


def test_table2_known_cells():
    assert str(classify_real(0, 0)) == "R"
    assert str(classify_real(1, 0)) == "R+R"
    assert str(classify_real(0, 1)) == "C"
    assert str(classify_real(0, 2)) == "H"
    assert str(classify_real(3, 0)) == "C[2]"
    assert str(classify_real(1, 3)) == "H[2]"
    assert str(classify_real(3, 1)) == "R[4]"
    assert str(classify_real(0, 3)) == "H+H"


@pytest.mark.parametrize("s", range(0, 9))
def test_descriptor_matches_trace_form(s):
    for t in range(0, 9 - s):
        assert classify_real(s, t) == trace_form_descriptor(s, t), (s, t)


def test_dimension_bookkeeping():
    for s in range(13):
        for t in range(13):
            assert classify_real(s, t).real_dim == 2 ** (s + t)


def test_rows_format():
    rows = table2_rows().splitlines()
    assert rows[0] == "s,t,ring,block,double"
    assert "1,3,H,2,0" in rows
    assert len(rows) == 82


def test_shift_isomorphisms():
    for s in range(1, 12):
        for t in range(0, 12):
            assert classify_real(s, t) == classify_real(t + 1, s - 1)
            assert classify_real(s + 1, t + 1).block == 2 * classify_real(s, t).block


def test_periodicity_of_eight():
    for s in range(5):
        for t in range(5):
            a, b = classify_real(s, t), classify_real(s + 8, t)
            assert (a.ring, a.double, 16 * a.block) == (b.ring, b.double, b.block)
            b = classify_real(s, t + 8)
            assert (a.ring, a.double, 16 * a.block) == (b.ring, b.double, b.block)


def test_periodic_and_direct_agree():
    for n in range(17):
        assert classify_real(n, 0, periodic=False) == classify_real(n, 0)
        assert classify_real(0, n, periodic=False) == classify_real(0, n)


def test_complex_pattern():
    for n in range(12):
        d = classify_complex(n)
        assert d.ring == "C" and d.block == 2 ** (n // 2) and d.double == bool(n % 2)
    assert str(classify_complex(3)) == "C[2]+C[2]"
    with pytest.raises(ValueError):
        classify_complex(-1)


def test_rep_info_examples():
    assert rep_info(0, 7) == RepInfo(2, 8)
    assert (rep_info(0, 9).nu, rep_info(0, 9).d) == (1, 32)
    assert (rep_info(0, 0).nu, rep_info(0, 0).d) == (1, 1)
    assert (rep_info(3, 0).nu, rep_info(3, 0).d) == (1, 4)


def test_table3_golden_and_periodicity():
    text = table3_text()
    assert text == (GOLDEN / "table3.txt").read_text()
    rows = [ln.split() for ln in text.splitlines()[1:]]
    assert len(rows) == 9
    for n in range(9, 13):
        base = rows[n - 8]
        assert rep_info(n, 0).nu == int(base[2]) and rep_info(n, 0).d == 16 * int(base[3])
        assert rep_info(0, n).nu == int(base[5]) and rep_info(0, n).d == 16 * int(base[6])


@pytest.mark.parametrize("kind", ["euclidean", "anti_euclidean"])
@pytest.mark.parametrize("n", range(0, 10))
def test_generators_irreducible(kind, n):
    gens = build_generators(kind, n)
    want = rep_info(n, 0).d if kind == "euclidean" else rep_info(0, n).d
    assert gens.dim == want and gens.dim <= 32
    assert all(m.dtype.kind == "i" for m in gens.mats)
    assert gens.check()
    # blades span a real algebra of dimension 2^n, or 2^(n-1) per summand when double
    if gens.mats:
        flat = np.array([gens.blade(m).ravel() for m in range(1 << n)])
        info = rep_info(n, 0) if kind == "euclidean" else rep_info(0, n)
        assert np.linalg.matrix_rank(flat) == 2 ** n // info.nu


def test_generator_small_cases():
    j = build_generators("anti_euclidean", 1).mats[0]
    assert np.array_equal(j @ j, -np.eye(2, dtype=np.int64))
    assert build_generators("anti_euclidean", 3).dim == 4
    euc = build_generators("euclidean", 2)
    assert euc.dim == 2 and euc.check()
    with pytest.raises(ValueError):
        build_generators("lorentz", 2)


def test_hurwitz_admissible():
    assert [n for n in range(1, 33) if hurwitz_admissible(n)] == [1, 2, 4, 8]


def test_radon_hurwitz_golden_two_routes():
    golden = {}
    for line in (GOLDEN / "rh.txt").read_text().splitlines():
        a, b = line.split()
        golden[int(a)] = int(b)
    assert list(golden) == list(range(17))
    for N, want in golden.items():
        assert radon_hurwitz(N + 1) == want
        assert field_count_from_reps(N) == want
    for N in range(17, 200):
        assert radon_hurwitz(N + 1) == field_count_from_reps(N)


@pytest.mark.parametrize("N", [1, 3, 7, 15])
def test_sphere_fields_exact(N):
    fields = sphere_fields(N)
    assert fields.count == radon_hurwitz(N + 1)
    rng = random.Random(N)
    for _ in range(100):
        params = [Fraction(rng.randint(-20, 20), rng.randint(1, 20)) for _ in range(N)]
        x = rational_sphere_point(params)
        assert sum(c * c for c in x) == 1
        assert fields_certificate(fields, x) == (True, True)


@pytest.mark.parametrize("N", [3, 7, 15, 31])
def test_sphere_fields_orthonormal_float(N):
    fields = sphere_fields(N)
    rng = np.random.default_rng(N)
    mats = [np.asarray(m, dtype=float) for m in fields.mats]
    for m in mats:
        assert np.allclose(m, -m.T)
    for _ in range(20):
        x = rng.normal(size=N + 1)
        x /= np.linalg.norm(x)
        frame = np.array([x] + [m @ x for m in mats])
        assert np.allclose(frame @ frame.T, np.eye(len(frame)), atol=1e-12)


def test_even_sphere_has_no_fields():
    for N in range(0, 20, 2):
        assert sphere_fields(N).count == 0
    with pytest.raises(ValueError):
        sphere_fields(3).evaluate([1, 0, 0])

import random

import pytest

from divicodes.gf2 import (
    BitMatrix,
    Gf2Error,
    field_rep,
    invert,
    kernel_basis,
    rank,
    rref,
    solve,
    subspace_points,
)


def test_rref_identity():
    r, rk, pivots = rref(BitMatrix.identity(3))
    assert rk == 3 and pivots == (0, 1, 2)


def test_rref_all_nonzero_columns_spans():
    cols = list(range(1, 8))
    m = BitMatrix(tuple(cols), 3).transpose()
    assert rank(m) == 3


def test_rref_zero_matrix():
    r, rk, pivots = rref(BitMatrix.zero(2, 5))
    assert rk == 0 and r.rows == (0, 0) and pivots == ()


def test_rref_idempotent():
    rng = random.Random(1)
    for _ in range(50):
        m = BitMatrix(tuple(rng.randrange(1 << 8) for _ in range(5)), 8)
        r, _, _ = rref(m)
        r2, _, _ = rref(r)
        assert r == r2


def test_kernel_identity_empty():
    assert kernel_basis(BitMatrix.identity(4)).nrows == 0


def test_kernel_parity_row():
    kb = kernel_basis(BitMatrix((0b1111,), 4))
    assert kb.nrows == 3
    assert all(r.bit_count() % 2 == 0 for r in kb.rows)


def test_kernel_zero_matrix():
    assert kernel_basis(BitMatrix.zero(2, 5)).nrows == 5


def test_rank_nullity_random():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randrange(1, 10)
        rows = tuple(rng.randrange(1 << n) for _ in range(rng.randrange(1, 8)))
        m = BitMatrix(rows, n)
        assert rank(m) + kernel_basis(m).nrows == n
        for x in kernel_basis(m).rows:
            assert m.mul_vec(x) == 0


def test_solve_and_invert():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randrange(2, 8)
        while True:
            m = BitMatrix(tuple(rng.randrange(1 << n) for _ in range(n)), n)
            if rank(m) == n:
                break
        inv = invert(m)
        assert m.mul(inv) == BitMatrix.identity(n)
        target = rng.randrange(1 << n)
        x = solve(m, target)
        assert x is not None and m.mul_vec(x) == target


def test_field_rep_small():
    f1 = field_rep(1)
    assert len(f1.elements) == 2
    f2 = field_rep(2)
    assert len(set(f2.elements)) == 4
    a = f2.companion
    assert a.mul(a).mul(a) == BitMatrix.identity(2)


def test_field_rep_m4_powers_distinct():
    f = field_rep(4)
    nonzero = f.elements[1:]
    assert len(set(nonzero)) == 15
    a = f.companion
    p = BitMatrix.identity(4)
    for _ in range(15):
        p = p.mul(a)
    assert p == BitMatrix.identity(4)


def test_field_rep_addition_closed():
    f = field_rep(3)
    elems = set(f.elements)
    for x in f.elements:
        for y in f.elements:
            s = BitMatrix(tuple(a ^ b for a, b in zip(x.rows, y.rows)), 3)
            assert s in elems


@pytest.mark.parametrize("m", range(1, 17))
def test_field_rep_primitive_all_degrees(m):
    f = field_rep(m)
    assert len(f.elements) == 1 << m


def test_field_rep_out_of_range():
    with pytest.raises(Gf2Error):
        field_rep(0)
    with pytest.raises(Gf2Error):
        field_rep(17)


def test_subspace_points_cases():
    assert subspace_points(BitMatrix((1,), 4)) == [1]
    assert subspace_points(BitMatrix((1, 2), 4)) == [1, 2, 3]
    pts = subspace_points(BitMatrix((0b10000001, 0b1010, 0b100100, 0b11000000), 8))
    assert len(pts) == 15
    closed = set(pts) | {0}
    for x in pts:
        for y in pts:
            assert (x ^ y) in closed


def test_subspace_points_dependent_rows():
    with pytest.raises(Gf2Error):
        subspace_points(BitMatrix((1, 2, 3), 4))

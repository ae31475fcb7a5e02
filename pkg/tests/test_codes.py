import random

import pytest

from divicodes import catalog
from divicodes.codes import (
    BudgetError,
    CodeError,
    LinearCode,
    augment,
    codim1_subcodes,
    direct_sum,
    dual,
    dual_distance_at_least_3,
    golay24,
    is_divisible,
    is_projective,
    macwilliams,
    parse_matrix_text,
    shorten,
    weight_distribution,
    write_matrix_text,
)
from divicodes.geometry import points_to_code
from divicodes.gf2 import BitMatrix


def random_code(rng, n, k, projective=False):
    while True:
        rows = tuple(rng.randrange(1, 1 << n) for _ in range(k))
        try:
            c = LinearCode.from_rows(rows, n)
        except CodeError:
            continue
        if c.k != k:
            continue
        cols = c.gen.columns()
        if 0 in cols:
            continue
        if projective and len(set(cols)) != n:
            continue
        return c


def test_simplex_weight_distribution():
    wd = weight_distribution(catalog.simplex(3))
    assert wd.counts[0] == 1 and wd.counts[4] == 7
    assert sum(wd.counts) == 8


def test_repetition_weight_distribution():
    c = LinearCode.from_rows([(1 << 6) - 1], 6)
    wd = weight_distribution(c)
    assert wd.counts[0] == 1 and wd.counts[6] == 1


def test_reed_muller_weight_distribution():
    rm = points_to_code(catalog.affine_flat(3))
    wd = weight_distribution(rm)
    assert (wd.counts[0], wd.counts[4], wd.counts[8]) == (1, 14, 1)


def test_weight_budget():
    gen = BitMatrix.identity(30)
    code = LinearCode(gen, 30, 30)
    with pytest.raises(BudgetError):
        weight_distribution(code)


def test_is_divisible():
    s = catalog.simplex(3)
    assert is_divisible(s, 4)
    assert not is_divisible(s, 8)
    assert is_divisible(catalog.even_weight(4), 2)


def test_is_projective():
    assert is_projective(catalog.simplex(3))
    rep = LinearCode.from_rows([0b1111], 4)
    assert not is_projective(rep)
    ew = catalog.even_weight(4)
    assert is_projective(ew)


def test_projectivity_matches_dual_distance():
    rng = random.Random(42)
    for _ in range(60):
        c = random_code(rng, rng.randrange(5, 12), rng.randrange(2, 5))
        if c.k == c.n:
            continue
        assert is_projective(c) == dual_distance_at_least_3(c)


def test_dual_simplex():
    d = dual(catalog.simplex(3))
    assert (d.n, d.k) == (7, 4)
    assert min(weight_distribution(d).nonzero_weights()) == 3


def test_dual_even_weight():
    d = dual(catalog.even_weight(6))
    assert (d.n, d.k) == (6, 1)
    assert d.gen.rows == ((1 << 6) - 1,)


def test_dual_involution():
    rng = random.Random(9)
    for _ in range(20):
        c = random_code(rng, 10, 4)
        assert dual(dual(c)) == c  # RREF representative is unique


def test_macwilliams_simplex():
    wd = weight_distribution(catalog.simplex(3))
    b = macwilliams(wd, 3)
    assert (b.counts[0], b.counts[3], b.counts[4], b.counts[7]) == (1, 7, 7, 1)


def test_macwilliams_full_space():
    c = LinearCode(BitMatrix.identity(5), 5, 5)
    b = macwilliams(weight_distribution(c), 5)
    assert b.counts[0] == 1 and sum(b.counts) == 1


def test_macwilliams_matches_dual_enumeration():
    rng = random.Random(2024)
    for _ in range(40):
        n = rng.randrange(6, 14)
        k = rng.randrange(2, min(6, n))
        c = random_code(rng, n, k)
        if c.k == c.n:
            continue
        assert macwilliams(weight_distribution(c), c.k) == \
            weight_distribution(dual(c))


def test_macwilliams_rejects_bad_input():
    from divicodes.codes import WeightDistribution
    with pytest.raises(CodeError):
        macwilliams(WeightDistribution(4, (1, 0, 2, 0, 0)), 3)


def test_codim1_subcodes():
    ew = catalog.even_weight(4)
    subs = list(codim1_subcodes(ew))
    assert len(subs) == 7
    words = set(ew.codewords())
    for s in subs:
        assert s.k == 2
        assert set(s.codewords()) <= words


def test_codim1_simplex_subcodes_constant_weight():
    for s in codim1_subcodes(catalog.simplex(3)):
        assert set(weight_distribution(s).nonzero_weights()) <= {4}


def test_direct_sum():
    c = direct_sum(catalog.simplex(3), points_to_code(catalog.affine_flat(3)))
    assert (c.n, c.k) == (15, 7)
    assert is_projective(c) and is_divisible(c, 4)


def test_direct_sum_divisibility_property():
    rng = random.Random(5)
    for _ in range(20):
        a = catalog.simplex(rng.randrange(2, 4))
        b = catalog.even_weight(rng.randrange(3, 6))
        assert is_divisible(direct_sum(a, b), 2)


def test_shorten_golay():
    g = golay24()
    sh = shorten(g, [0, 1, 2, 3, 4])
    assert (sh.n, sh.k) == (19, 7)
    wd = weight_distribution(sh)
    assert min(wd.nonzero_weights()) == 8
    assert is_projective(sh)
    assert is_divisible(sh, 4)


def test_shorten_to_zero_rejected():
    c = LinearCode.from_rows([0b11], 2)
    with pytest.raises(CodeError):
        shorten(c, [0, 1])


def test_augment():
    ew = catalog.even_weight(4)
    full = augment(ew, 0b0001)
    assert full.k == 4
    with pytest.raises(CodeError):
        augment(ew, 0b0011)  # already inside


def test_weight_distribution_permutation_invariant():
    rng = random.Random(17)
    c = random_code(rng, 10, 5)
    cols = c.gen.columns()
    perm = list(range(10))
    rng.shuffle(perm)
    c2 = LinearCode.from_matrix(
        BitMatrix(tuple(cols[perm[j]] for j in range(10)), c.k).transpose())
    assert weight_distribution(c) == weight_distribution(c2)


def test_golay_fixture():
    wd = weight_distribution(golay24())
    assert wd.counts[8] == 759 and wd.counts[12] == 2576 and wd.counts[24] == 1
    d = dual(golay24())
    assert weight_distribution(d) == wd  # self-dual


def test_matrix_text_roundtrip():
    c = catalog.simplex(3)
    text = write_matrix_text(c)
    m = parse_matrix_text(text)
    assert LinearCode.from_matrix(m) == c


def test_matrix_text_errors():
    with pytest.raises(CodeError):
        parse_matrix_text("")
    with pytest.raises(CodeError, match="line 1"):
        parse_matrix_text("abc\n")
    with pytest.raises(CodeError, match="line 2"):
        parse_matrix_text("3 1\n01\n")
    with pytest.raises(CodeError, match="column 2"):
        parse_matrix_text("3 1\n0x1\n")

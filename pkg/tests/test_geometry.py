import random

import pytest

from divicodes import catalog
from divicodes.codes import LinearCode, is_divisible, weight_distribution
from divicodes.geometry import (
    GeometryError,
    PointMultiset,
    Subspace,
    code_to_points,
    complement,
    cone,
    disjoint_embed,
    empty_subspace_max_dim,
    hyperplane_weight,
    is_divisible_pointset,
    points_to_code,
    sunflower_switch,
    tangent_switch,
)
from divicodes.gf2 import BitMatrix


def random_projective_code(rng, n, k):
    while True:
        cols = rng.sample(range(1, 1 << k), n)
        m = BitMatrix(tuple(cols), k).transpose()
        try:
            c = LinearCode.from_matrix(m)
        except Exception:
            continue
        if c.k == k:
            return c


def test_simplex_points_roundtrip():
    s = catalog.simplex(3)
    pts = code_to_points(s)
    assert pts.size == 7 and pts.is_set()
    assert pts.point_set() == set(range(1, 8))
    assert points_to_code(pts) == s


def test_repetition_multiset():
    rep = LinearCode.from_rows([0b1111], 4)
    pts = code_to_points(rep)
    assert pts.mult == ((1, 4),)


def test_roundtrip_random_projective():
    rng = random.Random(23)
    for _ in range(20):
        c = random_projective_code(rng, 12, 6)
        pts = code_to_points(c)
        back = points_to_code(pts)
        assert sorted(back.gen.columns()) == sorted(c.gen.columns())


def test_hyperplane_weight_simplex():
    pts = code_to_points(catalog.simplex(3))
    for a in range(1, 8):
        assert hyperplane_weight(pts, a) == 4


def test_hyperplane_weight_single_point():
    pts = PointMultiset.from_points(3, [0b001])
    assert hyperplane_weight(pts, 0b010) == 0
    assert hyperplane_weight(pts, 0b001) == 1


def test_hyperplane_weight_matches_codeword_weights():
    rng = random.Random(31)
    c = random_projective_code(rng, 10, 5)
    pts = code_to_points(c)
    for a in range(1, 1 << 5):
        word = 0
        for i in range(5):
            if (a >> i) & 1:
                word ^= c.gen.rows[i]
        assert hyperplane_weight(pts, a) == word.bit_count()


def test_divisible_pointset_matches_code():
    rng = random.Random(37)
    for _ in range(15):
        c = random_projective_code(rng, 9, 4)
        pts = code_to_points(c)
        for delta in (2, 4):
            assert is_divisible_pointset(pts, delta) == is_divisible(c, delta)


def test_affine_solid_divisible():
    solid = catalog.affine_flat(3)
    assert solid.size == 8
    assert is_divisible_pointset(solid, 4)


def test_complement():
    full = PointMultiset.from_points(3, range(1, 8))
    plane_in_pg3 = PointMultiset.from_points(4, range(1, 8))
    comp = complement(plane_in_pg3)
    assert comp.size == 8
    assert is_divisible_pointset(comp, 2)
    assert complement(comp) == plane_in_pg3
    with pytest.raises(GeometryError):
        complement(full)


def test_complement_preserves_2divisibility():
    rng = random.Random(41)
    for _ in range(10):
        c = random_projective_code(rng, 9, 4)
        pts = code_to_points(c)
        if not is_divisible_pointset(pts, 2) or pts.size == 15:
            continue
        assert is_divisible_pointset(complement(pts), 2)


def test_tangent_switch():
    basis = catalog.projective_basis(4)  # 5 points of PG(3,F2)
    line = Subspace.from_rows(4, [0b0001, 0b0110])  # {e1, e2+e3, e1+e2+e3}
    out = tangent_switch(basis, line)
    assert out.size == 6
    assert is_divisible_pointset(out, 2)


def test_tangent_switch_requires_tangency():
    pts = PointMultiset.from_points(3, [1, 2, 3])
    line = Subspace.from_rows(3, [1, 2])
    with pytest.raises(GeometryError, match="tangent"):
        tangent_switch(pts, line)


def test_sunflower_switch_solid():
    solid = PointMultiset.from_points(8, range(1, 16))  # 15 points, 4-dim
    t = Subspace.from_rows(8, [1, 2])  # line inside
    s2 = Subspace.from_rows(8, [1, 2, 16])  # plane leaving via coordinate 4
    out = sunflower_switch(solid, t, s2)
    assert out.size == 16
    assert is_divisible_pointset(out, 4)


def test_sunflower_switch_preconditions():
    solid = PointMultiset.from_points(8, range(1, 16))
    with pytest.raises(GeometryError, match="contained"):
        sunflower_switch(solid, Subspace.from_rows(8, [16, 32]),
                         Subspace.from_rows(8, [16, 32, 64]))
    with pytest.raises(GeometryError, match="meets"):
        sunflower_switch(solid, Subspace.from_rows(8, [1, 2]),
                         Subspace.from_rows(8, [1, 2, 4]))


def test_four_switches_give_19_points():
    assert catalog.example19("i").size == 19


def test_cone_point_vertex_with_apex():
    base = catalog.projective_basis(6)  # 7 points, |B| = -1 mod 4
    out = cone(base, 0, include_vertex=True, expect_divisor=4)
    assert out.size == 15
    code = points_to_code(out)
    assert (code.n, code.k) == (15, 7)


def test_cone_point_vertex_without_apex():
    base = catalog.projective_basis(7)  # 8 points, 0 mod 4
    out = cone(base, 0, include_vertex=False, expect_divisor=4)
    assert out.size == 16
    code = points_to_code(out)
    assert (code.n, code.k) == (16, 8)


def test_cone_counting():
    for s in (0, 1, 2):
        base = catalog.projective_basis(4)
        out = cone(base, s, include_vertex=True, expect_divisor=2)
        assert out.size == (1 << (s + 1)) * base.size + (1 << (s + 1)) - 1
        out2 = cone(base, s, include_vertex=False, expect_divisor=2)
        assert out2.size == (1 << (s + 1)) * base.size


def test_cone_misuse_reported():
    base = catalog.projective_basis(5)  # 6 points: neither 0 nor -1 mod 4
    with pytest.raises(GeometryError, match="cone misuse"):
        cone(base, 0, include_vertex=True, expect_divisor=4)


def test_empty_subspace_dims():
    fano = PointMultiset.from_points(3, range(1, 8))
    assert empty_subspace_max_dim(fano) == 0
    solid = catalog.affine_flat(3)
    assert empty_subspace_max_dim(solid) == 3


def test_disjoint_embed_range():
    fano = PointMultiset.from_points(3, range(1, 8))
    solid = catalog.affine_flat(3)
    for k in (4, 5, 6, 7):
        out = disjoint_embed(fano, solid, k)
        assert out.size == 15
        assert out.is_spanning()
        assert is_divisible_pointset(out, 4)
    for k in (3, 8):
        with pytest.raises(GeometryError):
            disjoint_embed(fano, solid, k)


def test_disjoint_embed_two_planes():
    fano = PointMultiset.from_points(3, range(1, 8))
    out = disjoint_embed(fano, fano, 6)
    code = points_to_code(out)
    assert (code.n, code.k) == (14, 6)
    assert set(weight_distribution(code).nonzero_weights()) == {4, 8}

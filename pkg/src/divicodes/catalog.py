"""Named constructions of projective 2^r-divisible binary codes.

Each family from the construction catalog is built explicitly as a point
set and verified against its declared (n, k, divisor) before being
returned; a mismatch raises, since a silently wrong fixture would poison
the classification cross-checks downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .gf2 import BitMatrix, field_rep, _PRIMITIVE_POLYS
from .codes import LinearCode, is_divisible
from .geometry import (
    PointMultiset,
    Subspace,
    cone,
    is_divisible_pointset,
    points_to_code,
)
from .spreads import PartialSpread


class CatalogError(ValueError):
    pass


# Base objects


def simplex(dim: int) -> LinearCode:
    """[2^d - 1, d] simplex code: columns are all nonzero vectors."""
    if dim < 1:
        raise CatalogError("simplex needs dim >= 1")
    return points_to_code(simplex_points(dim))


def simplex_points(dim: int) -> PointMultiset:
    return PointMultiset.from_points(dim, range(1, 1 << dim))


def affine_flat(dim: int) -> PointMultiset:
    """Affine d-flat: the 2^d points off a hyperplane of a (d+1)-space.

    Its code is the [2^d, d+1] first-order Reed-Muller code with weights
    2^(d-1) and 2^d.
    """
    if dim < 1:
        raise CatalogError("affine flat needs dim >= 1")
    top = 1 << dim
    return PointMultiset.from_points(dim + 1, [x | top for x in range(1 << dim)])


def even_weight(n: int) -> LinearCode:
    """[n, n-1] even-weight code."""
    if n < 3:
        raise CatalogError("even-weight code needs n >= 3")
    rows = [(1 << i) | (1 << (n - 1)) for i in range(n - 1)]
    return LinearCode.from_rows(rows, n)


def projective_basis(k: int) -> PointMultiset:
    """k+1 points of PG(k-1, F2) in general position."""
    if k < 1:
        raise CatalogError("projective basis needs k >= 1")
    pts = [1 << i for i in range(k)] + [(1 << k) - 1]
    return PointMultiset.from_points(k, sorted(set(pts)))


# The construction catalog

FAMILIES = (
    "r_flat",
    "affine_flat",
    "two_r_flats",
    "flat_plus_affine",
    "seven_flats",
    "two_affine_flats",
    "eight_flats",
    "line_plus_basis_cone",
    "three_r_flats",
)


@dataclass(frozen=True)
class CatalogEntry:
    family: str
    r: int
    s: int | None = None        # flat_plus_affine: infinity intersection dim
    k: int | None = None        # ambient dimension where the family varies
    variant: str | None = None  # two_affine_flats: "sym" | "asym"
    expected_n: int = 0
    expected_k: int = 0
    expected_delta: int = 0

    def label(self) -> str:
        parts = [self.family, f"r={self.r}"]
        if self.s is not None:
            parts.append(f"s={self.s}")
        if self.k is not None:
            parts.append(f"k={self.k}")
        if self.variant is not None:
            parts.append(self.variant)
        return ":".join(parts)


def family_entries(r: int) -> list[CatalogEntry]:
    """Every catalog entry for divisor 2^r, with expected parameters."""
    if r < 1:
        raise CatalogError("families are defined for r >= 1")
    delta = 1 << r
    out = [
        CatalogEntry("r_flat", r, expected_n=2 ** (r + 1) - 1,
                     expected_k=r + 1, expected_delta=delta),
        CatalogEntry("affine_flat", r, expected_n=2 ** (r + 1),
                     expected_k=r + 2, expected_delta=delta),
        CatalogEntry("two_r_flats", r, expected_n=2 ** (r + 2) - 2,
                     expected_k=2 * r + 2, expected_delta=delta),
    ]
    for s in range(r + 2):
        out.append(CatalogEntry("flat_plus_affine", r, s=s,
                                expected_n=2 ** (r + 2) - 1,
                                expected_k=2 * r + 3 - s, expected_delta=delta))
    out.append(CatalogEntry("seven_flats", r, expected_n=2 ** (r + 2) - 1,
                            expected_k=r + 5, expected_delta=delta))
    for k in range(r + 3, 2 * r + 4):
        for variant in ("sym", "asym"):
            out.append(CatalogEntry("two_affine_flats", r, k=k, variant=variant,
                                    expected_n=2 ** (r + 2),
                                    expected_k=k, expected_delta=delta))
    out.append(CatalogEntry("two_affine_flats", r, k=2 * r + 4, variant="sym",
                            expected_n=2 ** (r + 2),
                            expected_k=2 * r + 4, expected_delta=delta))
    out.append(CatalogEntry("eight_flats", r, expected_n=2 ** (r + 2),
                            expected_k=r + 6, expected_delta=delta))
    out.append(CatalogEntry("line_plus_basis_cone", r, expected_n=2 ** (r + 2),
                            expected_k=r + 5, expected_delta=delta))
    for k in range(2 * r + 2, 3 * r + 4):
        out.append(CatalogEntry("three_r_flats", r, k=k,
                                expected_n=3 * (2 ** (r + 1) - 1),
                                expected_k=k, expected_delta=delta))
    return out


def family(entry: CatalogEntry) -> PointMultiset:
    """Instantiate a catalog entry and verify its declared parameters."""
    builder = _BUILDERS.get(entry.family)
    if builder is None:
        raise CatalogError(f"unknown family {entry.family!r}")
    pts = builder(entry)
    _verify(entry, pts)
    return pts


def _verify(entry: CatalogEntry, pts: PointMultiset):
    if not pts.is_set():
        raise CatalogError(f"{entry.label()}: produced a multiset, not a set")
    if pts.size != entry.expected_n:
        raise CatalogError(
            f"{entry.label()}: size {pts.size}, expected {entry.expected_n}")
    if pts.ambient != entry.expected_k or not pts.is_spanning():
        raise CatalogError(
            f"{entry.label()}: spans {pts.spanning_dim()} of ambient "
            f"{pts.ambient}, expected {entry.expected_k}")
    if not is_divisible_pointset(pts, entry.expected_delta):
        raise CatalogError(
            f"{entry.label()}: not {entry.expected_delta}-divisible")


def _shift_points(pts, offset):
    return [p << offset for p in pts]


def _build_r_flat(entry: CatalogEntry) -> PointMultiset:
    return simplex_points(entry.r + 1)


def _build_affine_flat(entry: CatalogEntry) -> PointMultiset:
    return affine_flat(entry.r + 1)


def _build_two_r_flats(entry: CatalogEntry) -> PointMultiset:
    r = entry.r
    d = r + 1
    f1 = [p for p in range(1, 1 << d)]
    f2 = _shift_points(f1, d)
    return PointMultiset.from_points(2 * d, f1 + f2)


def _build_flat_plus_affine(entry: CatalogEntry) -> PointMultiset:
    r, s = entry.r, entry.s
    amb = 2 * r + 3 - s
    # Affine part in coordinates 0..r+1; hyperplane at infinity = bit r+1 clear.
    aff = [x | (1 << (r + 1)) for x in range(1 << (r + 1))]
    # Flat spans s infinity coordinates and r+1-s fresh ones.
    gens = [1 << i for i in range(s)]
    gens += [1 << (r + 2 + i) for i in range(r + 1 - s)]
    flat = Subspace.from_rows(amb, gens).points()
    both = set(aff) & set(flat)
    if both:
        raise CatalogError(f"{entry.label()}: parts overlap")
    return PointMultiset.from_points(amb, aff + flat)


def _vertex_cone(base: PointMultiset, r: int, include_vertex: bool) -> PointMultiset:
    """Generalized cone with an (r-1)-dimensional vertex flat over a
    2-divisible base; degenerates to the base itself for r = 1."""
    if r == 1:
        return base
    return cone(base, r - 2, include_vertex, expect_divisor=1 << r)


def _build_seven_flats(entry: CatalogEntry) -> PointMultiset:
    return _vertex_cone(projective_basis(6), entry.r, include_vertex=True)


def _build_eight_flats(entry: CatalogEntry) -> PointMultiset:
    return _vertex_cone(projective_basis(7), entry.r, include_vertex=False)


def _build_line_plus_basis_cone(entry: CatalogEntry) -> PointMultiset:
    line = [1, 2, 3]
    basis = [p << 2 for p in (1, 2, 4, 8, 15)]
    x = PointMultiset.from_points(6, line + basis)
    return _vertex_cone(x, entry.r, include_vertex=False)


def _build_two_affine_flats(entry: CatalogEntry) -> PointMultiset:
    r, k, variant = entry.r, entry.k, entry.variant
    d = 2 * r + 4 - k  # overlap dimension of the two ambient (r+2)-spaces
    if d == 0:
        if variant != "sym":
            raise CatalogError("k = 2r+4 has a single type")
        a1 = affine_flat(r + 1)
        pts = list(a1.point_set()) + _shift_points(a1.point_set(), r + 2)
        return PointMultiset.from_points(2 * r + 4, pts)
    if not 1 <= d <= r + 1:
        raise CatalogError(f"{entry.label()}: k outside r+3..2r+4")
    # First flat: V1 = <e_0..e_{r+1}>, infinity H1 = <e_0..e_r>.
    a1 = [x | (1 << (r + 1)) for x in range(1 << (r + 1))]
    fresh = [r + 2 + i for i in range(r + 2 - d)]
    if variant == "sym":
        # W = <e_0..e_{d-1}> inside both infinity hyperplanes.
        h2_gens = list(range(d)) + fresh[:-1]
        top = fresh[-1]
    elif variant == "asym":
        # W = <e_0..e_{d-1}>, but e_{d-1} escapes H2.
        h2_gens = list(range(d - 1)) + fresh
        top = d - 1
    else:
        raise CatalogError(f"unknown variant {entry.variant!r}")
    h2 = Subspace.from_rows(k, [1 << i for i in h2_gens])
    a2 = [x | (1 << top) for x in ([0] + h2.points())]
    both = set(a1) & set(a2)
    if both:
        raise CatalogError(f"{entry.label()}: parts overlap")
    return PointMultiset.from_points(k, a1 + a2)


def _build_three_r_flats(entry: CatalogEntry) -> PointMultiset:
    r, k = entry.r, entry.k
    j = k - (2 * r + 2)
    if not 0 <= j <= r + 1:
        raise CatalogError(f"{entry.label()}: k outside 2r+2..3r+3")
    d = r + 1
    f1 = Subspace.from_rows(k, [1 << i for i in range(d)])
    f2 = Subspace.from_rows(k, [1 << (d + i) for i in range(d)])
    gens3 = [(1 << i) | (1 << (d + i)) for i in range(d - j)]
    gens3 += [1 << (2 * d + i) for i in range(j)]
    f3 = Subspace.from_rows(k, gens3)
    pts = f1.points() + f2.points() + f3.points()
    if len(set(pts)) != len(pts):
        raise CatalogError(f"{entry.label()}: flats are not disjoint")
    return PointMultiset.from_points(k, pts)


_BUILDERS = {
    "r_flat": _build_r_flat,
    "affine_flat": _build_affine_flat,
    "two_r_flats": _build_two_r_flats,
    "flat_plus_affine": _build_flat_plus_affine,
    "seven_flats": _build_seven_flats,
    "two_affine_flats": _build_two_affine_flats,
    "eight_flats": _build_eight_flats,
    "line_plus_basis_cone": _build_line_plus_basis_cone,
    "three_r_flats": _build_three_r_flats,
}


# Explicit fixtures beyond the parametric families


def two_weight_45() -> PointMultiset:
    """The second [45,8] two-weight code: a projective basis of PG(7,F2)
    together with the third points of all 36 connecting lines."""
    basis = [1 << i for i in range(8)] + [0xFF]
    pts = set(basis)
    for i in range(9):
        for j in range(i + 1, 9):
            pts.add(basis[i] ^ basis[j])
    out = PointMultiset.from_points(8, sorted(pts))
    if out.size != 45 or not is_divisible_pointset(out, 8):
        raise CatalogError("two_weight_45 fixture failed verification")
    return out


# F4 structure on F2^4 used for the solid's line spread: coordinates pair
# into two F4 symbols (bits 0,1 and bits 2,3).
_F4_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)


def _solid_line_spread() -> list[list[int]]:
    """The five pairwise disjoint lines of the solid <e0..e3>."""
    lines = []
    for direction in ((1, 0), (0, 1), (1, 1), (1, 2), (1, 3)):
        pts = []
        for x in range(1, 4):
            a = _F4_MUL[x][direction[0]]
            b = _F4_MUL[x][direction[1]]
            pts.append(a | (b << 2))
        lines.append(sorted(pts))
    return lines


_EXAMPLE19_DIRECTIONS = {
    "i": (16, 32, 64, 112),    # planar quadrangle in the quotient
    "ii": (16, 32, 48, 64),    # a full line plus a point
    "iii": (16, 32, 64, 128),  # four points in general position
}


def example19(variant: str) -> PointMultiset:
    """The three 19-point doubly-even sets: a solid with four disjoint
    lines switched into affine planes, arranged per the quotient shape."""
    if variant not in _EXAMPLE19_DIRECTIONS:
        raise CatalogError("variant must be one of i, ii, iii")
    dirs = _EXAMPLE19_DIRECTIONS[variant]
    lines = _solid_line_spread()
    keep_line = lines[4]
    pts = list(keep_line)
    for a, line in zip(dirs, lines[:4]):
        pts.append(a)
        pts.extend(a ^ l for l in line)
    out = PointMultiset.from_points(8, pts)
    if out.size != 19 or not is_divisible_pointset(out, 4):
        raise CatalogError("example19 fixture failed verification")
    return out


# GF(2^e) arithmetic on int-packed polynomial coordinates.


def _f2e_mul(a: int, b: int, e: int) -> int:
    poly = 0
    for exp in _PRIMITIVE_POLYS[e]:
        poly |= 1 << exp
    out = 0
    x = a
    while b:
        if b & 1:
            out ^= x
        b >>= 1
        x <<= 1
        if x >> e:
            x ^= poly
    return out


def concatenate(outer_points: list[tuple[int, ...]], e: int) -> LinearCode:
    """Concatenate an even-weight code over GF(2^e), given by its projective
    points, with the binary [2^e - 1, e] simplex code.

    Each outer point blows up into the 2^e - 1 binary points of its
    GF(2^e)-span; the divisor upgrade is verified post hoc.
    """
    if e not in (2, 3, 4):
        raise CatalogError("inner degree must be 2, 3, or 4")
    k_out = len(outer_points[0])
    div_out = _outer_divisor(outer_points, e, k_out)
    if div_out % 2:
        raise CatalogError("outer code is not 2-divisible over its field")
    bin_pts = set()
    for v in outer_points:
        for lam in range(1, 1 << e):
            w = tuple(_f2e_mul(lam, c, e) for c in v)
            bin_pts.add(sum(c << (e * i) for i, c in enumerate(w)))
    k = PointMultiset.from_points(e * k_out, sorted(bin_pts))
    if k.size != len(outer_points) * ((1 << e) - 1):
        raise CatalogError("outer points were not projectively distinct")
    code = points_to_code(k)
    claimed = (1 << e) * div_out // 2
    if not is_divisible(code, claimed):
        raise CatalogError(
            f"concatenation divisor verification failed (claimed {claimed})")
    return code


def _outer_divisor(points, e, k_out) -> int:
    """gcd of the outer code's nonzero weights (brute force over functionals)."""
    q = 1 << e
    g = 0
    for idx in range(1, q**k_out):
        a = []
        t = idx
        for _ in range(k_out):
            a.append(t % q)
            t //= q
        w = 0
        for v in points:
            acc = 0
            for ai, vi in zip(a, v):
                acc ^= _f2e_mul(ai, vi, e)
            if acc:
                w += 1
        g = gcd(g, w)
    return g


def ovoid_points_pg3_f4() -> list[tuple[int, int, int, int]]:
    """The 17 points of an elliptic quadric x0 x1 = f(x2, x3) in PG(3, F4),
    f an irreducible binary quadratic form (x^2 + xy + w y^2)."""
    def f4m(a, b):
        return _f2e_mul(a, b, 2)

    def quad(x0, x1, x2, x3):
        return f4m(x0, x1) ^ f4m(x2, x2) ^ f4m(x2, x3) ^ f4m(2, f4m(x3, x3))

    pts = []
    for x0, x1, x2, x3 in _projective_reps_f4():
        if quad(x0, x1, x2, x3) == 0:
            pts.append((x0, x1, x2, x3))
    if len(pts) != 17:
        raise CatalogError(f"elliptic quadric has {len(pts)} points, expected 17")
    return pts


def _projective_reps_f4():
    reps = []
    for i in range(4):
        head = [0] * i + [1]
        free = 4 - i - 1
        for idx in range(4**free):
            tail = []
            t = idx
            for _ in range(free):
                tail.append(t % 4)
                t //= 4
            reps.append(tuple(head + tail))
    return reps


def ovoid_concat() -> LinearCode:
    """The unique [51, 8] projective triply-even code: ovoid in PG(3,F4)
    concatenated with the binary [3,2] simplex code."""
    code = concatenate(ovoid_points_pg3_f4(), 2)
    if (code.n, code.k) != (51, 8):
        raise CatalogError(f"ovoid concatenation came out [{code.n},{code.k}]")
    return code


def corollary2_spread(v: int, r: int) -> PartialSpread:
    """Maximum partial r-spread for v >= 2r+1, v = 1 (mod r): column spaces
    of (I_r ; A) with A running through a matrix representation of
    GF(2^(v-r)) stripped to r columns, iterated down the recursion, plus
    the anchor subspace on the top r coordinates."""
    if r < 2 or v < 2 * r + 1 or v % r != 1:
        raise CatalogError(f"(v, r) = ({v}, {r}) violates v >= 2r+1, v = 1 mod r")
    members = []
    vv = v
    while vv >= 2 * r + 1:
        offset = v - vv
        rep = field_rep(vv - r)
        for elem in rep.elements:
            rows = tuple(
                (1 << (offset + c)) | (elem.column(c) << (offset + r))
                for c in range(r)
            )
            members.append(Subspace(v, BitMatrix(rows, v)))
        vv -= r
    anchor = tuple(1 << (v - r + c) for c in range(r))
    members.append(Subspace(v, BitMatrix(anchor, v)))
    return PartialSpread(v, r, tuple(members))


def certified_lengths(r: int) -> dict[int, str]:
    """Lengths of projective 2^r-divisible codes this catalog constructs."""
    out: dict[int, str] = {}
    for entry in family_entries(r):
        out.setdefault(entry.expected_n, entry.label())
    if r == 2:
        out.setdefault(19, "example19")
    if r == 3:
        out.setdefault(45, "two_weight_45")
        out.setdefault(51, "ovoid_concat")
    return out

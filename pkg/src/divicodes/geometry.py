"""Point multisets in PG(k-1, F2) and the code <-> multiset dictionary.

Points are nonzero ints < 2^k (bit i = coordinate i).  A hyperplane is
named by its nonzero functional a; a point p lies on it iff the parity of
a & p is zero.  The weight of the codeword belonging to a equals the
number of points (with multiplicity) off the hyperplane.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2 import BitMatrix, rank_of_rows, span, subspace_points
from .codes import LinearCode


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class PointMultiset:
    ambient: int              # dimension k of the surrounding F2^k
    mult: tuple[tuple[int, int], ...]  # sorted (point, multiplicity) pairs

    @staticmethod
    def from_dict(ambient: int, d: dict[int, int]) -> "PointMultiset":
        for p, m in d.items():
            if p <= 0 or p >> ambient:
                raise GeometryError(f"point {p} outside nonzero vectors of F2^{ambient}")
            if m < 1:
                raise GeometryError("multiplicities must be >= 1")
        return PointMultiset(ambient, tuple(sorted(d.items())))

    @staticmethod
    def from_points(ambient: int, points) -> "PointMultiset":
        d: dict[int, int] = {}
        for p in points:
            d[p] = d.get(p, 0) + 1
        return PointMultiset.from_dict(ambient, d)

    @property
    def size(self) -> int:
        return sum(m for _, m in self.mult)

    def support(self) -> list[int]:
        return [p for p, _ in self.mult]

    def multiplicity(self, p: int) -> int:
        for q, m in self.mult:
            if q == p:
                return m
        return 0

    def is_set(self) -> bool:
        return all(m == 1 for _, m in self.mult)

    def point_set(self) -> set[int]:
        return {p for p, _ in self.mult}

    def spanning_dim(self) -> int:
        return rank_of_rows(self.support(), self.ambient)

    def is_spanning(self) -> bool:
        return self.spanning_dim() == self.ambient


@dataclass(frozen=True)
class Subspace:
    ambient: int
    basis: BitMatrix  # independent rows

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @staticmethod
    def from_rows(ambient: int, rows) -> "Subspace":
        if rank_of_rows(rows, ambient) != len(rows):
            raise GeometryError("dependent basis rows")
        return Subspace(ambient, BitMatrix(tuple(rows), ambient))

    def points(self) -> list[int]:
        return subspace_points(self.basis)

    def vectors(self) -> list[int]:
        return span(self.basis.rows)


def code_to_points(code: LinearCode) -> PointMultiset:
    cols = code.gen.columns()
    if 0 in cols:
        raise GeometryError("code has a universal zero coordinate")
    return PointMultiset.from_points(code.k, cols)


def points_to_code(k: PointMultiset) -> LinearCode:
    """Code generated by the matrix whose columns are the points.

    A non-spanning multiset is reduced to its span first, so the result's
    dimension may be smaller than the ambient.
    """
    if not k.mult:
        raise GeometryError("empty multiset has no code")
    cols = []
    for p, m in k.mult:
        cols.extend([p] * m)
    gen = BitMatrix(tuple(cols), k.ambient).transpose()
    return LinearCode.from_matrix(gen, allow_reduce=True)


def hyperplane_weight(k: PointMultiset, a: int) -> int:
    """Number of points (with multiplicity) off the hyperplane a-perp."""
    if a == 0:
        raise GeometryError("zero functional does not name a hyperplane")
    return sum(m for p, m in k.mult if (a & p).bit_count() & 1)


def is_divisible_pointset(k: PointMultiset, delta: int) -> bool:
    return all(
        hyperplane_weight(k, a) % delta == 0 for a in range(1, 1 << k.ambient)
    )


def pointset_divisibility(k: PointMultiset) -> int:
    """Largest power of two dividing every hyperplane weight."""
    g = 0
    for a in range(1, 1 << k.ambient):
        g = _gcd(g, hyperplane_weight(k, a))
    return g & -g if g else 0


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def complement(k: PointMultiset) -> PointMultiset:
    if not k.is_set():
        raise GeometryError("complement requires a set (all multiplicities 1)")
    have = k.point_set()
    rest = [p for p in range(1, 1 << k.ambient) if p not in have]
    if not rest:
        raise GeometryError("complement of the full point set is empty")
    return PointMultiset.from_points(k.ambient, rest)


def tangent_switch(k: PointMultiset, line: Subspace) -> PointMultiset:
    """Replace the point of tangency of a line by the other two points."""
    if not k.is_set():
        raise GeometryError("switching requires a point set")
    if line.dim != 2:
        raise GeometryError("switching line must have vector dimension 2")
    pts = line.points()
    inside = [p for p in pts if p in k.point_set()]
    if len(inside) != 1:
        raise GeometryError(f"line meets the set in {len(inside)} points, not tangent")
    new = k.point_set() - set(inside) | (set(pts) - set(inside))
    return PointMultiset.from_points(k.ambient, sorted(new))


def sunflower_switch(k: PointMultiset, t: Subspace, s2: Subspace) -> PointMultiset:
    """Switch the r-subspace t inside k into the affine part of s2.

    Preserves 2^r-divisibility for r = t.dim; the result is one point
    longer.
    """
    if not k.is_set():
        raise GeometryError("switching requires a point set")
    have = k.point_set()
    t_pts = set(t.points())
    if not t_pts <= have:
        raise GeometryError("switching subspace is not contained in the set")
    if s2.dim != t.dim + 1:
        raise GeometryError("s2 must have dimension dim(t) + 1")
    s2_pts = set(s2.points())
    if not t_pts <= s2_pts:
        raise GeometryError("s2 does not contain t")
    affine = s2_pts - t_pts
    if affine & have:
        raise GeometryError("affine part of s2 already meets the set")
    return PointMultiset.from_points(k.ambient, sorted((have - t_pts) | affine))


def cone(base: PointMultiset, vertex_dim: int, include_vertex: bool,
         expect_divisor: int | None = None) -> PointMultiset:
    """Cone over a base with a vertex flat of projective dimension vertex_dim.

    The base is lifted into the hyperplane "last vertex_dim+1 coordinates
    zero" of an ambient enlarged by vertex_dim+1; the vertex flat spans the
    new coordinates.  The result's divisibility is verified post hoc: with
    the base 2^r-divisible the construction claims 2^(r+s+1)-divisibility
    (s = vertex_dim), which holds for the modular |base| conditions stated
    for point vertices and is checked here rather than assumed.
    """
    s = vertex_dim
    if s < 0:
        raise GeometryError("vertex dimension must be >= 0")
    kb = base.ambient
    amb = kb + s + 1
    vertex_vecs = [w << kb for w in range(1 << (s + 1))]  # span of new coords
    d: dict[int, int] = {}
    for p, m in base.mult:
        for w in vertex_vecs:
            d[p | w] = d.get(p | w, 0) + m
    if include_vertex:
        for w in vertex_vecs:
            if w:
                d[w] = d.get(w, 0) + 1
    out = PointMultiset.from_dict(amb, d)
    if expect_divisor is None:
        r_base = pointset_divisibility(base)
        expect_divisor = r_base << (s + 1)
    if not is_divisible_pointset(out, expect_divisor):
        raise GeometryError(
            f"cone misuse: result is not {expect_divisor}-divisible "
            f"(|base|={base.size}, vertex_dim={s}, include_vertex={include_vertex})"
        )
    return out


def empty_subspace_max_dim(k: PointMultiset) -> int:
    """Largest vector-space dimension of a subspace containing no point."""
    have = k.point_set()
    free = [p for p in range(1, 1 << k.ambient) if p not in have]
    free_set = set(free)
    best = 0
    # Grow empty subspaces one dimension at a time, deduplicating by their
    # full vector set; fine for ambient dimensions at desk scale.
    current = {frozenset({0, p}): p for p in free}
    while current:
        best += 1
        nxt = {}
        for vecs, maxgen in current.items():
            for p in free:
                if p <= maxgen or p in vecs:
                    continue
                if any((v ^ p) not in free_set and (v ^ p) != 0 for v in vecs):
                    continue
                nxt[frozenset(v ^ x for v in vecs for x in (0, p))] = p
        current = nxt
    return best


def disjoint_embed(k1: PointMultiset, k2: PointMultiset, k: int) -> PointMultiset:
    """Disjoint union of copies of k1 and k2 in a common ambient dimension k.

    Realizable exactly for k1+k2-m <= k <= k1+k2 where m is the larger
    maximal empty-subspace dimension of the two multisets.
    """
    d1, d2 = k1.ambient, k2.ambient
    m1, m2 = empty_subspace_max_dim(k1), empty_subspace_max_dim(k2)
    d = d1 + d2 - k
    if d < 0 or d > max(m1, m2):
        raise GeometryError(
            f"ambient {k} outside the realizable interval "
            f"[{d1 + d2 - max(m1, m2)}, {d1 + d2}]"
        )
    if d > m1:
        k1, k2 = k2, k1
        d1, d2 = d2, d1
        m1 = m2
    # Map an empty d-subspace of k1 onto the overlap coordinates.
    first = k1
    if d > 0:
        emp = _empty_subspace(k1, d)
        basis = list(emp) + [v for v in _complete_basis(emp, d1)]
        # Change of basis sending emp to the last d coordinates.
        tr = _transform_sending(basis, d1, d)
        first = PointMultiset.from_points(
            d1, [tr[p] for p in _expand(k1)]
        )
    shift = d1 - d
    pts = _expand(first) + [p << shift for p in _expand(k2)]
    out = PointMultiset.from_points(k, pts)
    if out.size != k1.size + k2.size:
        raise GeometryError("embedding failed to keep the supports disjoint")
    return out


def _expand(k: PointMultiset) -> list[int]:
    out = []
    for p, m in k.mult:
        out.extend([p] * m)
    return out


def _empty_subspace(k: PointMultiset, d: int) -> list[int]:
    """Basis of some d-dimensional subspace avoiding the multiset."""
    have = k.point_set()
    free = [p for p in range(1, 1 << k.ambient) if p not in have]
    free_set = set(free)

    def grow(vecs: set[int], basis: list[int], start: int):
        if len(basis) == d:
            return basis
        for p in free:
            if p <= start or p in vecs:
                continue
            if any((v ^ p) and (v ^ p) not in free_set for v in vecs):
                continue
            got = grow({v ^ x for v in vecs for x in (0, p)}, basis + [p], p)
            if got:
                return got
        return None

    got = grow({0}, [], 0)
    if not got:
        raise GeometryError(f"no empty subspace of dimension {d}")
    return got


def _complete_basis(partial: list[int], dim: int) -> list[int]:
    echelon = {}
    for v in partial:
        red = v
        while red:
            lead = red.bit_length() - 1
            if lead not in echelon:
                echelon[lead] = red
                break
            red ^= echelon[lead]
    out = []
    for i in range(dim):
        v = 1 << i
        red = v
        while red:
            lead = red.bit_length() - 1
            if lead not in echelon:
                echelon[lead] = red
                out.append(v)
                break
            red ^= echelon[lead]
    return out


def _transform_sending(basis: list[int], dim: int, d: int) -> dict[int, int]:
    """Linear map (as a lookup on all vectors) sending basis[i] to target_i.

    The first d basis vectors go to the top d coordinates, the rest to the
    low coordinates in order.
    """
    targets = [1 << (dim - d + i) for i in range(d)]
    targets += [1 << i for i in range(dim - d)]
    img = {0: 0}
    for b, t in zip(basis, targets):
        img.update({v ^ b: w ^ t for v, w in img.items()})
    return img

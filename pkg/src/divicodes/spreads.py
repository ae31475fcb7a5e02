"""Partial spreads, hole sets, and the hole-code verification report."""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

from .gf2 import BitMatrix, rank_of_rows
from .geometry import PointMultiset, Subspace, points_to_code
from .codes import LinearCode, is_projective, is_divisible


class SpreadError(ValueError):
    pass


@dataclass(frozen=True)
class PartialSpread:
    v: int
    r: int
    members: tuple[Subspace, ...]

    def __post_init__(self):
        if self.r < 2:
            raise SpreadError("partial spreads assume r >= 2")
        for s in self.members:
            if s.ambient != self.v or s.dim != self.r:
                raise SpreadError("member with wrong ambient or dimension")

    @property
    def size(self) -> int:
        return len(self.members)


def validate(spread: PartialSpread) -> bool:
    """True iff all members intersect pairwise in the zero space only."""
    mats = [m.basis.rows for m in spread.members]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if rank_of_rows(mats[i] + mats[j], spread.v) != 2 * spread.r:
                return False
    return True


def covered_points(spread: PartialSpread) -> set[int]:
    out: set[int] = set()
    for m in spread.members:
        out.update(m.points())
    return out


def holes(spread: PartialSpread) -> PointMultiset:
    if not validate(spread):
        raise SpreadError("invalid partial spread")
    cov = covered_points(spread)
    rest = [p for p in range(1, 1 << spread.v) if p not in cov]
    if not rest:
        raise SpreadError("spread has no holes")
    return PointMultiset.from_points(spread.v, rest)


def hole_code(spread: PartialSpread) -> LinearCode:
    return points_to_code(holes(spread))


@dataclass(frozen=True)
class Prop1Report:
    n: int
    k: int
    v: int
    r: int
    spread_size: int
    projective: bool
    divisible: bool          # by 2^(r-1)
    length_formula: bool     # n = (2^v - 1) - |S| (2^r - 1)
    dim_bound: bool          # k <= v

    def all_pass(self) -> bool:
        return (self.projective and self.divisible
                and self.length_formula and self.dim_bound)


def prop1_check(spread: PartialSpread) -> Prop1Report:
    code = hole_code(spread)
    delta = 1 << (spread.r - 1)
    expected_n = (1 << spread.v) - 1 - spread.size * ((1 << spread.r) - 1)
    return Prop1Report(
        n=code.n,
        k=code.k,
        v=spread.v,
        r=spread.r,
        spread_size=spread.size,
        projective=is_projective(code),
        divisible=is_divisible(code, delta),
        length_formula=code.n == expected_n,
        dim_bound=code.k <= spread.v,
    )


def max_size(v: int, r: int) -> int:
    """Maximum partial r-spread size when v >= 2r+1 and v = 1 (mod r)."""
    if r < 2 or v < 2 * r + 1 or v % r != 1:
        raise SpreadError(f"(v, r) = ({v}, {r}) outside the theorem hypothesis")
    total = 1
    vv = v
    while vv >= 2 * r + 1:
        total += 1 << (vv - r)
        vv -= r
    return total


def greedy_extend(v: int, r: int, rng: Random, tries: int = 200) -> PartialSpread:
    """Randomly grown partial spread; a test generator, not a paper claim."""
    members: list[Subspace] = []
    cov: set[int] = set()
    for _ in range(tries):
        rows = []
        seen = set()
        ok = True
        for _ in range(r):
            for _ in range(50):
                cand = rng.randrange(1, 1 << v)
                if rank_of_rows(rows + [cand], v) == len(rows) + 1:
                    rows.append(cand)
                    break
            else:
                ok = False
                break
        if not ok or len(rows) != r:
            continue
        sub = Subspace(v, BitMatrix(tuple(rows), v))
        pts = set(sub.points())
        if pts & cov:
            continue
        members.append(sub)
        cov |= pts
    return PartialSpread(v, r, tuple(members))

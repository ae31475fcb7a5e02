"""Bit-packed linear algebra over GF(2).

Matrices are stored row-major with each row a Python int; bit j of a row
is the entry in column j.  This keeps row operations at single XORs and
makes matrices hashable, which the classification layer relies on.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class Gf2Error(ValueError):
    pass


@dataclass(frozen=True)
class BitMatrix:
    """Matrix over GF(2); ``rows[i] >> j & 1`` is entry (i, j)."""

    rows: tuple[int, ...]
    cols: int

    def __post_init__(self):
        if self.cols < 0:
            raise Gf2Error("negative column count")
        mask = (1 << self.cols) - 1
        for r in self.rows:
            if r < 0 or r & ~mask:
                raise Gf2Error("row has bits outside the column range")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @staticmethod
    def from_rows(rows, cols) -> "BitMatrix":
        return BitMatrix(tuple(rows), cols)

    @staticmethod
    def from_lists(lists) -> "BitMatrix":
        cols = len(lists[0]) if lists else 0
        rows = []
        for entries in lists:
            if len(entries) != cols:
                raise Gf2Error("ragged rows")
            rows.append(sum((int(e) & 1) << j for j, e in enumerate(entries)))
        return BitMatrix(tuple(rows), cols)

    @staticmethod
    def identity(n) -> "BitMatrix":
        return BitMatrix(tuple(1 << i for i in range(n)), n)

    @staticmethod
    def zero(nrows, cols) -> "BitMatrix":
        return BitMatrix((0,) * nrows, cols)

    def entry(self, i, j) -> int:
        return (self.rows[i] >> j) & 1

    def column(self, j) -> int:
        """Column j packed as an int (bit i = entry of row i)."""
        return sum(((r >> j) & 1) << i for i, r in enumerate(self.rows))

    def columns(self) -> list[int]:
        out = [0] * self.cols
        for i, r in enumerate(self.rows):
            while r:
                low = r & -r
                out[low.bit_length() - 1] |= 1 << i
                r ^= low
        return out

    def transpose(self) -> "BitMatrix":
        return BitMatrix(tuple(self.columns()), self.nrows)

    def mul(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.nrows:
            raise Gf2Error("dimension mismatch in matrix product")
        out = []
        for r in self.rows:
            acc = 0
            rr = r
            while rr:
                low = rr & -rr
                acc ^= other.rows[low.bit_length() - 1]
                rr ^= low
            out.append(acc)
        return BitMatrix(tuple(out), other.cols)

    def mul_vec(self, v: int) -> int:
        """Matrix times column vector (v packed with bit j = coordinate j)."""
        out = 0
        for i, r in enumerate(self.rows):
            out |= ((r & v).bit_count() & 1) << i
        return out

    def stack(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.cols:
            raise Gf2Error("column mismatch in stack")
        return BitMatrix(self.rows + other.rows, self.cols)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.rows]

    def __str__(self):
        return "\n".join(
            "".join(str((r >> j) & 1) for j in range(self.cols)) for r in self.rows
        )


def rref(m: BitMatrix) -> tuple[BitMatrix, int, tuple[int, ...]]:
    """Reduced row echelon form; returns (R, rank, pivot columns)."""
    rows = list(m.rows)
    pivots = []
    pivot_row = 0
    for col in range(m.cols):
        bit = 1 << col
        src = next((i for i in range(pivot_row, len(rows)) if rows[i] & bit), None)
        if src is None:
            continue
        rows[pivot_row], rows[src] = rows[src], rows[pivot_row]
        for i in range(len(rows)):
            if i != pivot_row and rows[i] & bit:
                rows[i] ^= rows[pivot_row]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == len(rows):
            break
    rank = pivot_row
    ordered = rows[:rank] + [0] * (len(rows) - rank)
    return BitMatrix(tuple(ordered), m.cols), rank, tuple(pivots)


def rank(m: BitMatrix) -> int:
    return rref(m)[1]


def rank_of_rows(rows, cols) -> int:
    return rref(BitMatrix(tuple(rows), cols))[1]


def kernel_basis(m: BitMatrix) -> BitMatrix:
    """Basis of the right kernel {x : M x = 0}, one vector per row.

    Row count is cols(M) - rank(M); every returned row x satisfies
    m.mul_vec(x) == 0.
    """
    r, rk, pivots = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    for f in free:
        v = 1 << f
        fbit = 1 << f
        for i, p in enumerate(pivots):
            if r.rows[i] & fbit:
                v |= 1 << p
        basis.append(v)
    return BitMatrix(tuple(basis), m.cols)


def solve(m: BitMatrix, target: int):
    """One x with M x = target (column-packed), or None if inconsistent."""
    aug_cols = m.cols + 1
    aug = BitMatrix(
        tuple(r | (((target >> i) & 1) << m.cols) for i, r in enumerate(m.rows)),
        aug_cols,
    )
    r, rk, pivots = rref(aug)
    if pivots and pivots[-1] == m.cols:
        return None
    x = 0
    tbit = 1 << m.cols
    for i, p in enumerate(pivots):
        if r.rows[i] & tbit:
            x |= 1 << p
    return x


def invert(m: BitMatrix) -> BitMatrix:
    """Inverse of a square invertible matrix."""
    n = m.nrows
    if n != m.cols:
        raise Gf2Error("inverse of non-square matrix")
    aug = BitMatrix(
        tuple(r | (1 << (n + i)) for i, r in enumerate(m.rows)), 2 * n
    )
    r, rk, pivots = rref(aug)
    if rk != n or pivots != tuple(range(n)):
        raise Gf2Error("matrix is singular")
    return BitMatrix(tuple(row >> n for row in r.rows[:n]), n)


# Primitive polynomials over GF(2), degree 1..16, taken from standard LFSR
# tables.  Entry m lists the exponents of x^m + ... + 1 between 0 and m.
_PRIMITIVE_POLYS = {
    1: (1, 0),
    2: (2, 1, 0),
    3: (3, 1, 0),
    4: (4, 1, 0),
    5: (5, 2, 0),
    6: (6, 1, 0),
    7: (7, 1, 0),
    8: (8, 4, 3, 2, 0),
    9: (9, 4, 0),
    10: (10, 3, 0),
    11: (11, 2, 0),
    12: (12, 6, 4, 1, 0),
    13: (13, 4, 3, 1, 0),
    14: (14, 10, 6, 1, 0),
    15: (15, 1, 0),
    16: (16, 12, 3, 1, 0),
}


@dataclass(frozen=True)
class FieldRep:
    """GF(2^m) as m x m binary matrices: {0, I, A, A^2, ...} for A primitive."""

    m: int
    poly: tuple[int, ...]
    companion: BitMatrix
    elements: tuple[BitMatrix, ...] = field(repr=False)

    def power(self, e: int) -> BitMatrix:
        """A^e for e >= 0 (A^0 = I); elements[1 + e mod (2^m - 1)]."""
        return self.elements[1 + e % (2**self.m - 1)]


def field_rep(m: int) -> FieldRep:
    """Matrix representation of GF(2^m) from a fixed primitive polynomial."""
    if not 1 <= m <= 16:
        raise Gf2Error(f"extension degree {m} outside 1..16")
    poly = _PRIMITIVE_POLYS[m]
    # Companion matrix of the polynomial: A e_i = e_{i+1}, A e_{m-1} = low terms.
    last_col = 0
    for e in poly[1:]:
        last_col |= 1 << e
    cols = [1 << (i + 1) for i in range(m - 1)] + [last_col]
    companion = BitMatrix(tuple(cols), m).transpose()
    elems = [BitMatrix.zero(m, m), BitMatrix.identity(m)]
    a = companion
    while a != BitMatrix.identity(m):
        elems.append(a)
        a = a.mul(companion)
    if len(elems) != 2**m:
        raise Gf2Error(f"polynomial table entry for m={m} is not primitive")
    return FieldRep(m, poly, companion, tuple(elems))


def span(vectors) -> list[int]:
    """All 2^d vectors spanned by the given ints (d = rank), ascending."""
    out = [0]
    echelon = {}  # leading bit -> reduced vector
    for v in vectors:
        red = v
        while red:
            lead = red.bit_length() - 1
            if lead not in echelon:
                echelon[lead] = red
                out += [x ^ v for x in out]
                break
            red ^= echelon[lead]
    return sorted(out)


def subspace_points(basis: BitMatrix) -> list[int]:
    """The 2^d - 1 nonzero vectors of the row space, ascending.

    Rows must be linearly independent.
    """
    if rank(basis) != basis.nrows:
        raise Gf2Error("basis rows are linearly dependent")
    pts = span(basis.rows)
    return [p for p in pts if p]

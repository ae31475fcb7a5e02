"""Binary linear codes: weight distributions, divisibility, duality, subcodes.

A LinearCode is a full-row-rank generator matrix in RREF, so equal codes
(as row spaces) compare equal.  Weight enumeration walks the 2^k messages
in Gray-code order, one row XOR per step; the budget is capped at k <= 28.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .gf2 import BitMatrix, Gf2Error, kernel_basis, rref, solve

WEIGHT_ENUM_MAX_K = 28


class CodeError(ValueError):
    pass


class BudgetError(RuntimeError):
    """An operation exceeded its stated enumeration budget."""


@dataclass(frozen=True)
class LinearCode:
    gen: BitMatrix  # k x n, RREF, full row rank
    n: int
    k: int

    @staticmethod
    def from_matrix(m: BitMatrix, allow_reduce: bool = False) -> "LinearCode":
        r, rk, _ = rref(m)
        if rk == 0:
            raise CodeError("zero code has no generator")
        if rk < m.nrows and not allow_reduce:
            raise CodeError(f"generator is rank-deficient (rank {rk} < {m.nrows} rows)")
        return LinearCode(BitMatrix(r.rows[:rk], m.cols), m.cols, rk)

    @staticmethod
    def from_rows(rows, n, allow_reduce: bool = False) -> "LinearCode":
        return LinearCode.from_matrix(BitMatrix(tuple(rows), n), allow_reduce)

    def codewords(self):
        """All 2^k codewords as ints (bit j = coordinate j), Gray order."""
        if self.k > WEIGHT_ENUM_MAX_K:
            raise BudgetError(f"k={self.k} above enumeration budget {WEIGHT_ENUM_MAX_K}")
        c = 0
        yield 0
        for i in range(1, 1 << self.k):
            c ^= self.gen.rows[(i & -i).bit_length() - 1]
            yield c

    def contains_word(self, word: int) -> bool:
        red = word
        for row, piv in zip(self.gen.rows, rref(self.gen)[2]):
            if (red >> piv) & 1:
                red ^= row
        return red == 0

    def __str__(self):
        return f"[{self.n},{self.k}] code\n{self.gen}"


@dataclass(frozen=True)
class WeightDistribution:
    n: int
    counts: tuple[int, ...]  # A_0 .. A_n

    def nonzero_weights(self) -> tuple[int, ...]:
        return tuple(i for i in range(1, self.n + 1) if self.counts[i])

    def total(self) -> int:
        return sum(self.counts)


def weight_distribution(code: LinearCode) -> WeightDistribution:
    counts = [0] * (code.n + 1)
    for c in code.codewords():
        counts[c.bit_count()] += 1
    return WeightDistribution(code.n, tuple(counts))


def is_divisible(code: LinearCode, delta: int) -> bool:
    if delta < 1:
        raise CodeError("divisor must be >= 1")
    wd = weight_distribution(code)
    return all(i % delta == 0 for i in wd.nonzero_weights())


def divisibility(code: LinearCode) -> int:
    """Largest power of two dividing every nonzero codeword weight."""
    wd = weight_distribution(code)
    g = 0
    for w in wd.nonzero_weights():
        g = gcd2(g, w)
    return g & -g if g else 0


def gcd2(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def is_projective(code: LinearCode) -> bool:
    """Columns of the generator pairwise distinct and nonzero."""
    cols = code.gen.columns()
    return 0 not in cols and len(set(cols)) == code.n


def dual_distance_at_least_3(code: LinearCode) -> bool:
    """Equivalent characterization of projectivity via d(C-perp) >= 3."""
    if code.k == code.n:
        return False  # dual is the zero code; convention: not projective
    d = dual(code)
    wd = weight_distribution(d)
    return wd.counts[1] == 0 and wd.counts[2] == 0


def dual(code: LinearCode) -> LinearCode:
    if code.k >= code.n:
        raise CodeError("dual of the full space is the zero code")
    ker = kernel_basis(code.gen)
    return LinearCode.from_matrix(ker)


def macwilliams(wd: WeightDistribution, k: int) -> WeightDistribution:
    """Exact binary MacWilliams transform of a weight distribution.

    B_j = 2^-k sum_i A_i K_j(i) with the binary Krawtchouk polynomial
    K_j(i) = sum_s (-1)^s C(i,s) C(n-i, j-s).  Raises CodeError naming the
    first B_j that comes out non-integral or negative.
    """
    n = wd.n
    if wd.total() != 1 << k:
        raise CodeError(f"weight distribution sums to {wd.total()}, expected 2^{k}")
    out = []
    for j in range(n + 1):
        acc = 0
        for i in range(n + 1):
            a = wd.counts[i]
            if not a:
                continue
            kraw = 0
            for s in range(j + 1):
                term = comb(i, s) * comb(n - i, j - s)
                kraw += -term if s & 1 else term
            acc += a * kraw
        b, rem = divmod(acc, 1 << k)
        if rem:
            raise CodeError(f"inconsistent input: B_{j} is not an integer")
        if b < 0:
            raise CodeError(f"inconsistent input: B_{j} = {b} < 0")
        out.append(b)
    return WeightDistribution(n, tuple(out))


def codim1_subcodes(code: LinearCode):
    """The 2^k - 1 subcodes of dimension k-1 (kernels of nonzero functionals)."""
    if code.k < 2:
        raise CodeError("codimension-1 subcodes need k >= 2")
    for u in range(1, 1 << code.k):
        yield subcode_from_functional(code, u)


def subcode_from_functional(code: LinearCode, u: int) -> LinearCode:
    """Subcode {m G : m . u = 0} for a nonzero functional u on messages."""
    rows = message_kernel_rows(code.k, u)
    gen = BitMatrix(tuple(rows), code.k).mul(code.gen)
    return LinearCode.from_matrix(gen)


def message_kernel_rows(k: int, u: int) -> list[int]:
    """Basis (as message-space ints) of the hyperplane {m : m . u = 0}."""
    lead = u.bit_length() - 1
    rows = []
    for i in range(k):
        if i == lead:
            continue
        v = 1 << i
        if (u >> i) & 1:
            v |= 1 << lead
        rows.append(v)
    return rows


def direct_sum(c1: LinearCode, c2: LinearCode) -> LinearCode:
    rows = list(c1.gen.rows) + [r << c1.n for r in c2.gen.rows]
    return LinearCode.from_rows(rows, c1.n + c2.n)


def shorten(code: LinearCode, coords) -> LinearCode:
    """Keep codewords zero on coords, then delete those coordinates."""
    coords = sorted(set(coords))
    if any(c < 0 or c >= code.n for c in coords):
        raise CodeError("shortening coordinate out of range")
    rows = list(code.gen.rows)
    # Zero out the chosen coordinates by eliminating with pivot rows.
    for c in coords:
        bit = 1 << c
        piv = next((i for i, r in enumerate(rows) if r & bit), None)
        if piv is None:
            continue
        rows = [r ^ rows[piv] if (r & bit and i != piv) else r
                for i, r in enumerate(rows)]
        del rows[piv]
    keep = [j for j in range(code.n) if j not in set(coords)]
    packed = []
    for r in rows:
        packed.append(sum(((r >> j) & 1) << i for i, j in enumerate(keep)))
    if not packed or all(p == 0 for p in packed):
        raise CodeError("shortening produced the zero code")
    return LinearCode.from_rows(packed, len(keep), allow_reduce=True)


def augment(code: LinearCode, word: int) -> LinearCode:
    if word >> code.n:
        raise CodeError("word longer than the code")
    if solve(code.gen.transpose(), word) is not None:
        raise CodeError("word already lies in the code")
    return LinearCode.from_rows(list(code.gen.rows) + [word], code.n)


def puncture_zero_columns(code: LinearCode) -> tuple[LinearCode, int]:
    """Drop identically-zero coordinates; returns (code, dropped count)."""
    cols = code.gen.columns()
    keep = [j for j, c in enumerate(cols) if c]
    if len(keep) == code.n:
        return code, 0
    rows = [sum(((r >> j) & 1) << i for i, j in enumerate(keep)) for r in code.gen.rows]
    return LinearCode.from_rows(rows, len(keep)), code.n - len(keep)


# Matrix text format shared with the CLI: first line "n k", then k lines of
# n characters from {0,1}.
def write_matrix_text(code: LinearCode) -> str:
    lines = [f"{code.n} {code.k}"]
    for r in code.gen.rows:
        lines.append("".join(str((r >> j) & 1) for j in range(code.n)))
    return "\n".join(lines) + "\n"


def parse_matrix_text(text: str) -> BitMatrix:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise CodeError("empty matrix file")
    head = lines[0].split()
    if len(head) != 2:
        raise CodeError("line 1: expected 'n k'")
    try:
        n, k = int(head[0]), int(head[1])
    except ValueError:
        raise CodeError("line 1: expected two integers 'n k'") from None
    if len(lines) - 1 != k:
        raise CodeError(f"expected {k} matrix rows, found {len(lines) - 1}")
    rows = []
    for i, ln in enumerate(lines[1:], start=2):
        if len(ln) != n:
            raise CodeError(f"line {i}: expected {n} characters, found {len(ln)}")
        bad = next((j for j, ch in enumerate(ln) if ch not in "01"), None)
        if bad is not None:
            raise CodeError(f"line {i}, column {bad + 1}: character {ln[bad]!r} not in 0/1")
        rows.append(sum(1 << j for j, ch in enumerate(ln) if ch == "1"))
    return BitMatrix(tuple(rows), n)


# Generator of the [24,12,8] extended binary Golay code: [I | B] with B the
# bordered circulant on the quadratic residues mod 11.  Verified by the
# test suite against the known weight distribution (A_8 = 759).
_QR11 = {0, 1, 3, 4, 5, 9}


def golay24() -> LinearCode:
    b_rows = [[0] + [1] * 11]
    for i in range(11):
        b_rows.append([1] + [1 if (j - i) % 11 in _QR11 else 0 for j in range(11)])
    rows = []
    for i in range(12):
        rows.append((1 << i) | sum(b << (12 + j) for j, b in enumerate(b_rows[i])))
    return LinearCode.from_rows(rows, 24)

"""Nonexistence certification and length bookkeeping for divisible codes.

The feasibility system couples the first four binary power moments of a
putative projective delta-divisible [n,k] code (projectivity forces the
dual counts B_1 = B_2 = 0 and B_3 >= 0 folds into an inequality):

    sum A_i           = 2^k - 1          (nonzero weights i, delta | i)
    sum i   A_i       = 2^(k-1) n
    sum i^2 A_i       = 2^(k-2) n (n+1)
    sum i^3 A_i      <= 2^(k-3) n^2 (n+3)
    A_i >= 0

Feasibility is decided exactly over the rationals by Gaussian elimination
on the equalities followed by Fourier-Motzkin elimination, so an
Infeasible answer is a certificate, not a numerical artifact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd


class BoundsError(ValueError):
    pass


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    certificate: tuple[str, ...] = ()

    def __bool__(self):
        return self.feasible


@dataclass(frozen=True)
class MomentSystem:
    n: int
    k: int
    delta: int
    weights: tuple[int, ...]

    @staticmethod
    def build(n: int, k: int, delta: int) -> "MomentSystem":
        if delta < 2:
            raise BoundsError("delta must be >= 2")
        if not 1 <= k <= n:
            raise BoundsError("need 1 <= k <= n")
        return MomentSystem(n, k, delta, tuple(range(delta, n + 1, delta)))

    def rows(self, cap_full_weight: bool = False):
        """(coeffs, rhs, relation) rows; relation 'eq' or 'le'."""
        n, k = self.n, self.k
        two = Fraction(2)
        out = [
            ({w: Fraction(1) for w in self.weights}, two**k - 1, "eq"),
            ({w: Fraction(w) for w in self.weights}, two ** (k - 1) * n, "eq"),
            ({w: Fraction(w * w) for w in self.weights},
             two ** (k - 2) * n * (n + 1), "eq"),
            ({w: Fraction(w**3) for w in self.weights},
             two ** (k - 3) * n * n * (n + 3), "le"),
        ]
        for w in self.weights:
            out.append(({w: Fraction(-1)}, Fraction(0), "le"))
        if cap_full_weight and self.n in self.weights:
            out.append(({self.n: Fraction(1)}, Fraction(1), "le"))
        return out


def moment_lp(n: int, k: int, delta: int, cap_full_weight: bool = False) -> LPResult:
    """Exact rational feasibility of the four-moment system."""
    system = MomentSystem.build(n, k, delta)
    trace: list[str] = []
    eqs: list[list] = []
    les: list[list] = []
    for coeffs, rhs, rel in system.rows(cap_full_weight):
        (eqs if rel == "eq" else les).append([dict(coeffs), rhs])

    # Gaussian elimination on the equalities, substituting into everything.
    for idx in range(len(eqs)):
        coeffs, rhs = eqs[idx]
        live = sorted((v, c) for v, c in coeffs.items() if c)
        if not live:
            if rhs != 0:
                trace.append(f"equalities inconsistent: 0 = {rhs}")
                return LPResult(False, tuple(trace))
            continue
        var, piv = live[0]
        trace.append(f"solve equality for A_{var}")
        sol = {v: -c / piv for v, c in coeffs.items() if v != var and c}
        sol_rhs = rhs / piv
        for row in eqs[idx + 1:] + les:
            f = row[0].pop(var, Fraction(0))
            if f:
                for v, c in sol.items():
                    row[0][v] = row[0].get(v, Fraction(0)) + f * c
                row[1] = row[1] - f * sol_rhs
    return _fm(les, trace)


def _fm(les, trace) -> LPResult:
    rows = [({v: c for v, c in coeffs.items() if c}, rhs) for coeffs, rhs in les]
    while True:
        variables = sorted({v for coeffs, _ in rows for v in coeffs})
        if not variables:
            break
        var = variables[0]
        pos, neg, rest = [], [], []
        for coeffs, rhs in rows:
            c = coeffs.get(var, Fraction(0))
            if c > 0:
                pos.append((coeffs, rhs))
            elif c < 0:
                neg.append((coeffs, rhs))
            else:
                rest.append((coeffs, rhs))
        trace.append(
            f"eliminate A_{var}: {len(pos)} upper x {len(neg)} lower bounds"
        )
        new_rows = rest
        for pc, pr in pos:
            a = pc[var]
            for nc, nr in neg:
                b = -nc[var]
                coeffs = {}
                for v, c in pc.items():
                    if v != var:
                        coeffs[v] = coeffs.get(v, Fraction(0)) + c * b
                for v, c in nc.items():
                    if v != var:
                        coeffs[v] = coeffs.get(v, Fraction(0)) + c * a
                coeffs = {v: c for v, c in coeffs.items() if c}
                new_rows.append((coeffs, pr * b + nr * a))
        rows = new_rows
    for coeffs, rhs in rows:
        if rhs < 0:
            trace.append(f"contradiction: 0 <= {rhs}")
            return LPResult(False, tuple(trace))
    return LPResult(True, ())


@lru_cache(maxsize=None)
def exclude_length(n: int, delta: int) -> bool:
    """True iff the moment LP is infeasible for every dimension 1..n."""
    return all(not moment_lp(n, k, delta).feasible for k in range(1, n + 1))


def frobenius(a: int, b: int) -> int:
    """Largest integer not of the form x*a + y*b with x, y >= 0."""
    if gcd(a, b) != 1:
        raise BoundsError(f"frobenius needs coprime arguments, got gcd {gcd(a, b)}")
    return (a - 1) * (b - 1) - 1


def eq1_bound(r: int) -> int:
    """Juxtaposition bound on F(2,r): frobenius of the two base lengths."""
    return frobenius(2 ** (r + 1) - 1, 2 ** (r + 1))


def theorem3_bound(r: int) -> int:
    """Sharpened bound F(2,r) <= 2^(2r) - 2^(r-1) - 1 (sharp for r = 2)."""
    if r < 1:
        raise BoundsError("r must be >= 1")
    return (1 << (2 * r)) - (1 << (r - 1)) - 1


def pd21_predicate(n: int, k: int) -> bool:
    """Membership of (n, k) in PD(2,1)."""
    if n < 1 or k < 1:
        return False
    return k + 1 <= n <= 2**k - 1 and n not in (2**k - 3, 2**k - 2)


@dataclass(frozen=True)
class LengthSet:
    r: int
    limit: int                    # partition computed on 1..limit
    threshold: int                # every n >= threshold is realizable
    realizable: frozenset[int]
    excluded: frozenset[int]
    unknown: frozenset[int]


def additive_closure(seeds, limit: int) -> set[int]:
    reachable = [False] * (limit + 1)
    reachable[0] = True
    for s in sorted(set(seeds)):
        if s <= 0:
            raise BoundsError("seed lengths must be positive")
        for i in range(s, limit + 1):
            if reachable[i - s]:
                reachable[i] = True
    return {i for i in range(1, limit + 1) if reachable[i]}


def length_closure(r: int, seeds, limit: int | None = None) -> LengthSet:
    """Three-way realizable/excluded/unknown partition for LPD(2,r).

    Realizable = additive closure of the certified seeds plus everything
    above the theorem bound; excluded = four-moment LP exclusions.  A
    length in both is a fatal contradiction.
    """
    delta = 1 << r
    bound = theorem3_bound(r)
    if limit is None:
        limit = bound + (1 << (r + 1))
    threshold = bound + 1
    realizable = additive_closure(seeds, limit)
    realizable.update(range(threshold, limit + 1))
    excluded = {n for n in range(1, limit + 1)
                if n not in realizable and exclude_length(n, delta)}
    conflict = sorted(n for n in realizable if exclude_length(n, delta))
    if conflict:
        raise BoundsError(
            f"fatal: lengths {conflict} are both certified and LP-excluded"
        )
    unknown = set(range(1, limit + 1)) - realizable - excluded
    return LengthSet(
        r=r,
        limit=limit,
        threshold=threshold,
        realizable=frozenset(realizable),
        excluded=frozenset(excluded),
        unknown=frozenset(unknown),
    )

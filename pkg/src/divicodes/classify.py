"""Isomorph-free exhaustive classification of projective divisible codes.

Two engines:

* classify_2divisible - descends from the [n, n-1] even-weight code
  through codimension-1 subcodes, pruning non-projective codes (sound
  because supercodes of projective codes are projective) and
  deduplicating by canonical key.  Functionals are enumerated up to the
  parent's automorphism action.

* classify_divisible (delta in {4, 8}) - grows full-support
  delta-divisible codes one generator at a time.  A new generator is a
  dual vector v plus t fresh all-one coordinates; since <C, v> = <C, v+c>
  children correspond to cosets of the parent, so candidates are
  enumerated per coset: a quotient-representative parity pattern on the
  distinct-column classes plus per-class one-counts.  For delta = 8 the
  extra condition |v and c| = 0 (mod 4) against every parent codeword is
  checked before accepting a candidate.

Both dedupe globally by canonical key per level, which makes output
independent of worker count and schedule.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, asdict
from multiprocessing import Pool

import numpy as np

from .canon import CanonResult, canonize
from .codes import BudgetError, LinearCode, message_kernel_rows
from .gf2 import BitMatrix, invert, kernel_basis, rref

MAX_N_2DIV = 14
MAX_N_4DIV = 22
MAX_N_8DIV = 32


class ClassifyError(ValueError):
    pass


@dataclass(frozen=True)
class ClassRecord:
    n: int
    k: int
    delta: int
    key: str                 # hex canonical key
    wd: tuple[int, ...]
    projective: bool
    origin: str
    aut_order: int | None = None

    def to_json(self) -> str:
        d = asdict(self)
        d["wd"] = list(d["wd"])
        return json.dumps(d, sort_keys=True)

    @staticmethod
    def from_json(line: str) -> "ClassRecord":
        d = json.loads(line)
        return ClassRecord(
            n=d["n"], k=d["k"], delta=d["delta"], key=d["key"],
            wd=tuple(d["wd"]), projective=d["projective"],
            origin=d["origin"], aut_order=d.get("aut_order"),
        )


@dataclass(frozen=True)
class _Node:
    points: tuple[int, ...]
    mults: tuple[int, ...]
    ambient: int
    key: bytes
    wd: tuple[int, ...]
    gens: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return sum(self.mults)

    def projective(self) -> bool:
        return all(m == 1 for m in self.mults)


def _node_from_canon(res: CanonResult) -> _Node:
    return _Node(res.points, res.mults, res.ambient, res.key,
                 res.weights, res.aut_gens)


def node_code(node: _Node) -> LinearCode:
    cols = []
    for p, m in zip(node.points, node.mults):
        cols.extend([p] * m)
    return LinearCode.from_matrix(BitMatrix(tuple(cols), node.ambient).transpose())


# ---------------------------------------------------------------- 2-divisible

def classify_2divisible(n_max: int, workers: int = 1):
    """Projective 2-divisible classes for every length 3..n_max.

    Returns {n: {k: [_Node, ...]}} with node lists sorted by key.
    """
    if n_max > MAX_N_2DIV:
        raise BudgetError(f"n_max={n_max} above the 2-divisible budget {MAX_N_2DIV}")
    out = {}
    for n in range(3, n_max + 1):
        out[n] = _classify_2div_single(n, workers)
    return out


def _classify_2div_single(n: int, workers: int):
    root_pts = tuple(1 << i for i in range(n - 1)) + ((1 << (n - 1)) - 1,)
    root = _node_from_canon(canonize(sorted(root_pts), [1] * n, n - 1))
    levels = {n - 1: [root]}
    current = [root]
    k = n - 1
    while k >= 3 and current:
        jobs = [(node.points, node.ambient, node.gens, n) for node in current]
        results = _run_jobs(_descend_worker, jobs, workers)
        nxt: dict[bytes, _Node] = {}
        for childlist in results:
            for res in childlist:
                node = _node_from_canon(res)
                nxt.setdefault(node.key, node)
        current = [nxt[key] for key in sorted(nxt)]
        k -= 1
        if current:
            levels[k] = current
    return levels


def _descend_worker(args):
    points, ambient, gens, n = args
    k = ambient
    cols = list(points)
    gen_matrix = LinearCode.from_matrix(
        BitMatrix(tuple(cols), k).transpose()).gen
    reps = _functional_orbit_reps(gen_matrix, k, gens)
    out = []
    for u in reps:
        rows = BitMatrix(tuple(message_kernel_rows(k, u)), k).mul(gen_matrix)
        child_cols = rows.columns()
        if 0 in child_cols:
            continue
        if len(set(child_cols)) != n:
            continue
        out.append(canonize(sorted(child_cols), [1] * n, k - 1))
    return out


def _functional_orbit_reps(gen_matrix: BitMatrix, k: int, gens) -> list[int]:
    """Nonzero message functionals up to the code's automorphism action."""
    total = 1 << k
    if not gens or total <= 256:
        return list(range(1, total))
    cols = gen_matrix.columns()
    _, _, pivots = rref(gen_matrix)
    actions = []
    for g in gens:
        ginv = [0] * len(g)
        for i, x in enumerate(g):
            ginv[x] = i
        m_cols = [cols[ginv[p]] for p in pivots]
        m = BitMatrix(tuple(m_cols), k).transpose()
        n_mat = invert(m)
        table = np.zeros(total, dtype=np.int64)
        for i in range(k):
            step = 1 << i
            table[step: 2 * step] = table[:step] ^ n_mat.mul_vec(1 << i)
        actions.append(table)
    seen = np.zeros(total, dtype=bool)
    seen[0] = True
    reps = []
    for u in range(1, total):
        if seen[u]:
            continue
        reps.append(u)
        frontier = [u]
        seen[u] = True
        while frontier:
            x = frontier.pop()
            for table in actions:
                y = int(table[x])
                if not seen[y]:
                    seen[y] = True
                    frontier.append(y)
    return reps


# ------------------------------------------------------- 4- and 8-divisible

def classify_divisible(delta: int, n_max: int, workers: int = 1,
                       k_max: int | None = None):
    """All full-support delta-divisible classes of length <= n_max.

    Returns {(n, k): [_Node, ...]}, node lists sorted by key.  Projective
    classes are the nodes whose multiplicities are all 1.
    """
    if delta == 4:
        budget = MAX_N_4DIV
    elif delta == 8:
        budget = MAX_N_8DIV
    else:
        raise ClassifyError("delta must be 4 or 8 for the augmentation engine")
    if n_max > budget:
        raise BudgetError(f"n_max={n_max} above the {delta}-divisible budget {budget}")
    table: dict[tuple[int, int], list[_Node]] = {}
    current: list[_Node] = []
    for m in range(delta, n_max + 1, delta):
        node = _node_from_canon(canonize((1,), (m,), 1))
        current.append(node)
        table[(m, 1)] = [node]
    j = 1
    while current and (k_max is None or j < k_max):
        jobs = [(node.points, node.mults, node.ambient, node.gens, delta, n_max)
                for node in current]
        results = _run_jobs(_augment_worker, jobs, workers)
        nxt: dict[bytes, _Node] = {}
        for childlist in results:
            for res in childlist:
                node = _node_from_canon(res)
                nxt.setdefault(node.key, node)
        current = [nxt[key] for key in sorted(nxt)]
        j += 1
        for node in current:
            table.setdefault((node.size, j), []).append(node)
    return table


def _augment_worker(args):
    points, mults, ambient, gens, delta, n_max = args
    out = []
    for child_pts, child_ms in _extensions(points, mults, ambient, gens,
                                           delta, n_max):
        out.append(canonize(child_pts, child_ms, ambient + 1))
    return out


def _extensions(points, mults, ambient, gens, delta, n_max):
    """Children (points, mults) of a full-support delta-divisible code.

    A child is <C, v> for a dual vector v plus t fresh all-one columns;
    <C, v> = <C, v+c>, so v runs over cosets.  On the distinct-column
    classes a codeword c flips the one-count of class i to s_i - b_i
    where c is 1, so its parity action is the pattern masked to classes
    of odd size; parity representatives are enumerated in the kernel of
    the class matrix modulo that masked pattern space, and one-counts
    fill in the magnitudes.  All dedup beyond that is an optimization:
    duplicates fall to the global canonical-key dedup.
    """
    p_count = len(points)
    j = ambient
    m = sum(mults)
    slack = n_max - m
    if slack < 0:
        return
    top = 1 << j

    # Class patterns of all codewords, packed over the p_count classes.
    pat_basis = []
    for r in range(j):
        pat_basis.append(sum(((points[i] >> r) & 1) << i for i in range(p_count)))
    patterns = [0]
    for pb in pat_basis:
        patterns += [x ^ pb for x in patterns]
    raw_echelon = _echelon(pat_basis)

    odd_mask = sum(1 << i for i in range(p_count) if mults[i] & 1)
    parity_echelon = _echelon([pb & odd_mask for pb in pat_basis])

    # Kernel of the class matrix: parity vectors whose chosen classes XOR
    # to zero (membership of the new generator in the dual).
    kernel = kernel_basis(BitMatrix(tuple(pat_basis), p_count)).rows

    # Coset representatives of the parity space modulo codeword action.
    q_basis = []
    q_ech = dict(parity_echelon)
    for v in kernel:
        red = _reduce_ech(v, q_ech)
        if red:
            q_ech[red.bit_length() - 1] = red
            q_basis.append(red)
    reps = [0]
    for qb in q_basis:
        reps += [x ^ qb for x in reps]

    # Patterns acting trivially on parities still flip magnitudes on
    # even-size classes; canonicalizing over them kills coset duplicates.
    even_sub = [c for c in patterns if (c & odd_mask) == 0] \
        if len(patterns) <= 2048 else [0]

    fat = [i for i in range(p_count) if mults[i] > 1]
    if not fat and len(reps) >= 4096:
        yield from _extensions_flat_numpy(points, mults, p_count, patterns,
                                          raw_echelon, reps, delta,
                                          slack, top)
        return

    seen = set()
    for eps in reps:
        for b in _magnitude_choices(eps, mults, fat):
            w = sum(b)
            t0 = (-w) % delta
            if t0 > slack:
                continue
            if delta == 8 and not _mod4_ok(b, patterns):
                continue
            key = _coset_canonical(b, mults, even_sub)
            if gens:
                key = _gens_canonical(key, gens, mults, even_sub)
            if key in seen:
                continue
            seen.add(key)
            for t in range(t0, slack + 1, delta):
                if t == 0 and _degenerate(b, mults, raw_echelon):
                    continue
                yield _child(points, mults, b, t, top)


def _extensions_flat_numpy(points, mults, p_count, patterns, pattern_echelon,
                           reps, delta, slack, top):
    arr = np.array(reps, dtype=np.uint64)
    w = _popcount64(arr)
    valid = np.ones(len(arr), dtype=bool)
    if delta == 8:
        for c in patterns:
            if not valid.any():
                break
            inter = _popcount64(arr & np.uint64(c))
            valid &= (inter & 3) == 0
    idx = np.nonzero(valid)[0]
    for i in idx:
        eps = int(arr[i])
        b = [(eps >> cl) & 1 for cl in range(p_count)]
        wt = int(w[i])
        t0 = (-wt) % delta
        for t in range(t0, slack + 1, delta):
            if t == 0 and _degenerate(b, mults, pattern_echelon):
                continue
            yield _child(points, mults, b, t, top)


def _popcount64(a):
    a = a.astype(np.uint64)
    out = np.zeros(a.shape, dtype=np.int64)
    x = a.copy()
    while True:
        if not x.any():
            break
        out += (x & np.uint64(1)).astype(np.int64)
        x >>= np.uint64(1)
    return out


def _magnitude_choices(eps, mults, fat):
    base = [(eps >> i) & 1 for i in range(len(mults))]
    if not fat:
        yield base
        return
    par = tuple(base)

    def rec(idx, cur):
        if idx == len(fat):
            yield list(cur)
            return
        i = fat[idx]
        for extra in range(0, mults[i] - par[i] + 1, 2):
            cur[i] = par[i] + extra
            yield from rec(idx + 1, cur)
        cur[i] = par[i]

    yield from rec(0, base)


def _mod4_ok(b, patterns):
    for c in patterns:
        acc = 0
        cc = c
        while cc:
            low = cc & -cc
            acc += b[low.bit_length() - 1]
            cc ^= low
        if acc & 3:
            return False
    return True


def _degenerate(b, mults, pattern_echelon):
    """True when the new generator with t = 0 lies in the parent code."""
    y = 0
    for i, (bi, si) in enumerate(zip(b, mults)):
        if bi == si:
            y |= 1 << i
        elif bi != 0:
            return False
    return _reduce_ech(y, pattern_echelon) == 0


def _coset_canonical(b, mults, even_sub):
    """Minimum of b over patterns that keep the parity vector fixed."""
    if len(even_sub) <= 1:
        return tuple(b)
    best = tuple(b)
    for c in even_sub:
        if not c:
            continue
        cand = list(b)
        cc = c
        while cc:
            low = cc & -cc
            i = low.bit_length() - 1
            cand[i] = mults[i] - cand[i]
            cc ^= low
        tc = tuple(cand)
        if tc < best:
            best = tc
    return best


def _gens_canonical(b, gens, mults, even_sub):
    """Orbit minimum of a coset-canonical b under parent automorphisms.

    Conservative: orbits are explored through coset-canonical forms, so
    two equal keys always mean equivalent children; duplicates that slip
    through fall to the global key dedup.
    """
    start = tuple(b)
    best = start
    seen = {start}
    frontier = [start]
    while frontier and len(seen) < 2000:
        x = frontier.pop()
        for g in gens:
            moved = [0] * len(x)
            for i, xi in enumerate(x):
                moved[g[i]] = xi
            tf = _coset_canonical(moved, mults, even_sub)
            if tf not in seen:
                seen.add(tf)
                frontier.append(tf)
                if tf < best:
                    best = tf
    return best


def _echelon(vectors):
    ech = {}
    for v in vectors:
        red = _reduce_ech(v, ech)
        if red:
            ech[red.bit_length() - 1] = red
    return ech


def _reduce_ech(v, ech):
    r = v
    while r:
        lead = r.bit_length() - 1
        e = ech.get(lead)
        if e is None:
            break
        r ^= e
    return r


def _child(points, mults, b, t, top):
    pts = []
    ms = []
    for p, s, bi in zip(points, mults, b):
        if bi < s:
            pts.append(p)
            ms.append(s - bi)
        if bi > 0:
            pts.append(p | top)
            ms.append(bi)
    if t:
        pts.append(top)
        ms.append(t)
    order = sorted(range(len(pts)), key=lambda i: pts[i])
    return [pts[i] for i in order], [ms[i] for i in order]


# ------------------------------------------------------------------- shared

def _run_jobs(fn, jobs, workers):
    if workers <= 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    with Pool(workers) as pool:
        return pool.map(fn, jobs, chunksize=max(1, len(jobs) // (4 * workers)))


def records_2divisible(levels_by_n, origin="even-weight-descent"):
    out = []
    for n, levels in sorted(levels_by_n.items()):
        for k, nodes in sorted(levels.items()):
            for node in nodes:
                out.append(ClassRecord(
                    n=n, k=k, delta=2, key=node.key.hex(), wd=node.wd,
                    projective=True, origin=origin))
    return out


def records_divisible(table, delta, origin="generator-augmentation"):
    out = []
    for (n, k), nodes in sorted(table.items()):
        for node in nodes:
            out.append(ClassRecord(
                n=n, k=k, delta=delta, key=node.key.hex(), wd=node.wd,
                projective=node.projective(), origin=origin))
    return out


def counts_table(records, projective_only=True):
    """{n: {k: count}} over the given records."""
    out: dict[int, dict[int, int]] = {}
    for rec in records:
        if projective_only and not rec.projective:
            continue
        out.setdefault(rec.n, {}).setdefault(rec.k, 0)
        out[rec.n][rec.k] += 1
    return out


# ------------------------------------------------------------------ database

class ClassDB:
    """Keyed store of classification records with JSONL persistence."""

    def __init__(self):
        self._by_key: dict[str, ClassRecord] = {}

    def insert(self, record: ClassRecord) -> bool:
        if not record.key or record.n < record.k:
            raise ClassifyError("malformed record")
        if record.key in self._by_key:
            return False
        self._by_key[record.key] = record
        return True

    def query(self, n=None, k=None, delta=None, projective=None):
        out = []
        for key in sorted(self._by_key):
            rec = self._by_key[key]
            if n is not None and rec.n != n:
                continue
            if k is not None and rec.k != k:
                continue
            if delta is not None and rec.delta != delta:
                continue
            if projective is not None and rec.projective != projective:
                continue
            out.append(rec)
        return out

    def __len__(self):
        return len(self._by_key)

    def save(self, path):
        with open(path, "w") as fh:
            for key in sorted(self._by_key):
                fh.write(self._by_key[key].to_json() + "\n")

    @staticmethod
    def load(path) -> "ClassDB":
        db = ClassDB()
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if line:
                    db.insert(ClassRecord.from_json(line))
        return db

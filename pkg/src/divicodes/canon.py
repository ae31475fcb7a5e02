"""Canonical forms for spanning point multisets under the GL(k,2) action.

Permutation equivalence of binary codes is the GL(k,2) action on the
column multiset, so a canonical relabeling of the multiset doubles as a
canonical form for the code.

The search builds an ordered basis out of the support points.  Once a
basis prefix is fixed, every support point inside its span has a unique
expansion mask, so branching happens only over the choice of the next
basis point.  Each step emits one token per point: spanned points first
(ascending mask), then the new basis point's color class.  The token
string is minimized lexicographically over all basis sequences; the
minimal string is the canonical labeling, and pairs of orderings that
reach it yield automorphisms whose orbits prune the search on symmetric
inputs.

Point colors are refined beforehand with the invariant "how many
codewords of each weight touch this column", which keeps the branching
factor near 1 on generic inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codes import BudgetError, LinearCode
from .gf2 import BitMatrix

CANON_MAX_K = 16
CANON_MAX_POINTS = 64

_BASIS_TOKEN = 1 << 80
_H_MASK = (1 << 64) - 1
_H_PRIME = 0x100000001B3


@dataclass(frozen=True)
class CanonResult:
    key: bytes                      # serialized canonical multiset; the class id
    points: tuple[int, ...]         # canonical support points, ascending
    mults: tuple[int, ...]
    ambient: int
    weights: tuple[int, ...]        # weight distribution A_0..A_n of the code
    aut_gens: tuple[tuple[int, ...], ...]  # perms of the input support indices

    def aut_order(self) -> int:
        return _perm_group_order(self.aut_gens, len(self.points))


def canonize(points, mults, ambient: int, exact_aut: bool = False) -> CanonResult:
    """Canonical form of a spanning multiset of nonzero points in F2^ambient.

    With exact_aut a second, equality-only search pass reruns against the
    settled minimum so the returned generators generate the full
    automorphism group; without it they are a (often complete) subset,
    which is all the classification engines need for pruning.
    """
    pts = list(points)
    ms = list(mults)
    p_count = len(pts)
    if ambient > CANON_MAX_K or p_count > CANON_MAX_POINTS:
        raise BudgetError(
            f"canonical form budget exceeded (k={ambient}, support={p_count})"
        )
    colors, color_table, wd, pair = _point_colors(pts, ms, ambient)
    # Big tie classes stall the search; refine the pair matrix by
    # Weisfeiler-Leman rounds and feed it to the candidate tokens.  The
    # decision depends only on invariant data, so isomorphic inputs take
    # the same branch and keys stay comparable.
    use_pair = None
    class_sizes: dict[int, int] = {}
    for c in colors:
        class_sizes[c] = class_sizes.get(c, 0) + 1
    if p_count >= 8 and max(class_sizes.values()) >= 6:
        use_pair, colors, color_table = _wl2_refine(pair, colors, color_table)
    searcher = _Searcher(pts, colors, ambient, pair=use_pair)
    searcher.run(collect_only=False)
    if exact_aut:
        searcher.run(collect_only=True)
    canon_pts, canon_ms, token_rank = _decode(searcher.best, color_table)
    key = _serialize(ambient, canon_pts, canon_ms)
    # Transport automorphisms from input indices to canonical indices.
    relabel = [0] * p_count
    for token_idx, input_idx in enumerate(searcher.best_emit):
        relabel[input_idx] = token_rank[token_idx]
    gens_c = []
    for g in searcher.gens:
        gc = [0] * p_count
        for i in range(p_count):
            gc[relabel[i]] = relabel[g[i]]
        gens_c.append(tuple(gc))
    return CanonResult(
        key=key,
        points=tuple(canon_pts),
        mults=tuple(canon_ms),
        ambient=ambient,
        weights=tuple(int(x) for x in wd),
        aut_gens=tuple(gens_c),
    )


def canonize_code(code: LinearCode, exact_aut: bool = False) -> CanonResult:
    """Canonical form of a code via its column multiset (no zero columns)."""
    cols = code.gen.columns()
    if 0 in cols:
        raise ValueError("code has a zero coordinate; strip it first")
    d: dict[int, int] = {}
    for c in cols:
        d[c] = d.get(c, 0) + 1
    pts = sorted(d)
    return canonize(pts, [d[p] for p in pts], code.k, exact_aut=exact_aut)


def canonical_code(res: CanonResult) -> LinearCode:
    cols = []
    for p, m in zip(res.points, res.mults):
        cols.extend([p] * m)
    return LinearCode.from_matrix(BitMatrix(tuple(cols), res.ambient).transpose())


def _point_colors(pts, ms, k):
    """Invariant colors, the color table, the code's wd, and pair data.

    Colors come from per-column weight profiles refined once by pairwise
    joint-incidence moments; the pair matrix is also returned so the
    search can discriminate candidates against the emitted prefix, which
    is what keeps the branching factor down on codes whose points all
    look alike globally.
    """
    p_count = len(pts)
    n = sum(ms)
    v = np.zeros((1 << k, p_count), dtype=np.uint8)
    pts_arr = np.asarray(pts, dtype=np.int64)
    for i in range(k):
        step = 1 << i
        v[step: 2 * step] = v[:step] ^ ((pts_arr >> i) & 1).astype(np.uint8)
    w = v @ np.asarray(ms, dtype=np.int64)
    wd = np.bincount(w, minlength=n + 1)
    profs = []
    for j in range(p_count):
        prof = np.bincount(w[v[:, j].astype(bool)], minlength=n + 1)
        profs.append((ms[j],) + tuple(int(x) for x in prof))
    # Joint moments: J1 = sum of w, J2 = sum of w^2 over codewords hitting
    # both columns.  float32 BLAS is exact while the sums stay below 2^24.
    if (1 << k) * n * n < (1 << 24):
        vf = v.astype(np.float32)
        j1 = (vf.T @ (vf * w[:, None].astype(np.float32))).astype(np.int64)
        j2 = (vf.T @ (vf * ((w * w)[:, None]).astype(np.float32))).astype(np.int64)
    else:
        vi = v.astype(np.int64)
        j1 = vi.T @ (vi * w[:, None])
        j2 = vi.T @ (vi * (w * w)[:, None])
    pair = ((j1 << 35) + j2).tolist()
    if len(set(profs)) < p_count:
        base = {t: i for i, t in enumerate(sorted(set(profs)))}
        ids = [base[t] for t in profs]
        refined = []
        for p in range(p_count):
            row = pair[p]
            pairs = sorted(
                (ids[q], row[q]) for q in range(p_count) if q != p
            )
            refined.append(profs[p] + tuple(x for tr in pairs for x in tr))
        profs = refined
    table = sorted(set(profs))
    index = {t: i for i, t in enumerate(table)}
    return [index[t] for t in profs], table, wd, pair


class _Chain:
    """Incremental Schreier-Sims stabilizer chain along a fixed base.

    S[i] holds strong generators fixing base[:i] pointwise; T[i] is the
    transversal of the orbit of base[i] under <S[i]>.  Insertion sifts
    through the chain and processes Schreier generators to closure, so
    stab_gens(m) generates the full pointwise stabilizer of base[:m]
    within the inserted group.
    """

    def __init__(self, base, degree):
        self.base = list(base)
        self.degree = degree
        self.identity = tuple(range(degree))
        self.S: list[list[tuple[int, ...]]] = [[] for _ in self.base]
        self.T: list[dict[int, tuple[int, ...]]] = [
            {b: self.identity} for b in self.base
        ]
        self._done: list[set[tuple[int, int]]] = [set() for _ in self.base]

    def _sift(self, g):
        """Reduce g by the chain; returns (residue, level) or (None, _)."""
        for i, b in enumerate(self.base):
            x = g[b]
            if x == b:
                continue
            t = self.T[i].get(x)
            if t is None:
                return g, i
            g = _compose(_inverse(t), g)
        return (None, 0) if g == self.identity else (g, len(self.base))

    def add(self, gen) -> None:
        queue = [gen]
        while queue:
            g = queue.pop()
            g, level = self._sift(g)
            if g is None or level >= len(self.base):
                continue
            self.S[level].append(g)
            for j in range(level, -1, -1):
                queue.extend(self._close_orbit(j))

    def _close_orbit(self, j):
        """Extend T[j] under S[j]; returns unsifted new Schreier gens.

        Each (orbit point, generator) pair is processed once over the
        chain's lifetime.
        """
        gens = self.S[j]
        t = self.T[j]
        done = self._done[j]
        schreier = []
        again = True
        while again:
            again = False
            for x in list(t):
                tx = t[x]
                for gi, g in enumerate(gens):
                    if (x, gi) in done:
                        continue
                    done.add((x, gi))
                    y = g[x]
                    ty = t.get(y)
                    if ty is None:
                        t[y] = _compose(g, tx)
                        again = True
                    else:
                        s = _compose(_inverse(ty), _compose(g, tx))
                        if s != self.identity:
                            schreier.append(s)
        return schreier

    def stab_gens(self, m) -> list[tuple[int, ...]]:
        out = []
        for j in range(m, len(self.base)):
            out.extend(self.S[j])
        return out


class _Budget(Exception):
    pass


class _Searcher:
    """DFS for the minimal token string with automorphism pruning."""

    def __init__(self, pts, colors, k, pair=None, budget=None):
        self.pts = pts
        self.colors = colors
        self.k = k
        self.pair = pair
        self.budget = budget
        self.nodes = 0
        self.best: list[int] | None = None
        self.best_emit: list[int] | None = None
        self.best_version = 0
        self.gens: list[tuple[int, ...]] = []
        self._gen_set: set[tuple[int, ...]] = set()
        self.chain: _Chain | None = None
        self.out: list[int] = []
        self.emit: list[int] = []  # point indices, parallel to out

    def run(self, collect_only: bool) -> bool:
        self.out.clear()
        self.emit.clear()
        self.nodes = 0
        try:
            self._dfs({}, list(range(len(self.pts))), tight=collect_only,
                      on_path=True)
        except _Budget:
            return False
        return True

    def _active_gens(self):
        """Generators fixing the current emitted prefix pointwise."""
        emit = self.emit
        if self.chain is None and self.best_emit is not None:
            self.chain = _Chain(self.best_emit, len(self.pts))
            for g in self.gens:
                self.chain.add(g)
        m = 0
        if self.chain is not None:
            base = self.chain.base
            while m < len(emit) and m < len(base) and emit[m] == base[m]:
                m += 1
            gens = self.chain.stab_gens(m)
            if m == len(emit):
                return gens
            rest = emit[m:]
            return [g for g in gens if all(g[e] == e for e in rest)]
        return [g for g in self.gens if all(g[e] == e for e in emit)]

    def _dfs(self, piv, remaining, tight, on_path):
        """piv: leading bit -> (reduced basis combination, its mask).

        tight means out[:pos] equals best[:pos]; only then is positional
        pruning against best valid.  Off the canonical path one
        automorphism per subtree is enough, so the return value (an equal
        leaf was seen) aborts the enclosing sibling subtree.
        """
        if not remaining:
            return self._leaf(tight)
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _Budget
        pos0 = len(self.out)
        colors = self.colors
        red = {}
        groups: dict[int, list[int]] = {}
        for qi in remaining:
            r, mask = _reduce(self.pts[qi], piv)
            red[qi] = (r, mask)
            groups.setdefault(r, []).append(qi)
        cmin = min(colors[qi] for qi in remaining)
        level_bit = 1 << len(piv)

        pair = self.pair
        emit = self.emit
        entries = []
        for p in remaining:
            if colors[p] != cmin:
                continue
            rp, mp = red[p]
            newmask = mp ^ level_bit
            h = 0
            if pair is not None:
                # Discriminate same-color candidates by their pair trace
                # against the emitted prefix (invariant, so sound).
                h = 0xCBF29CE484222325
                row = pair[p]
                for e in emit:
                    h = ((h ^ row[e]) * _H_PRIME) & _H_MASK
            batch = sorted((red[q][1] ^ newmask, q) for q in groups[rp] if q != p)
            tokens = [_BASIS_TOKEN | (cmin << 64) | h] + [
                (m << 8) | colors[q] for m, q in batch
            ]
            entries.append((tokens, p, rp, newmask, batch))
        entries.sort(key=lambda e: (e[0], e[1]))

        covered: set[int] = set()
        gen_mark = -1
        active: list[tuple[int, ...]] = []
        found_equal = False
        first_tight_child = True
        for tokens, p, rp, newmask, batch in entries:
            if p in covered:
                continue
            if len(self.gens) != gen_mark:
                active = self._active_gens()
                gen_mark = len(self.gens)
            if active:
                _orbit_into(covered, p, active)
            else:
                covered.add(p)

            child_tight = tight
            if tight:
                best = self.best
                prune = False
                for i, t in enumerate(tokens):
                    b = best[pos0 + i]
                    if t > b:
                        prune = True
                        break
                    if t < b:
                        child_tight = False
                        break
                if prune:
                    continue

            del self.out[pos0:]
            del self.emit[pos0:]
            self.out.extend(tokens)
            self.emit.append(p)
            self.emit.extend(q for _, q in batch)
            lead = rp.bit_length() - 1
            piv[lead] = (rp, newmask)
            child_remaining = [q for q in remaining if q != p and red[q][0] != rp]
            child_on_path = on_path and child_tight and first_tight_child
            if child_tight:
                first_tight_child = False
            version = self.best_version
            found = self._dfs(piv, child_remaining, child_tight, child_on_path)
            del piv[lead]
            if version != self.best_version:
                # The canonical path moved; recompute this node's relation
                # to it before relying on path-based pruning.
                del self.out[pos0:]
                del self.emit[pos0:]
                best_prefix = self.best[:pos0]
                on_path = self.best_emit[:pos0] == self.emit
                if self.out == best_prefix:
                    tight = True
                elif self.out > best_prefix:
                    return found_equal or found
                else:
                    tight = False
                first_tight_child = True
            if found:
                found_equal = True
                if not on_path:
                    break
        del self.out[pos0:]
        del self.emit[pos0:]
        return found_equal

    def _leaf(self, tight) -> bool:
        out = self.out
        if self.best is None or (not tight and out < self.best):
            self.best = out.copy()
            self.best_emit = self.emit.copy()
            self.best_version += 1
            self.chain = None  # base changed; rebuilt lazily from gens
            return False
        if out == self.best:
            if self.emit != self.best_emit:
                g = [0] * len(self.pts)
                for a, b in zip(self.best_emit, self.emit):
                    g[a] = b
                tg = tuple(g)
                if tg not in self._gen_set:
                    self._gen_set.add(tg)
                    self.gens.append(tg)
                    if self.chain is not None:
                        self.chain.add(tg)
            return True
        return False


def _wl2_refine(pair, colors, color_table, rounds=2):
    """Weisfeiler-Leman refinement on the pair matrix.

    Re-encodes pair values by their relation profiles through third
    points, which breaks design-like tie structures that defeat the
    static moments; colors are re-derived from the refined rows.
    """
    p_count = len(pair)
    cur = [row[:] for row in pair]
    for i in range(p_count):
        cur[i][i] = -1 - colors[i]  # keep the diagonal tied to point colors
    for _ in range(rounds):
        raw = [[None] * p_count for _ in range(p_count)]
        for p in range(p_count):
            for q in range(p_count):
                raw[p][q] = (cur[p][q], tuple(sorted(zip(cur[p], cur[q]))))
        index = {s: i for i, s in enumerate(sorted({s for row in raw for s in row}))}
        before = len({v for row in cur for v in row})
        cur = [[index[s] for s in row] for row in raw]
        if len(index) == before:
            break
    row_sigs = []
    for p in range(p_count):
        row_sigs.append((color_table[colors[p]][0], colors[p],
                         cur[p][p], tuple(sorted(cur[p]))))
    table = sorted(set(row_sigs))
    index = {t: i for i, t in enumerate(table)}
    return cur, [index[t] for t in row_sigs], table


def _reduce(v, piv):
    """Fully reduce v against the pivot table; returns (residue, mask)."""
    r = v
    mask = 0
    lead = r.bit_length() - 1
    while lead >= 0:
        if (r >> lead) & 1:
            e = piv.get(lead)
            if e is not None:
                r ^= e[0]
                mask ^= e[1]
        lead -= 1
    return r, mask


def _orbit_into(covered, start, gens):
    frontier = [start]
    covered.add(start)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = g[x]
            if y not in covered:
                covered.add(y)
                frontier.append(y)


def _decode(tokens, color_table):
    pts = []
    ms = []
    level = 0
    for t in tokens:
        if t & _BASIS_TOKEN:
            pts.append(1 << level)
            level += 1
            ms.append(color_table[(t >> 64) & 0xFFFF][0])
        else:
            pts.append(t >> 8)
            ms.append(color_table[t & 0xFF][0])
    order = sorted(range(len(pts)), key=lambda i: pts[i])
    rank = [0] * len(pts)
    for pos, token_idx in enumerate(order):
        rank[token_idx] = pos
    return [pts[i] for i in order], [ms[i] for i in order], rank


def _serialize(k, pts, ms) -> bytes:
    out = bytearray()
    out += k.to_bytes(1, "big")
    for p, m in zip(pts, ms):
        out += p.to_bytes(3, "big")
        out += m.to_bytes(2, "big")
    return bytes(out)


def _perm_group_order(gens, degree) -> int:
    """Order of a permutation group: basic deterministic Schreier-Sims."""
    gens = [tuple(g) for g in gens if any(g[i] != i for i in range(degree))]
    if not gens:
        return 1
    order = 1
    for point in range(degree):
        if not gens:
            break
        moved = any(g[point] != point for g in gens)
        if not moved:
            continue
        transversal = {point: tuple(range(degree))}
        frontier = [point]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = g[x]
                if y not in transversal:
                    transversal[y] = _compose(g, transversal[x])
                    frontier.append(y)
        order *= len(transversal)
        schreier = set()
        for x, ux in transversal.items():
            for g in gens:
                s = _compose(_inverse(transversal[g[x]]), _compose(g, ux))
                if any(s[i] != i for i in range(degree)):
                    schreier.add(s)
        gens = list(schreier)
    return order


def _compose(g, h):
    return tuple(g[h[i]] for i in range(len(g)))


def _inverse(g):
    inv = [0] * len(g)
    for i, x in enumerate(g):
        inv[x] = i
    return tuple(inv)

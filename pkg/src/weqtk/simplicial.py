"""Dimension-truncated simplicial sets stored by nondegenerate simplices.

A simplex "total" is a triple (m, j, surj): the nondegenerate m-cell j
degenerated along the monotone surjection surj.  Surjections in monotone
value form play the role of Eilenberg-Zilber degeneracy words (a strictly
decreasing word corresponds bijectively to such a surjection), so totals
ARE normal forms and no word rewriting is ever needed.  Operators act via
epi-mono factorization: the mono part walks stored faces, the epi part
composes onto the surjection.

Levelwise constructions (products, pushouts, Ex) produce explicit level
structures which are then renormalized to nondegenerate form through the
EZ decomposition (find the least i with s_i d_i x = x and recurse).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import SearchBudgetExceeded
from .kernel import ComputableCategory


# Monotone map utilities.  A monotone map [m] -> [n] is its value tuple.

def mcompose(outer, inner):
    return tuple(outer[i] for i in inner)

def midentity(n):
    return tuple(range(n + 1))

def mdelta(i, n):
    """Coface [n-1] -> [n] skipping i."""
    return tuple(v if v < i else v + 1 for v in range(n))

def msigma(i, n):
    """Codegeneracy [n+1] -> [n] hitting i twice."""
    return tuple(v if v <= i else v - 1 for v in range(n + 2))

def epi_mono(alpha):
    """Factor alpha = mono . epi with epi surjective, mono injective."""
    image = sorted(set(alpha))
    pos = {v: i for i, v in enumerate(image)}
    return tuple(pos[v] for v in alpha), tuple(image)

def surjections(k, m):
    """Monotone surjections [k] ->> [m]; order fixed by the ascent-position
    combinations."""
    if m > k or m < 0:
        return
    for rises in itertools.combinations(range(1, k + 1), m):
        vals = []
        v = 0
        rset = set(rises)
        for i in range(k + 1):
            if i in rset:
                v += 1
            vals.append(v)
        yield tuple(vals)

def monotone_maps(m, n):
    """All monotone maps [m] -> [n]."""
    for comb in itertools.combinations_with_replacement(range(n + 1), m + 1):
        yield comb


@dataclass(frozen=True)
class FinSimplicialSet:
    """counts[n] = number of nondegenerate n-cells; faces[n][j][i] is the
    i-th face of cell j as a total (m, cell, surj)."""

    counts: tuple
    faces: tuple

    @property
    def dim(self):
        return len(self.counts) - 1

    def n_cells(self, n):
        if 0 <= n <= self.dim:
            return self.counts[n]
        return 0

    def cell_count(self):
        return sum(self.counts)

    def face(self, n, j, i):
        return self.faces[n][j][i]

    def apply_mono(self, n, j, mono):
        """Apply an injective monotone [r] -> [n] to nondegenerate cell j."""
        r = len(mono) - 1
        if r == n:
            return (n, j, midentity(n))
        hit = set(mono)
        drop = max(v for v in range(n + 1) if v not in hit)
        mono2 = tuple(v if v < drop else v - 1 for v in mono)
        bm, bj, bs = self.faces[n][j][drop]
        return self.act(bm, bj, mcompose(bs, mono2))

    def act(self, n, j, alpha):
        """Apply an arbitrary monotone map to nondegenerate cell j; returns
        a total."""
        epi, mono = epi_mono(alpha)
        bm, bj, bs = self.apply_mono(n, j, mono)
        return (bm, bj, mcompose(bs, epi))

    def act_total(self, total, alpha):
        m, j, s = total
        return self.act(m, j, mcompose(s, alpha))

    def totals(self, k):
        """All k-simplices (degenerate included), canonically ordered."""
        out = []
        for m in range(min(k, self.dim) + 1):
            for j in range(self.counts[m]):
                for s in surjections(k, m):
                    out.append((m, j, s))
        return out

    def validate(self):
        if not self.counts:
            raise ValueError("counts must cover dimension 0")
        if len(self.faces) != len(self.counts):
            raise ValueError("faces must align with counts")
        for n in range(self.dim + 1):
            if len(self.faces[n]) != self.counts[n]:
                raise ValueError(f"level {n} has {len(self.faces[n])} face entries")
        for n in range(1, self.dim + 1):
            for j in range(self.counts[n]):
                entry = self.faces[n][j]
                if len(entry) != n + 1:
                    raise ValueError(f"cell ({n},{j}) must have {n + 1} faces")
                for m, bj, bs in entry:
                    if not (0 <= m <= n - 1 and 0 <= bj < self.counts[m]):
                        raise ValueError(f"face of ({n},{j}) out of range")
                    if len(bs) != n or sorted(set(bs)) != list(range(m + 1)):
                        raise ValueError(f"face surjection of ({n},{j}) malformed")
        for n in range(2, self.dim + 1):
            for j in range(self.counts[n]):
                t = (n, j, midentity(n))
                for hi in range(n + 1):
                    for lo in range(hi):
                        a = self.act_total(self.act_total(t, mdelta(hi, n)),
                                           mdelta(lo, n - 1))
                        b = self.act_total(self.act_total(t, mdelta(lo, n)),
                                           mdelta(hi - 1, n - 1))
                        if a != b:
                            raise ValueError(
                                f"simplicial identity fails at cell ({n},{j})")
        return self


def _trim(counts, faces):
    counts = list(counts)
    faces = list(faces)
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
        faces.pop()
    return tuple(counts), tuple(faces)


def make_sset(counts, faces):
    counts, faces = _trim(counts, faces)
    return FinSimplicialSet(counts, faces).validate()


EMPTY = FinSimplicialSet((0,), ((),))
POINT = FinSimplicialSet((1,), (((),),))


@dataclass(frozen=True)
class SimplicialMap:
    source: FinSimplicialSet
    target: FinSimplicialSet
    images: tuple  # images[n][j] = total of target at level n

    def apply(self, n, j):
        return self.images[n][j]

    def apply_total(self, total):
        m, j, s = total
        cm, cj, cs = self.images[m][j]
        return (cm, cj, mcompose(cs, s))

    def validate(self):
        x, y = self.source, self.target
        for n in range(x.dim + 1):
            if len(self.images[n]) != x.counts[n]:
                raise ValueError("image table does not match cell counts")
        for n in range(1, x.dim + 1):
            for j in range(x.counts[n]):
                for i in range(n + 1):
                    lhs = self.apply_total(x.face(n, j, i))
                    rhs = y.act_total(self.images[n][j], mdelta(i, n))
                    if lhs != rhs:
                        raise ValueError(
                            f"map does not commute with face {i} of cell ({n},{j})")
        return self


def make_map(x, y, images):
    return SimplicialMap(x, y, tuple(tuple(lv) for lv in images)).validate()


def identity_map(x):
    images = tuple(tuple((n, j, midentity(n)) for j in range(x.counts[n]))
                   for n in range(x.dim + 1))
    return SimplicialMap(x, x, images)


def compose_maps(g, f):
    if f.target != g.source:
        raise ValueError("simplicial maps not composable")
    images = tuple(tuple(g.apply_total(f.images[n][j])
                         for j in range(f.source.counts[n]))
                   for n in range(f.source.dim + 1))
    return SimplicialMap(f.source, g.target, images)


# Standard simplices and boundaries.  Nondegenerate k-cells of the
# n-simplex are the (k+1)-subsets of {0..n} in lexicographic order.

def _subsets(n):
    by_dim = []
    for k in range(n + 1):
        by_dim.append(sorted(itertools.combinations(range(n + 1), k + 1)))
    return by_dim


def standard_simplex(n):
    by_dim = _subsets(n)
    index = [{s: i for i, s in enumerate(lv)} for lv in by_dim]
    counts = tuple(len(lv) for lv in by_dim)
    faces = []
    for k in range(n + 1):
        level = []
        for s in by_dim[k]:
            if k == 0:
                level.append(())
                continue
            entry = []
            for i in range(k + 1):
                sub = s[:i] + s[i + 1:]
                entry.append((k - 1, index[k - 1][sub], midentity(k - 1)))
            level.append(tuple(entry))
        faces.append(tuple(level))
    return make_sset(counts, faces)


def delta_cell_vertices(n, k, j):
    """Vertex tuple of the j-th nondegenerate k-cell of the n-simplex."""
    return _subsets(n)[k][j]


def delta_total_monotone(n, total):
    """The monotone map [k] -> [n] underlying a total of the n-simplex."""
    m, j, s = total
    verts = delta_cell_vertices(n, m, j)
    return tuple(verts[v] for v in s)


def monotone_as_delta_total(n, beta):
    """Inverse of delta_total_monotone."""
    epi, mono = epi_mono(beta)
    k = len(mono) - 1
    idx = _subsets(n)[k].index(tuple(mono))
    return (k, idx, epi)


def boundary(n):
    """The boundary of the n-simplex together with its inclusion."""
    simplex = standard_simplex(n)
    if n == 0:
        incl = SimplicialMap(EMPTY, simplex, ((),))
        return EMPTY, incl
    counts = tuple(simplex.counts[k] if k < n else 0 for k in range(n))
    faces = tuple(simplex.faces[k] for k in range(n))
    bd = make_sset(counts, faces)
    images = tuple(tuple((k, j, midentity(k)) for j in range(bd.counts[k]))
                   for k in range(bd.dim + 1))
    return bd, SimplicialMap(bd, simplex, images)


def vertex_map(x, v):
    """The map from the point selecting vertex v."""
    return SimplicialMap(POINT, x, (((0, v, (0,)),),))


# Renormalization machinery for levelwise constructions.

@dataclass
class LevelStructure:
    """Explicit truncated simplicial set: opaque hashable keys per level,
    operator tables as dicts."""

    levels: list        # levels[n]: ordered list of keys
    face: dict          # (n, i) -> {key: key at level n-1}
    degen: dict         # (n, i) -> {key: key at level n+1}


@dataclass
class Normalized:
    sset: FinSimplicialSet
    cell_key: list      # cell_key[n][j] = key of the nondegenerate cell
    _decomp: dict

    def to_total(self, n, key):
        return self._decomp[(n, key)]


def normalize(ls):
    dim = len(ls.levels) - 1
    degenerate = [set() for _ in range(dim + 1)]
    for n in range(1, dim + 1):
        for i in range(n):
            degenerate[n].update(ls.degen[(n - 1, i)].values())
    cell_key = []
    cell_index = []
    for n in range(dim + 1):
        keys = [k for k in ls.levels[n] if k not in degenerate[n]]
        cell_key.append(keys)
        cell_index.append({k: j for j, k in enumerate(keys)})
    decomp = {}

    def decompose(n, key):
        if (n, key) in decomp:
            return decomp[(n, key)]
        if key in cell_index[n]:
            result = (n, cell_index[n][key], midentity(n))
        else:
            result = None
            for i in range(n):
                y = ls.face[(n, i)][key]
                if ls.degen[(n - 1, i)][y] == key:
                    m, j, s = decompose(n - 1, y)
                    result = (m, j, mcompose(s, msigma(i, n - 1)))
                    break
            if result is None:
                raise AssertionError("degenerate element with no EZ splitting")
        decomp[(n, key)] = result
        return result

    counts = [len(cell_key[n]) for n in range(dim + 1)]
    faces = []
    for n in range(dim + 1):
        level = []
        for key in cell_key[n]:
            if n == 0:
                level.append(())
                continue
            entry = tuple(decompose(n - 1, ls.face[(n, i)][key])
                          for i in range(n + 1))
            level.append(entry)
        faces.append(tuple(level))
    for n in range(dim + 1):
        for key in ls.levels[n]:
            decompose(n, key)
    counts, faces = _trim(counts, faces)
    sset = FinSimplicialSet(counts, faces).validate()
    return Normalized(sset, cell_key[:len(counts)], decomp)


def totalize(x, dim=None):
    """LevelStructure of an existing simplicial set (keys are totals)."""
    dim = x.dim if dim is None else dim
    levels = [x.totals(k) for k in range(dim + 1)]
    face = {}
    degen = {}
    for n in range(dim + 1):
        for i in range(n):
            degen[(n - 1, i)] = {t: x.act_total(t, msigma(i, n - 1))
                                 for t in levels[n - 1]}
        if n:
            for i in range(n + 1):
                face[(n, i)] = {t: x.act_total(t, mdelta(i, n))
                                for t in levels[n]}
    return levels, face, degen


# Binary product with projections.

@dataclass
class ProductResult:
    sset: FinSimplicialSet
    pairs: list          # pairs[k][j] = (total of x, total of y)
    index: dict          # (k, tx, ty) -> cell index
    pr1: SimplicialMap
    pr2: SimplicialMap


def _collapses(s):
    return {i for i in range(len(s) - 1) if s[i] == s[i + 1]}


def joint_factor(u, v):
    """Write the pair (u, v) as a common degeneracy of a jointly
    nondegenerate pair; returns ((u', v'), rho) with u = u'.rho etc."""
    m1, j1, s1 = u
    m2, j2, s2 = v
    k = len(s1) - 1
    common = _collapses(s1) & _collapses(s2)
    vals = []
    cur = 0
    for i in range(k + 1):
        if i and (i - 1) in common:
            vals.append(cur)
        else:
            if i:
                cur += 1
            vals.append(cur)
    rho = tuple(vals)
    pick = []
    seen = set()
    for i, t in enumerate(rho):
        if t not in seen:
            seen.add(t)
            pick.append(i)
    s1p = tuple(s1[p] for p in pick)
    s2p = tuple(s2[p] for p in pick)
    return ((m1, j1, s1p), (m2, j2, s2p)), rho


def product(x, y, dim_bound=None):
    dim = x.dim + y.dim
    if dim_bound is not None:
        dim = min(dim, dim_bound)
    pairs = []
    index = {}
    for k in range(dim + 1):
        level = []
        for tx in x.totals(k):
            cx = _collapses(tx[2])
            for ty in y.totals(k):
                if cx & _collapses(ty[2]):
                    continue
                index[(k, tx, ty)] = len(level)
                level.append((tx, ty))
        pairs.append(level)
    counts = tuple(len(lv) for lv in pairs)
    faces = []
    for k in range(dim + 1):
        level = []
        for tx, ty in pairs[k]:
            if k == 0:
                level.append(())
                continue
            entry = []
            for i in range(k + 1):
                fu = x.act_total(tx, mdelta(i, k))
                fv = y.act_total(ty, mdelta(i, k))
                (bu, bv), rho = joint_factor(fu, fv)
                base_level = len(set(rho)) - 1
                entry.append((base_level, index[(base_level, bu, bv)], rho))
            level.append(tuple(entry))
        faces.append(tuple(level))
    counts, faces = _trim(counts, faces)
    sset = FinSimplicialSet(counts, faces).validate()
    pairs = pairs[:len(counts)]
    pr1 = SimplicialMap(sset, x, tuple(tuple(tx for tx, _ in pairs[k])
                                       for k in range(sset.dim + 1)))
    pr2 = SimplicialMap(sset, y, tuple(tuple(ty for _, ty in pairs[k])
                                       for k in range(sset.dim + 1)))
    return ProductResult(sset, pairs, index, pr1, pr2)


def pair_map(f, g, prod):
    """The universal map Z -> X x Y induced by f: Z -> X and g: Z -> Y."""
    z = f.source
    images = []
    for n in range(z.dim + 1):
        level = []
        for j in range(z.counts[n]):
            (bu, bv), rho = joint_factor(f.images[n][j], g.images[n][j])
            base_level = len(set(rho)) - 1
            level.append((base_level, prod.index[(base_level, bu, bv)], rho))
        images.append(tuple(level))
    return SimplicialMap(z, prod.sset, tuple(images))


def product_map(f, g, prod_src, prod_tgt):
    """f x g on the chosen product presentations."""
    images = []
    for n in range(prod_src.sset.dim + 1):
        level = []
        for tx, ty in prod_src.pairs[n]:
            fu = f.apply_total(tx)
            gv = g.apply_total(ty)
            (bu, bv), rho = joint_factor(fu, gv)
            base_level = len(set(rho)) - 1
            level.append((base_level, prod_tgt.index[(base_level, bu, bv)], rho))
        images.append(tuple(level))
    return SimplicialMap(prod_src.sset, prod_tgt.sset, tuple(images))


# Colimits.

def coproduct_ssets(parts):
    dim = max([p.dim for p in parts], default=0)
    counts = tuple(sum(p.n_cells(n) for p in parts) for n in range(dim + 1))
    offsets = []
    running = [0] * (dim + 1)
    for p in parts:
        offsets.append(tuple(running))
        for n in range(p.dim + 1):
            running[n] += p.counts[n]
    faces = []
    for n in range(dim + 1):
        level = []
        for p, off in zip(parts, offsets):
            for j in range(p.n_cells(n)):
                if n == 0:
                    level.append(())
                else:
                    level.append(tuple((m, bj + off[m], bs)
                                       for m, bj, bs in p.faces[n][j]))
        faces.append(tuple(level))
    counts, faces = _trim(counts, faces)
    cop = FinSimplicialSet(counts, faces)
    injections = []
    for p, off in zip(parts, offsets):
        images = tuple(tuple((n, j + off[n], midentity(n))
                             for j in range(p.counts[n]))
                       for n in range(p.dim + 1))
        injections.append(SimplicialMap(p, cop, images))
    return cop, injections


class _UF:
    def __init__(self):
        self.parent = {}

    def add(self, k):
        self.parent.setdefault(k, k)

    def find(self, k):
        while self.parent[k] != k:
            self.parent[k] = self.parent[self.parent[k]]
            k = self.parent[k]
        return k

    def union(self, a, b, order):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if order[ra] <= order[rb]:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb


def coequalizer_ssets(f, g):
    """Levelwise quotient of the target by f(a) ~ g(a); classes are
    represented by their least total in canonical order."""
    if f.source != g.source or f.target != g.target:
        raise ValueError("maps not parallel")
    b = f.target
    dim = b.dim
    uf = _UF()
    order = {}
    totals_by_level = []
    for k in range(dim + 1):
        ts = b.totals(k)
        totals_by_level.append(ts)
        for pos, t in enumerate(ts):
            uf.add((k, t))
            order[(k, t)] = pos
    for k in range(dim + 1):
        # Totals of the source exist at every level (degenerate above its
        # dimension) and all of their image pairs must be identified.
        for ta in f.source.totals(k):
            uf.union((k, f.apply_total(ta)), (k, g.apply_total(ta)), order)
    levels = []
    for k in range(dim + 1):
        reps = []
        seen = set()
        for t in totals_by_level[k]:
            r = uf.find((k, t))
            if r not in seen:
                seen.add(r)
                reps.append(r)
        levels.append(reps)
    face = {}
    degen = {}
    for n in range(dim + 1):
        for i in range(n):
            degen[(n - 1, i)] = {
                r: uf.find((n, b.act_total(r[1], msigma(i, n - 1))))
                for r in levels[n - 1]}
        if n:
            for i in range(n + 1):
                face[(n, i)] = {
                    r: uf.find((n - 1, b.act_total(r[1], mdelta(i, n))))
                    for r in levels[n]}
    norm = normalize(LevelStructure(levels, face, degen))
    proj_images = tuple(
        tuple(norm.to_total(n, uf.find((n, (n, j, midentity(n)))))
              for j in range(b.counts[n]))
        for n in range(b.dim + 1))
    proj = SimplicialMap(b, norm.sset, proj_images)
    return norm.sset, proj, uf, norm


def coequalizer_factor_ssets(f, g, u):
    q, proj, uf, norm = coequalizer_ssets(f, g)
    images = []
    for n in range(q.dim + 1):
        level = []
        for key in norm.cell_key[n]:
            rep_total = key[1]
            level.append(u.apply_total(rep_total))
        images.append(tuple(level))
    return SimplicialMap(q, u.target, tuple(images))


class SSet(ComputableCategory):
    """Finite truncated simplicial sets.  Hom enumeration is backtracking
    over nondegenerate cells: 1-cells first (each assignment forces its
    endpoints, so paths propagate), then leftover vertices, then higher
    cells in ascending dimension where face images prune hard."""

    def __init__(self, budget=2000000):
        self.budget = budget

    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def identity(self, a):
        return identity_map(a)

    def compose(self, g, f):
        return compose_maps(g, f)

    def initial(self):
        return EMPTY

    def coproduct(self, objs):
        return coproduct_ssets(objs)

    def coproduct_factor(self, objs, maps):
        cop, injections = coproduct_ssets(objs)
        images = [[None] * cop.counts[n] for n in range(cop.dim + 1)]
        for inj, m in zip(injections, maps):
            for n in range(m.source.dim + 1):
                for j in range(m.source.counts[n]):
                    _, cj, _ = inj.images[n][j]
                    images[n][cj] = m.images[n][j]
        return SimplicialMap(cop, maps[0].target if maps else EMPTY,
                             tuple(tuple(lv) for lv in images))

    def coequalizer(self, f, g):
        q, proj, _, _ = coequalizer_ssets(f, g)
        return q, proj

    def coequalizer_factor(self, f, g, u):
        if compose_maps(u, f) != compose_maps(u, g):
            raise ValueError("map does not coequalize the pair")
        return coequalizer_factor_ssets(f, g, u)

    def fillers(self, b, x, pre=(), post=()):
        forced = {}
        pending = {}

        def record(cell, total):
            """Force w(cell) = total; propagate to faces; False on clash."""
            stack = [(cell, total)]
            while stack:
                (n, j), t = stack.pop()
                if (n, j) in forced:
                    if forced[(n, j)] != t:
                        return False
                    continue
                forced[(n, j)] = t
                for sig, val in pending.pop((n, j), ()):
                    cm, cj, cs = t
                    if (cm, cj, mcompose(cs, sig)) != val:
                        return False
                if n:
                    for i in range(n + 1):
                        fm, fj, fs = b.face(n, j, i)
                        val = x.act_total(t, mdelta(i, n))
                        if fs == midentity(fm):
                            stack.append(((fm, fj), val))
                        else:
                            if (fm, fj) in forced:
                                cm, cj, cs = forced[(fm, fj)]
                                if (cm, cj, mcompose(cs, fs)) != val:
                                    return False
                            else:
                                pending.setdefault((fm, fj), []).append((fs, val))
            return True

        for j, r in pre:
            a = j.source
            for n in range(a.dim + 1):
                for c in range(a.counts[n]):
                    bm, bj, bs = j.images[n][c]
                    val = r.images[n][c]
                    if bs == midentity(bm):
                        if not record((bm, bj), val):
                            return
                    else:
                        if (bm, bj) in forced:
                            cm, cj, cs = forced[(bm, bj)]
                            if (cm, cj, mcompose(cs, bs)) != val:
                                return
                        else:
                            pending.setdefault((bm, bj), []).append((bs, val))

        post = list(post)

        def post_ok(cell, total):
            n, j = cell
            for gmap, smap in post:
                if gmap.apply_total(total) != smap.images[n][j]:
                    return False
            return True

        for cell, t in list(forced.items()):
            if not post_ok(cell, t):
                return

        order = []
        if b.dim >= 1:
            order.extend((1, j) for j in range(b.counts[1]))
        order.extend((0, j) for j in range(b.counts[0]))
        for n in range(2, b.dim + 1):
            order.extend((n, j) for j in range(b.counts[n]))
        order = [c for c in order if c not in forced]
        candidates = {n: x.totals(n) for n in range(b.dim + 1)}
        budget = self.budget
        steps = 0
        assignment = dict(forced)

        # Failure memo: which cells are assigned at each position is
        # branch-independent (face forcing depends on structure only), so
        # the suffix outcome is a function of the values on the cells that
        # cells from this position onward can still see.  Failed interface
        # states are never re-explored; successful ones are re-run so that
        # full enumeration stays exact.
        def cell_bases(cell):
            n, j = cell
            if n == 0:
                return ()
            return tuple((fm, fj) for fm, fj, _ in b.faces[n][j])

        suffix_bases = [set() for _ in range(len(order) + 1)]
        for p in range(len(order) - 1, -1, -1):
            suffix_bases[p] = suffix_bases[p + 1] | set(cell_bases(order[p]))
        assigned_static = set(forced)
        interface = []
        for p, cell in enumerate(order):
            interface.append(tuple(sorted(assigned_static & suffix_bases[p]))
                             if cell not in assigned_static else ())
            if cell not in assigned_static:
                assigned_static.add(cell)
                n, j = cell
                if n:
                    for fm, fj, fs in b.faces[n][j]:
                        if fs == midentity(fm):
                            assigned_static.add((fm, fj))
        failed = set()

        def images_from(assignment):
            return tuple(tuple(assignment[(n, j)] for j in range(b.counts[n]))
                         for n in range(b.dim + 1))

        def compatible(cell, t):
            n, j = cell
            if not post_ok(cell, t):
                return False
            for sig, val in pending.get(cell, ()):
                cm, cj, cs = t
                if (cm, cj, mcompose(cs, sig)) != val:
                    return False
            if n == 0:
                return True
            for i in range(n + 1):
                fm, fj, fs = b.face(n, j, i)
                val = x.act_total(t, mdelta(i, n))
                if (fm, fj) in assignment:
                    cm, cj, cs = assignment[(fm, fj)]
                    if (cm, cj, mcompose(cs, fs)) != val:
                        return False
            return True

        def forced_by(cell, t):
            """Vertex/face assignments implied by assigning t to cell, or
            None when two faces force the same cell inconsistently."""
            n, j = cell
            out = {}
            if n == 0:
                return []
            for i in range(n + 1):
                fm, fj, fs = b.face(n, j, i)
                if (fm, fj) not in assignment and fs == midentity(fm):
                    val = x.act_total(t, mdelta(i, n))
                    if (fm, fj) in out and out[(fm, fj)] != val:
                        return None
                    out[(fm, fj)] = val
            return list(out.items())

        def backtrack(pos):
            nonlocal steps
            if pos == len(order):
                yield SimplicialMap(b, x, images_from(assignment))
                return
            cell = order[pos]
            if cell in assignment:
                yield from backtrack(pos + 1)
                return
            key = (pos, tuple(assignment[c] for c in interface[pos]))
            if key in failed:
                return
            produced = False
            n, _ = cell
            for t in candidates[n]:
                steps += 1
                if steps > budget:
                    raise SearchBudgetExceeded("simplicial map search budget")
                if not compatible(cell, t):
                    continue
                extra = forced_by(cell, t)
                if extra is None:
                    continue
                ok = True
                for c2, t2 in extra:
                    if not post_ok(c2, t2):
                        ok = False
                        break
                    bad = False
                    for sig, val in pending.get(c2, ()):
                        cm, cj, cs = t2
                        if (cm, cj, mcompose(cs, sig)) != val:
                            bad = True
                            break
                    if bad:
                        ok = False
                        break
                if not ok:
                    continue
                assignment[cell] = t
                for c2, t2 in extra:
                    assignment[c2] = t2
                for found in backtrack(pos + 1):
                    produced = True
                    yield found
                del assignment[cell]
                for c2, _ in extra:
                    del assignment[c2]
            if not produced:
                failed.add(key)
            return

        yield from backtrack(0)


SSET = SSet()


# Path components via the undirected 1-skeleton.

def pi0(x):
    """Partition of the vertices into zigzag components; returns the list
    of components (sorted) and the vertex -> component index map."""
    uf = _UF()
    order = {}
    for v in range(x.n_cells(0)):
        uf.add(v)
        order[v] = v
    for e in range(x.n_cells(1)):
        d0 = x.face(1, e, 0)[1]
        d1 = x.face(1, e, 1)[1]
        uf.union(d0, d1, order)
    comp_of = {}
    comps = []
    for v in range(x.n_cells(0)):
        r = uf.find(v)
        if r not in comp_of:
            comp_of[r] = len(comps)
            comps.append([])
        comps[comp_of[r]].append(v)
    return [tuple(c) for c in comps], {v: comp_of[uf.find(v)]
                                       for v in range(x.n_cells(0))}


def pi0_map(f):
    """The induced function on path components."""
    comps_x, cx = pi0(f.source)
    comps_y, cy = pi0(f.target)
    table = {}
    for v in range(f.source.n_cells(0)):
        _, w, _ = f.images[0][v]
        table[cx[v]] = cy[w]
    return len(comps_x), len(comps_y), table


def pi0_surjective(f):
    nx, ny, table = pi0_map(f)
    return len(set(table.values())) == ny


# Zigzags and the component cone.

def zigzag(n):
    """Z_n: 2n+1 vertices, 2n alternating edges, with the two endpoint
    maps."""
    if n == 0:
        z = POINT
        return z, vertex_map(z, 0), vertex_map(z, 0)
    counts = (2 * n + 1, 2 * n)
    faces1 = []
    for i in range(2 * n):
        if i % 2 == 0:
            start, end = i, i + 1
        else:
            start, end = i + 1, i
        faces1.append(((0, end, (0,)), (0, start, (0,))))
    z = make_sset(counts, (tuple(() for _ in range(2 * n + 1)), tuple(faces1)))
    return z, vertex_map(z, 0), vertex_map(z, 2 * n)


# Reflexive graphs and the skeleton functor.

@dataclass(frozen=True)
class ReflexiveGraph:
    """Vertices 0..n-1 with an implicit identity loop on each; ``edges``
    lists the non-identity edges as (source, target)."""

    vertices: int
    edges: tuple

    def validate(self):
        for s, t in self.edges:
            if not (0 <= s < self.vertices and 0 <= t < self.vertices):
                raise ValueError("edge endpoint out of range")
        return self


def skeleton(g):
    """Left Kan extension along the inclusion of the 0/1 truncation: the
    simplicial set with the same vertices and nondegenerate edges, nothing
    above dimension 1."""
    g.validate()
    verts = tuple(() for _ in range(g.vertices))
    if not g.edges:
        return make_sset((g.vertices,), (verts,))
    faces1 = tuple(((0, t, (0,)), (0, s, (0,))) for s, t in g.edges)
    return make_sset((g.vertices, len(g.edges)), (verts, faces1))


def graph_a(n):
    """The reflexive graph with vertices 0..n and edges i -> i+1."""
    return ReflexiveGraph(n + 1, tuple((i, i + 1) for i in range(n)))

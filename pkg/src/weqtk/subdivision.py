"""Barycentric subdivision, its right adjoint, and the generating cones
for bounded weak-equivalence certification of simplicial maps.

Sd of a standard simplex is the nerve of the inclusion poset of its
nondegenerate cells; Sd of a general finite simplicial set is the
levelwise colimit of those nerves over the category of simplices, built
here as an explicit union-find quotient.  The right adjoint takes level n
to the enumerated set of maps out of the subdivided n-simplex.  The
natural comparison p sends a chain to its last vertices; its transpose q
embeds an object into its extension.

The generating cones pair the m-fold subdivided boundary inclusion with
the pushouts P(m, n, k) built from the k-fold subdivisions and the
relative-homotopy classifier; a map is certified a weak equivalence on a
bounded window by factoring every attempt through some materialized leg.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .kernel import SquareMorphism, arrow_category, pushout, pushout_factor
from .lifting import Cone, cone_injective
from .simplicial import (EMPTY, POINT, SSET, FinSimplicialSet, LevelStructure,
                         SimplicialMap, boundary, compose_maps,
                         delta_total_monotone, identity_map, make_map, mdelta,
                         midentity, monotone_as_delta_total, msigma, normalize,
                         pair_map, product, product_map, standard_simplex,
                         zigzag)

ARR_SSET = arrow_category(SSET)


def const_map(x, y, v):
    """The constant map at vertex v of y."""
    images = tuple(tuple((0, v, tuple(0 for _ in range(n + 1)))
                         for _ in range(x.counts[n]))
                   for n in range(x.dim + 1))
    return SimplicialMap(x, y, images)


# Subdivided standard simplices: nerves of the nondegenerate-cell posets.

@dataclass(frozen=True)
class SdDelta:
    n: int
    sset: FinSimplicialSet
    chains: tuple   # chains[k][j]: the chain of vertex-subsets of cell j
    index: tuple    # index[k]: dict chain -> cell


def _subsets_of(n):
    import itertools
    out = []
    for k in range(n + 1):
        out.extend(sorted(itertools.combinations(range(n + 1), k + 1)))
    return out


@functools.lru_cache(maxsize=None)
def sd_delta(n):
    subsets = _subsets_of(n)
    chains = [[(s,) for s in subsets]]
    for k in range(1, n + 1):
        level = []
        for chain in chains[k - 1]:
            last = set(chain[-1])
            for s in subsets:
                if len(s) > len(chain[-1]) and last < set(s):
                    level.append(chain + (s,))
        level.sort()
        chains.append(level)
    index = [{c: j for j, c in enumerate(lv)} for lv in chains]
    counts = tuple(len(lv) for lv in chains)
    faces = []
    for k in range(n + 1):
        level = []
        for chain in chains[k]:
            if k == 0:
                level.append(())
                continue
            entry = []
            for i in range(k + 1):
                sub = chain[:i] + chain[i + 1:]
                entry.append((k - 1, index[k - 1][sub], midentity(k - 1)))
            level.append(tuple(entry))
        faces.append(tuple(level))
    sset = FinSimplicialSet(counts, tuple(faces)).validate()
    return SdDelta(n, sset, tuple(tuple(lv) for lv in chains), tuple(index))


@functools.lru_cache(maxsize=None)
def sd_delta_map(alpha, m, n):
    """Sd of the monotone map alpha: [m] -> [n] on the nerve presentation."""
    src, tgt = sd_delta(m), sd_delta(n)
    images = []
    for k in range(src.sset.dim + 1):
        level = []
        for chain in src.chains[k]:
            mapped = [tuple(sorted({alpha[v] for v in s})) for s in chain]
            strict = []
            surj = []
            for s in mapped:
                if not strict or s != strict[-1]:
                    strict.append(s)
                surj.append(len(strict) - 1)
            cell = tgt.index[len(strict) - 1][tuple(strict)]
            level.append((len(strict) - 1, cell, tuple(surj)))
        images.append(tuple(level))
    return make_map(src.sset, tgt.sset, images)


@functools.lru_cache(maxsize=None)
def p_delta(n):
    """Last-vertex comparison Sd Delta_n -> Delta_n: a chain goes to the
    tuple of maxima of its stages."""
    sd = sd_delta(n)
    simplex = standard_simplex(n)
    images = []
    for k in range(sd.sset.dim + 1):
        level = []
        for chain in sd.chains[k]:
            beta = tuple(max(s) for s in chain)
            level.append(monotone_as_delta_total(n, beta))
        images.append(tuple(level))
    return make_map(sd.sset, simplex, images)


# General subdivision by the colimit formula.

class SdResult:
    def __init__(self, source, sset, lookup):
        self.source = source
        self.sset = sset
        self._lookup = lookup

    def component_total(self, n, x_total, s_total):
        """Image in Sd(source) of the simplex s of Sd Delta_n under the
        component inclusion indexed by the n-simplex x_total."""
        return self._lookup[(n, x_total, s_total)]


def sd(x):
    dim = x.dim
    comps = [(n, t) for n in range(dim + 1) for t in x.totals(n)]
    from .simplicial import _UF
    uf = _UF()
    order = {}
    levels = []
    for k in range(dim + 1):
        lv = []
        for n, t in comps:
            for s in sd_delta(n).sset.totals(k):
                key = (n, t, s)
                uf.add((k, key))
                order[(k, key)] = len(order)
                lv.append(key)
        levels.append(lv)
    for n, t in comps:
        gens = []
        if n >= 1:
            gens.extend((mdelta(i, n), n - 1) for i in range(n + 1))
        if n + 1 <= dim:
            gens.extend((msigma(i, n), n + 1) for i in range(n + 1))
        for alpha, m_lv in gens:
            other = x.act_total(t, alpha)
            smap = sd_delta_map(alpha, m_lv, n)
            for k in range(dim + 1):
                for s in sd_delta(m_lv).sset.totals(k):
                    a = (k, (m_lv, other, s))
                    b = (k, (n, t, smap.apply_total(s)))
                    uf.union(a, b, order)
    class_levels = []
    for k in range(dim + 1):
        reps = []
        seen = set()
        for key in levels[k]:
            r = uf.find((k, key))
            if r not in seen:
                seen.add(r)
                reps.append(r)
        class_levels.append(reps)
    face = {}
    degen = {}
    for k in range(dim + 1):
        for i in range(k):
            table = {}
            for r in class_levels[k - 1]:
                n, t, s = r[1]
                table[r] = uf.find((k, (n, t, sd_delta(n).sset.act_total(
                    s, msigma(i, k - 1)))))
            degen[(k - 1, i)] = table
        if k:
            for i in range(k + 1):
                table = {}
                for r in class_levels[k]:
                    n, t, s = r[1]
                    table[r] = uf.find((k - 1, (n, t, sd_delta(n).sset.act_total(
                        s, mdelta(i, k)))))
                face[(k, i)] = table
    norm = normalize(LevelStructure(class_levels, face, degen))
    lookup = {}
    for k in range(dim + 1):
        for key in levels[k]:
            lookup[key] = norm.to_total(k, uf.find((k, key)))
    return SdResult(x, norm.sset, lookup)


def _nondeg_reps(sd_src):
    """For each nondegenerate cell of Sd(source), a component key whose
    class is that cell."""
    rep_for = {}
    for key, total in sd_src._lookup.items():
        m, j, s = total
        if s == midentity(m) and (m, j) not in rep_for:
            rep_for[(m, j)] = key
    return rep_for


def sd_map(f, sd_src, sd_tgt):
    """Sd f from the chosen subdivision presentations."""
    x = sd_src.sset
    rep_for = _nondeg_reps(sd_src)
    images = []
    for k in range(x.dim + 1):
        level = []
        for j in range(x.counts[k]):
            n, t, s = rep_for[(k, j)]
            level.append(sd_tgt.component_total(n, f.apply_total(t), s))
        images.append(tuple(level))
    return SimplicialMap(x, sd_tgt.sset, tuple(images))


def p_map(sd_res):
    """The natural comparison Sd X -> X."""
    x = sd_res.source
    sdx = sd_res.sset
    rep_for = _nondeg_reps(sd_res)
    images = []
    for k in range(sdx.dim + 1):
        level = []
        for j in range(sdx.counts[k]):
            n, t, s = rep_for[(k, j)]
            pd = p_delta(n).apply_total(s)
            level.append(x.act_total(t, delta_total_monotone(n, pd)))
        images.append(tuple(level))
    return SimplicialMap(sdx, x, tuple(images))


@dataclass
class SdTower:
    base: FinSimplicialSet
    stages: list      # stages[0] = base
    results: list     # results[i]: SdResult with source stages[i]
    p_maps: list      # p_maps[i]: stages[i+1] -> stages[i]

    def stage(self, k):
        while len(self.stages) <= k:
            res = sd(self.stages[-1])
            self.results.append(res)
            self.stages.append(res.sset)
            self.p_maps.append(p_map(res))
        return self.stages[k]

    def p_comp(self, k, m):
        """p_{k,m}: stage k -> stage m for k >= m."""
        self.stage(k)
        out = identity_map(self.stages[k])
        for i in range(k - 1, m - 1, -1):
            out = compose_maps(self.p_maps[i], out)
        return out

    def lift_map(self, f, tower_tgt, k):
        """Sd_k f given towers of both endpoints."""
        self.stage(k)
        tower_tgt.stage(k)
        out = f
        for i in range(k):
            out = sd_map(out, self.results[i], tower_tgt.results[i])
        return out


def sd_tower(x):
    return SdTower(x, [x], [], [])


# The right adjoint and its tower.

class ExResult:
    def __init__(self, source, dim_bound, sset, maps, index, norm):
        self.source = source
        self.dim_bound = dim_bound
        self.sset = sset
        self.maps = maps
        self.index = index
        self.norm = norm

    def element_total(self, n, idx):
        """Total of Ex X corresponding to the idx-th enumerated map at
        level n."""
        return self.norm.to_total(n, idx)

    def total_as_map(self, total):
        """The map Sd Delta_k -> X named by a total at level k."""
        m, j, s = total
        base = self.maps[m][self.norm.cell_key[m][j]]
        k = len(s) - 1
        if s == midentity(m):
            return base
        return compose_maps(base, sd_delta_map(s, k, m))


def ex(x, dim_bound, cat=SSET):
    maps = []
    index = []
    for n in range(dim_bound + 1):
        level = cat.hom(sd_delta(n).sset, x)
        maps.append(level)
        index.append({m: i for i, m in enumerate(level)})
    levels = [list(range(len(maps[n]))) for n in range(dim_bound + 1)]
    face = {}
    degen = {}
    for n in range(dim_bound + 1):
        for i in range(n):
            sdm = sd_delta_map(msigma(i, n - 1), n, n - 1)
            degen[(n - 1, i)] = {
                j: index[n][compose_maps(maps[n - 1][j], sdm)]
                for j in levels[n - 1]}
        if n:
            sdd = [sd_delta_map(mdelta(i, n), n - 1, n) for i in range(n + 1)]
            for i in range(n + 1):
                face[(n, i)] = {
                    j: index[n - 1][compose_maps(maps[n][j], sdd[i])]
                    for j in levels[n]}
    norm = normalize(LevelStructure(levels, face, degen))
    return ExResult(x, dim_bound, norm.sset, maps, index, norm)


def q_map(ex_res):
    """The unit comparison X -> Ex X (transpose of p)."""
    from .errors import DimensionBound
    x = ex_res.source
    if x.dim > ex_res.dim_bound:
        raise DimensionBound("extension was truncated below the source dimension")
    images = []
    for n in range(x.dim + 1):
        level = []
        pd = p_delta(n)
        sdn = sd_delta(n).sset
        for j in range(x.counts[n]):
            comp_images = []
            for k in range(sdn.dim + 1):
                lv = []
                for c in range(sdn.counts[k]):
                    beta = delta_total_monotone(n, pd.images[k][c])
                    lv.append(x.act(n, j, beta))
                comp_images.append(tuple(lv))
            qx = SimplicialMap(sdn, x, tuple(comp_images))
            level.append(ex_res.element_total(n, ex_res.index[n][qx]))
        images.append(tuple(level))
    return SimplicialMap(x, ex_res.sset, tuple(images))


def ex_map(f, ex_src, ex_tgt):
    """Ex f from the chosen extension presentations."""
    images = []
    for n in range(ex_src.sset.dim + 1):
        level = []
        for j in range(ex_src.sset.counts[n]):
            base = ex_src.maps[n][ex_src.norm.cell_key[n][j]]
            composed = compose_maps(f, base)
            level.append(ex_tgt.element_total(n, ex_tgt.index[n][composed]))
        images.append(tuple(level))
    return SimplicialMap(ex_src.sset, ex_tgt.sset, tuple(images))


def ex_infty(x, stages, dim_bound, cat=SSET):
    """The truncated fibrant-replacement chain X -> Ex X -> ... with its
    connecting maps."""
    objs = [x]
    results = []
    connectings = []
    current = x
    for _ in range(stages):
        res = ex(current, dim_bound, cat)
        results.append(res)
        connectings.append(q_map(res))
        current = res.sset
        objs.append(current)
    return objs, connectings, results


def transpose(f, sd_src, ex_tgt):
    """Hom(Sd X, Y) -> Hom(X, Ex Y)."""
    x = sd_src.source
    images = []
    for n in range(x.dim + 1):
        level = []
        sdn = sd_delta(n).sset
        for j in range(x.counts[n]):
            comp_images = []
            for k in range(sdn.dim + 1):
                lv = []
                for c in range(sdn.counts[k]):
                    t = sd_src.component_total(
                        n, (n, j, midentity(n)), (k, c, midentity(k)))
                    lv.append(f.apply_total(t))
                comp_images.append(tuple(lv))
            comp = SimplicialMap(sdn, f.target, tuple(comp_images))
            level.append(ex_tgt.element_total(n, ex_tgt.index[n][comp]))
        images.append(tuple(level))
    return SimplicialMap(x, ex_tgt.sset, tuple(images))


def untranspose(g, sd_src, ex_tgt):
    """Hom(X, Ex Y) -> Hom(Sd X, Y)."""
    sdx = sd_src.sset
    rep_for = _nondeg_reps(sd_src)
    images = []
    for k in range(sdx.dim + 1):
        level = []
        for j in range(sdx.counts[k]):
            n, t, s = rep_for[(k, j)]
            the_map = ex_tgt.total_as_map(g.apply_total(t))
            level.append(the_map.apply_total(s))
        images.append(tuple(level))
    return SimplicialMap(sdx, ex_tgt.source, tuple(images))


# Relative homotopy classifier and the alpha squares.

@dataclass
class RelHomotopy:
    n: int
    sset: FinSimplicialSet
    left: SimplicialMap    # Delta_n -> RH_n, vertex-0 end
    right: SimplicialMap   # Delta_n -> RH_n, vertex-1 end
    inclusion: SimplicialMap  # j_n: boundary -> Delta_n


@functools.lru_cache(maxsize=None)
def rh(n):
    simplex = standard_simplex(n)
    bd, j = boundary(n)
    d1 = standard_simplex(1)
    prod_b = product(bd, d1)
    prod_d = product(simplex, d1)
    jx1 = product_map(j, identity_map(d1), prod_b, prod_d)
    po = pushout(SSET, prod_b.pr1, jx1)
    ends = []
    for v in (0, 1):
        lift = pair_map(identity_map(simplex), const_map(simplex, d1, v), prod_d)
        ends.append(compose_maps(po.from_right, lift))
    return RelHomotopy(n, po.obj, ends[0], ends[1], j)


def alpha_square(n):
    """(j_n, r_n): j_n -> l_n, the generating arrow for relative homotopy."""
    data = rh(n)
    sq = SquareMorphism(data.inclusion, data.left, data.inclusion, data.right)
    lhs = compose_maps(data.left, data.inclusion)
    rhs = compose_maps(data.right, data.inclusion)
    assert lhs == rhs, "alpha square must commute"
    return sq


# The generating cones.

class ConeFamily:
    """Legs Sd_m j_n -> P(m, n, k) for k >= m, materialized on demand."""

    def __init__(self, n, m):
        self.n = n
        self.m = m
        data = rh(n)
        self.t_bd = sd_tower(data.inclusion.source)
        self.t_dl = sd_tower(data.inclusion.target)
        self.t_rh = sd_tower(data.sset)
        self.j = data.inclusion
        self.l = data.left
        self.r = data.right
        self.apex = self.t_bd.lift_map(self.j, self.t_dl, m)
        self._legs = {}

    def leg(self, k):
        if k < self.m:
            raise ValueError("legs start at the base stage")
        if k in self._legs:
            return self._legs[k]
        n, m = self.n, self.m
        sdk_j = self.t_bd.lift_map(self.j, self.t_dl, k)
        sdk_l = self.t_dl.lift_map(self.l, self.t_rh, k)
        p_bd = self.t_bd.p_comp(k, m)
        p_dl = self.t_dl.p_comp(k, m)
        sdk_r = self.t_dl.lift_map(self.r, self.t_rh, k)
        p1 = pushout(SSET, p_bd, sdk_j)
        p2 = pushout(SSET, p_dl, sdk_r)
        arrow = pushout_factor(
            SSET, p_bd, sdk_j,
            compose_maps(p2.from_left, self.apex),
            compose_maps(p2.from_right, sdk_l))
        square = SquareMorphism(self.apex, arrow, p1.from_left, p2.from_left)
        self._legs[k] = square
        return square

    def cone(self):
        return Cone(self.apex, self.leg, lazy=True, first_index=self.m)

    def leg_comparison(self, k_hi, k_lo):
        """The canonical comparison from the deeper leg's target to the
        shallower one, collapsing the extra subdivisions; it commutes with
        both legs over the shared apex."""
        if not self.m <= k_lo <= k_hi:
            raise ValueError("comparison needs m <= k_lo <= k_hi")
        lo, hi = self.leg(k_lo), self.leg(k_hi)
        p_bd_hi = self.t_bd.p_comp(k_hi, self.m)
        p_dl_hi = self.t_dl.p_comp(k_hi, self.m)
        sdk_j_hi = self.t_bd.lift_map(self.j, self.t_dl, k_hi)
        sdk_r_hi = self.t_dl.lift_map(self.r, self.t_rh, k_hi)
        p1_lo = pushout(SSET, self.t_bd.p_comp(k_lo, self.m),
                        self.t_bd.lift_map(self.j, self.t_dl, k_lo))
        p2_lo = pushout(SSET, self.t_dl.p_comp(k_lo, self.m),
                        self.t_dl.lift_map(self.r, self.t_rh, k_lo))
        top = pushout_factor(
            SSET, p_bd_hi, sdk_j_hi,
            p1_lo.from_left,
            compose_maps(p1_lo.from_right, self.t_dl.p_comp(k_hi, k_lo)))
        bottom = pushout_factor(
            SSET, p_dl_hi, sdk_r_hi,
            p2_lo.from_left,
            compose_maps(p2_lo.from_right, self.t_rh.p_comp(k_hi, k_lo)))
        return SquareMorphism(hi.target_arrow, lo.target_arrow, top, bottom)


@functools.lru_cache(maxsize=None)
def cone_cnm(n, m):
    return ConeFamily(n, m)


def cone_pi0():
    """The zigzag cone detecting surjectivity on path components."""
    bang = SimplicialMap(EMPTY, POINT, ((),))

    def leg(k):
        z, start, end = zigzag(k)
        top = SimplicialMap(EMPTY, POINT, ((),))
        return SquareMorphism(bang, end, top, start)

    return Cone(bang, leg, lazy=True, first_index=0)


def is_we_bounded(f, n_max, m_max, k_max, cat=None):
    """Cone injectivity of f against each generating cone with indices up
    to the bounds; Verified entries carry replayable factorizations and
    anything else is only a bounded miss."""
    arr = ARR_SSET if cat is None else arrow_category(cat)
    out = {}
    for n in range(n_max + 1):
        for m in range(m_max + 1):
            fam = cone_cnm(n, m)
            out[(n, m)] = cone_injective(arr, fam.cone(), f, leg_bound=k_max)
    return out


def is_linear_zigzag(x):
    """Shape predicate: the 1-skeleton is a single path whose edge
    orientations alternate (every interior vertex is a double source or a
    double target); returns (ok, edge count)."""
    nv, ne = x.n_cells(0), x.n_cells(1)
    if nv != ne + 1:
        return False, ne
    if ne == 0:
        return nv == 1, 0
    incident = {v: [] for v in range(nv)}
    for e in range(ne):
        end = x.face(1, e, 0)[1]
        start = x.face(1, e, 1)[1]
        if start == end:
            return False, ne
        incident[start].append((e, "out"))
        incident[end].append((e, "in"))
    degrees = {v: len(l) for v, l in incident.items()}
    endpoints = [v for v, d in degrees.items() if d == 1]
    if len(endpoints) != 2 or any(d > 2 for d in degrees.values()):
        return False, ne
    for v, inc in incident.items():
        if len(inc) == 2 and inc[0][1] != inc[1][1]:
            return False, ne
    # Connectivity: walk from one endpoint.
    seen_edges = set()
    v = endpoints[0]
    prev_edge = None
    while True:
        nxt = [e for e, _ in incident[v] if e != prev_edge and e not in seen_edges]
        if not nxt:
            break
        e = nxt[0]
        seen_edges.add(e)
        end = x.face(1, e, 0)[1]
        start = x.face(1, e, 1)[1]
        v = end if v == start else start
        prev_edge = e
    return len(seen_edges) == ne, ne

"""Pointed endofunctors, free algebraic chains, and the bridge from free
algebras to algebraic-injective witness structures.

The free chain starts at X_0 = X, X_1 = TX with the unit as connecting
map and the identity as first structure map; each later stage coequalizes
the two canonical maps T X_n => T X_{n+1} so that the compatibility
square commutes by construction.  A chain stabilizes at the first stage
whose connecting map is invertible (detected by inverse search, since
coequalizer outputs are relabeled quotients), and there the algebra
structure is the inverse connecting map after the structure map.

The copower construction turns a family of generating morphisms into a
pointed endofunctor whose algebras are exactly the witness tables of
algebraic injectives; both directions of that correspondence live here
and round-trip exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotStabilized, StageBoundReached, UnsupportedBackend
from .kernel import is_iso, pushout, pushout_factor
from .lifting import AlgInjWitness, witness_replays


class PointedEndofunctor:
    """Interface: an endofunctor with a unit 1 -> T."""

    def __init__(self, cat):
        self.cat = cat

    def apply_obj(self, x):
        raise NotImplementedError

    def apply_mor(self, f):
        raise NotImplementedError

    def unit(self, x):
        raise NotImplementedError

    def validate_on(self, objects, morphisms):
        """Spot-check functoriality and naturality on samples; guards
        against garbage user-supplied functors."""
        cat = self.cat
        for x in objects:
            if self.apply_mor(cat.identity(x)) != cat.identity(self.apply_obj(x)):
                raise ValueError("endofunctor breaks identities")
        for f in morphisms:
            lhs = cat.compose(self.apply_mor(f), self.unit(cat.source(f)))
            rhs = cat.compose(self.unit(cat.target(f)), f)
            if lhs != rhs:
                raise ValueError("unit is not natural")
        for f in morphisms:
            for g in morphisms:
                if cat.source(g) != cat.target(f):
                    continue
                if (self.apply_mor(cat.compose(g, f))
                        != cat.compose(self.apply_mor(g), self.apply_mor(f))):
                    raise ValueError("endofunctor breaks composition")
        return self


class IdentityEndofunctor(PointedEndofunctor):
    def apply_obj(self, x):
        return x

    def apply_mor(self, f):
        return f

    def unit(self, x):
        return self.cat.identity(x)


@dataclass
class _RData:
    homs: list        # homs[i]: canonical hom(source(J[i]), c)
    pairs: list       # flattened (generator index, attempt index)
    a_parts: list
    b_parts: list
    eps: object       # copower of sources -> c
    lhs: object       # copower of sources -> copower of targets
    b_injections: list
    obj: object       # R c
    eta: object       # c -> R c
    from_b: object    # copower of targets -> R c


class RConstruction(PointedEndofunctor):
    """R c = pushout of the evaluation map out of the attempt copower
    along the generator copower; algebras for (R, eta) are witness
    tables."""

    def __init__(self, cat, generators):
        super().__init__(cat)
        self.generators = tuple(generators)
        self._cache = {}

    def _from_initial(self, c):
        cat = self.cat
        init = cat.initial()
        maps = list(cat.fillers(init, c))
        if len(maps) != 1:
            raise UnsupportedBackend("initial object must have unique maps out")
        return maps[0]

    def data(self, c):
        if c in self._cache:
            return self._cache[c]
        cat = self.cat
        homs = [cat.hom(cat.source(j), c) for j in self.generators]
        pairs = [(gi, fi) for gi, hl in enumerate(homs) for fi in range(len(hl))]
        a_parts = [cat.source(self.generators[gi]) for gi, _ in pairs]
        b_parts = [cat.target(self.generators[gi]) for gi, _ in pairs]
        if pairs:
            _, b_inj = cat.coproduct(b_parts)
            eps = cat.coproduct_factor(a_parts, [homs[gi][fi] for gi, fi in pairs])
            lhs = cat.coproduct_factor(
                a_parts,
                [cat.compose(b_inj[k], self.generators[gi])
                 for k, (gi, _) in enumerate(pairs)])
        else:
            b_inj = []
            eps = self._from_initial(c)
            lhs = self._from_initial(cat.initial())
        po = pushout(cat, eps, lhs)
        data = _RData(homs, pairs, a_parts, b_parts, eps, lhs, b_inj,
                      po.obj, po.from_left, po.from_right)
        self._cache[c] = data
        return data

    def apply_obj(self, c):
        return self.data(c).obj

    def unit(self, c):
        return self.data(c).eta

    def apply_mor(self, g):
        cat = self.cat
        dc = self.data(cat.source(g))
        dc2 = self.data(cat.target(g))
        u = cat.compose(dc2.eta, g)
        if dc.pairs:
            components = []
            for gi, fi in dc.pairs:
                shifted = cat.compose(g, dc.homs[gi][fi])
                fi2 = dc2.homs[gi].index(shifted)
                k2 = dc2.pairs.index((gi, fi2))
                components.append(cat.compose(dc2.from_b, dc2.b_injections[k2]))
            v = cat.coproduct_factor(dc.b_parts, components)
        else:
            v = self._from_initial(dc2.obj)
        return pushout_factor(cat, dc.eps, dc.lhs, u, v)


def witness_to_algebra(rcon, w):
    """A witness table on c yields the structure map R c -> c."""
    cat = rcon.cat
    c = w.carrier
    data = rcon.data(c)
    if data.pairs:
        fillers = []
        for gi, fi in data.pairs:
            f, filler = w.table[gi][fi]
            if f != data.homs[gi][fi]:
                raise ValueError("witness table out of canonical order")
            fillers.append(filler)
        v = cat.coproduct_factor(data.b_parts, fillers)
    else:
        v = rcon._from_initial(c)
    return pushout_factor(cat, data.eps, data.lhs, cat.identity(c), v)


def algebra_to_witness(rcon, c, structure):
    """A structure map R c -> c (splitting the unit) yields the witness
    table of chosen fillers."""
    cat = rcon.cat
    data = rcon.data(c)
    if cat.compose(structure, data.eta) != cat.identity(c):
        raise ValueError("structure map does not split the unit")
    rows = [[] for _ in rcon.generators]
    for k, (gi, fi) in enumerate(data.pairs):
        filler = cat.compose(structure,
                             cat.compose(data.from_b, data.b_injections[k]))
        rows[gi].append((data.homs[gi][fi], filler))
    w = AlgInjWitness(c, rcon.generators, tuple(tuple(r) for r in rows))
    if not witness_replays(cat, w):
        raise AssertionError("algebra produced a non-replaying witness")
    return w


class AlgebraicChain:
    """A finite prefix of stages with connecting maps j and structure maps
    x, validated against the unit and compatibility laws on construction."""

    def __init__(self, cat, functor, stages, j_single, x_maps):
        self.cat = cat
        self.functor = functor
        self.stages = list(stages)
        self.j_single = list(j_single)
        self.x_maps = list(x_maps)
        self.validate()

    def j(self, n, m):
        """Connecting map X_n -> X_m, a composite of the stored steps."""
        if not (0 <= n <= m < len(self.stages)):
            raise IndexError("stage out of range")
        out = self.cat.identity(self.stages[n])
        for i in range(n, m):
            out = self.cat.compose(self.j_single[i], out)
        return out

    def validate(self):
        cat, t = self.cat, self.functor
        for n, xm in enumerate(self.x_maps):
            unit_law = cat.compose(xm, t.unit(self.stages[n]))
            if unit_law != self.j_single[n]:
                raise ValueError(f"unit law fails at stage {n}")
        for m in range(len(self.x_maps)):
            for n in range(m):
                lhs = cat.compose(self.x_maps[m], t.apply_mor(self.j(n, m)))
                rhs = cat.compose(self.j(n + 1, m + 1), self.x_maps[n])
                if lhs != rhs:
                    raise ValueError(
                        f"compatibility square fails at stages ({n}, {m})")
        return self


@dataclass
class FreeChainResult:
    chain: AlgebraicChain
    stabilized_at: object
    algebra: object       # (carrier, structure map) or None

    @property
    def stabilized(self):
        return self.stabilized_at is not None


def free_chain(functor, x, stage_bound):
    """The free algebraic chain on x, computed until it stabilizes or the
    stage bound is hit (then the chain is returned without an algebra)."""
    cat = functor.cat
    stages = [x, functor.apply_obj(x)]
    j_single = [functor.unit(x)]
    x_maps = [cat.identity(functor.apply_obj(x))]
    stabilized_at = None
    while True:
        s = len(j_single) - 1
        if is_iso(cat, j_single[s]) is not None:
            stabilized_at = s
            break
        if len(stages) - 1 >= stage_bound:
            break
        n = len(x_maps) - 1
        t_xn = functor.apply_mor(x_maps[n])
        f1 = cat.compose(t_xn, functor.apply_mor(functor.unit(stages[n])))
        f2 = cat.compose(t_xn, functor.unit(functor.apply_obj(stages[n])))
        q, proj = cat.coequalizer(f1, f2)
        x_maps.append(proj)
        j_single.append(cat.compose(proj, functor.unit(stages[n + 1])))
        stages.append(q)
    chain = AlgebraicChain(cat, functor, stages, j_single, x_maps)
    algebra = None
    if stabilized_at is not None:
        algebra = _read_algebra(chain, stabilized_at)
    return FreeChainResult(chain, stabilized_at, algebra)


def _read_algebra(chain, s):
    cat = chain.cat
    inv = is_iso(cat, chain.j_single[s])
    structure = cat.compose(inv, chain.x_maps[s])
    carrier = chain.stages[s]
    if cat.compose(structure, chain.functor.unit(carrier)) != cat.identity(carrier):
        raise AssertionError("extracted structure does not split the unit")
    return carrier, structure


def detect_stabilization(chain):
    """Least stored stage from which every stored connecting step is
    invertible, or None."""
    cat = chain.cat
    iso = [is_iso(cat, j) is not None for j in chain.j_single]
    for s in range(len(iso)):
        if all(iso[s:]):
            return s
    return None


def extract_algebra(result):
    if not result.stabilized:
        raise NotStabilized("chain did not stabilize within the bound")
    return result.algebra


def verify_universal_property(functor, x, result, probe, f):
    """Check that the stabilized free algebra is genuinely free: the
    canonical stagewise morphism extends f, is an algebra morphism, and is
    the unique one (by exhaustive search over the hom-set).

    ``probe`` is a pair (carrier, structure) with structure . unit = 1.
    """
    cat = functor.cat
    y, y_struct = probe
    if cat.compose(y_struct, functor.unit(y)) != cat.identity(y):
        raise ValueError("probe structure does not split the unit")
    if not result.stabilized:
        raise NotStabilized("universal property needs a stabilized chain")
    chain = result.chain
    s = result.stabilized_at
    carrier, structure = result.algebra
    # Canonical morphism, stage by stage: the first step is forced, each
    # later one factors through the coequalizer.
    comps = [f, cat.compose(y_struct, functor.apply_mor(f))]
    for n in range(len(chain.x_maps) - 1):
        if len(comps) > s:
            break
        t_xn = functor.apply_mor(chain.x_maps[n])
        f1 = cat.compose(t_xn, functor.apply_mor(functor.unit(chain.stages[n])))
        f2 = cat.compose(t_xn, functor.unit(functor.apply_obj(chain.stages[n])))
        u = cat.compose(y_struct, functor.apply_mor(comps[n + 1]))
        comps.append(cat.coequalizer_factor(f1, f2, u))
    h = comps[s]
    if cat.compose(h, chain.j(0, s)) != f:
        return False
    if cat.compose(h, structure) != cat.compose(y_struct, functor.apply_mor(h)):
        return False
    count = 0
    for g in cat.fillers(carrier, y):
        if cat.compose(g, chain.j(0, s)) != f:
            continue
        if cat.compose(g, structure) == cat.compose(y_struct, functor.apply_mor(g)):
            count += 1
            if g != h:
                return False
    return count == 1


def free_algebraic_injective(cat, generators, x, stage_bound):
    """Free chain for the copower endofunctor; on stabilization the
    algebra converts to a witness table, validated by replay."""
    rcon = RConstruction(cat, generators)
    result = free_chain(rcon, x, stage_bound)
    if not result.stabilized:
        raise StageBoundReached(
            f"free chain did not stabilize within {stage_bound} stages")
    carrier, structure = result.algebra
    return rcon, result, algebra_to_witness(rcon, carrier, structure)

"""Computable-category abstraction and the finite colimit toolkit.

A backend exposes hom enumeration through one primitive, ``fillers``:
enumerate morphisms l: B -> X subject to precomposition constraints
(l . j = r) and postcomposition constraints (g . l = s), in a canonical
deterministic order.  Plain hom enumeration is the unconstrained case.
Every lifting search in the library reduces to this primitive.

Colimit providers (initial object, finite coproducts, coequalizers) are
optional; pushouts are derived.  Colimits are deterministic, so the
factoring operations recompute them instead of carrying handles around.
All values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsupportedBackend


class ComputableCategory:
    """Interface for explicitly enumerable finite categories.

    Objects and morphisms are immutable values interpreted by the backend
    instance; morphisms always determine their source and target.
    """

    def source(self, f):
        raise NotImplementedError

    def target(self, f):
        raise NotImplementedError

    def identity(self, a):
        raise NotImplementedError

    def compose(self, g, f):
        """g after f."""
        raise NotImplementedError

    def fillers(self, b, x, pre=(), post=()):
        """Yield every l: b -> x with l.j = r for (j, r) in ``pre`` and
        g.l = s for (g, s) in ``post``, in canonical order."""
        raise UnsupportedBackend(f"{type(self).__name__} cannot enumerate homs")

    def hom(self, a, b):
        """Exhaustive, duplicate-free, canonically ordered hom-set."""
        return list(self.fillers(a, b))

    # Optional colimit providers.

    def initial(self):
        raise UnsupportedBackend(f"{type(self).__name__} has no initial object")

    def coproduct(self, objs):
        """Return (object, list of injections)."""
        raise UnsupportedBackend(f"{type(self).__name__} has no coproducts")

    def coproduct_factor(self, objs, maps):
        """The map out of coproduct(objs) with the given components."""
        raise UnsupportedBackend(f"{type(self).__name__} has no coproducts")

    def coequalizer(self, f, g):
        """Return (object, projection).  f, g must be parallel."""
        raise UnsupportedBackend(f"{type(self).__name__} has no coequalizers")

    def coequalizer_factor(self, f, g, u):
        """The unique v with v . proj = u, for u coequalizing f and g."""
        raise UnsupportedBackend(f"{type(self).__name__} has no coequalizers")


def enumerate_homs(cat, a, b):
    """Exhaustive canonically ordered hom enumeration."""
    return cat.hom(a, b)


def is_iso(cat, f):
    """Return a two-sided inverse of f (the canonically first one), or
    None.  A backend may provide a direct ``inverse`` method; otherwise
    the inverse is found by exhaustive search, constrained to the two
    identity equations."""
    direct = getattr(cat, "inverse", None)
    if direct is not None:
        return direct(f)
    src, tgt = cat.source(f), cat.target(f)
    id_src, id_tgt = cat.identity(src), cat.identity(tgt)
    for g in cat.fillers(tgt, src, pre=[(f, id_src)], post=[(f, id_tgt)]):
        return g
    return None


@dataclass(frozen=True)
class SquareMorphism:
    """A commuting square, i.e. a morphism source_arrow -> target_arrow in
    the arrow category: target_arrow . top = bottom . source_arrow."""

    source_arrow: object
    target_arrow: object
    top: object
    bottom: object


def square_commutes(cat, sq):
    return cat.compose(sq.target_arrow, sq.top) == cat.compose(sq.bottom, sq.source_arrow)


@dataclass(frozen=True)
class Pushout:
    """Pushout of a span f: A -> B, g: A -> D, with its two coprojections."""

    obj: object
    from_left: object   # B -> obj
    from_right: object  # D -> obj


def _pushout_pieces(cat, f, g):
    b, d = cat.target(f), cat.target(g)
    _, (inj_b, inj_d) = cat.coproduct([b, d])
    return inj_b, inj_d, cat.compose(inj_b, f), cat.compose(inj_d, g)


def pushout(cat, f, g):
    """Pushout computed as coequalizer of a coproduct pair."""
    inj_b, inj_d, pf, pg = _pushout_pieces(cat, f, g)
    q, proj = cat.coequalizer(pf, pg)
    return Pushout(q, cat.compose(proj, inj_b), cat.compose(proj, inj_d))


def pushout_factor(cat, f, g, u, v):
    """Mediating map pushout(f, g).obj -> Z for a cocone (u: B -> Z,
    v: D -> Z) with u . f = v . g."""
    if cat.compose(u, f) != cat.compose(v, g):
        raise ValueError("not a cocone over the span")
    b, d = cat.target(f), cat.target(g)
    _, _, pf, pg = _pushout_pieces(cat, f, g)
    fused = cat.coproduct_factor([b, d], [u, v])
    return cat.coequalizer_factor(pf, pg, fused)


def count_mediating(cat, apex, legs, competing_apex, competing_legs):
    """Count morphisms apex -> competing_apex commuting with the paired
    legs.  The universal property of a colimit holds exactly when this is
    1 for every competing cocone.  Exhaustive; finite backends only."""
    count = 0
    for m in cat.fillers(apex, competing_apex):
        if all(cat.compose(m, leg) == cleg for leg, cleg in zip(legs, competing_legs)):
            count += 1
    return count


class ArrowCategory(ComputableCategory):
    """Arr(C): objects are C-morphisms, morphisms are commuting squares.

    Hom enumeration filters (top, bottom) pairs through the square
    condition; the square condition is pushed into the backend's
    constraint solver rather than filtering the full product.  Colimits
    are pointwise when C has them.
    """

    def __init__(self, base):
        self.base = base

    def source(self, sq):
        return sq.source_arrow

    def target(self, sq):
        return sq.target_arrow

    def identity(self, f):
        c = self.base
        return SquareMorphism(f, f, c.identity(c.source(f)), c.identity(c.target(f)))

    def compose(self, s2, s1):
        if s1.target_arrow != s2.source_arrow:
            raise ValueError("squares not composable")
        c = self.base
        return SquareMorphism(s1.source_arrow, s2.target_arrow,
                              c.compose(s2.top, s1.top),
                              c.compose(s2.bottom, s1.bottom))

    def fillers(self, b_arrow, x_arrow, pre=(), post=()):
        c = self.base
        pre_top = [(j.top, r.top) for j, r in pre]
        pre_bot = [(j.bottom, r.bottom) for j, r in pre]
        post_top = [(g.top, s.top) for g, s in post]
        post_bot = [(g.bottom, s.bottom) for g, s in post]
        for v in c.fillers(c.source(b_arrow), c.source(x_arrow), pre_top, post_top):
            # The square condition x . v = w . b becomes a precomposition
            # constraint on the bottom component once v is fixed.
            sq_pre = pre_bot + [(b_arrow, c.compose(x_arrow, v))]
            for w in c.fillers(c.target(b_arrow), c.target(x_arrow), sq_pre, post_bot):
                yield SquareMorphism(b_arrow, x_arrow, v, w)

    def initial(self):
        return self.base.identity(self.base.initial())

    def coproduct(self, arrows):
        c = self.base
        sources = [c.source(f) for f in arrows]
        targets = [c.target(f) for f in arrows]
        _, src_inj = c.coproduct(sources)
        _, tgt_inj = c.coproduct(targets)
        arrow = c.coproduct_factor(
            sources, [c.compose(tj, f) for tj, f in zip(tgt_inj, arrows)])
        injections = [SquareMorphism(f, arrow, sj, tj)
                      for f, sj, tj in zip(arrows, src_inj, tgt_inj)]
        return arrow, injections

    def coproduct_factor(self, arrows, squares):
        c = self.base
        cop_arrow, _ = self.coproduct(arrows)
        top = c.coproduct_factor([c.source(f) for f in arrows],
                                 [sq.top for sq in squares])
        bottom = c.coproduct_factor([c.target(f) for f in arrows],
                                    [sq.bottom for sq in squares])
        return SquareMorphism(cop_arrow, squares[0].target_arrow, top, bottom)

    def coequalizer(self, s1, s2):
        c = self.base
        g = s1.target_arrow
        _, pa = c.coequalizer(s1.top, s2.top)
        _, pb = c.coequalizer(s1.bottom, s2.bottom)
        induced = c.coequalizer_factor(s1.top, s2.top, c.compose(pb, g))
        return induced, SquareMorphism(g, induced, pa, pb)

    def coequalizer_factor(self, s1, s2, u):
        c = self.base
        induced, _ = self.coequalizer(s1, s2)
        vt = c.coequalizer_factor(s1.top, s2.top, u.top)
        vb = c.coequalizer_factor(s1.bottom, s2.bottom, u.bottom)
        return SquareMorphism(induced, u.target_arrow, vt, vb)


def arrow_category(cat):
    return ArrowCategory(cat)

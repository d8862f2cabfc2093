"""Generic lifting-property, injectivity and cone-injectivity engine.

Works over any ComputableCategory.  Verdicts are three-valued: a bounded
scan of a lazily infinite cone can refute nothing, so such searches end in
UnknownAtBound rather than RefutedExhaustive.  Every Verified verdict
carries fillers that replay by plain recomposition, and all choices are
first-in-canonical-order, which makes the witness structures deterministic
("the axiom of choice", realized constructively on finite instances).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import IncompatibleJ, NotInjective
from .finset import FinSetMap, FinSetObj
from .kernel import SquareMorphism


class Status(enum.Enum):
    VERIFIED = "verified"
    REFUTED_EXHAUSTIVE = "refuted-exhaustive"
    UNKNOWN_AT_BOUND = "unknown-at-bound"


@dataclass(frozen=True)
class InjectivityVerdict:
    status: Status
    witness: object = None
    counterexample: object = None
    bound: object = None

    @property
    def verified(self):
        return self.status is Status.VERIFIED


@dataclass(frozen=True)
class LiftingProblem:
    j: object  # A -> B
    f: object  # A -> C


@dataclass(frozen=True)
class Cone:
    """Morphisms out of a common source.  ``legs`` is a finite tuple, or a
    callable k -> leg for lazily generated cones (then ``lazy`` is True and
    searches need an explicit bound)."""

    apex: object
    legs: object
    lazy: bool = False
    first_index: int = 0

    def leg(self, k):
        return self.legs(k) if self.lazy else self.legs[k]

    def indices(self, bound=None):
        if self.lazy:
            if bound is None:
                raise ValueError("lazy cone needs a leg bound")
            return range(self.first_index, bound + 1)
        return range(len(self.legs))


def has_rlp(cat, j, g):
    """Does g have the right lifting property against j?

    Verified carries [(r, s, filler)] for every commuting square from j to
    g; RefutedExhaustive carries the first square with no filler.
    """
    a, b = cat.source(j), cat.target(j)
    x, y = cat.source(g), cat.target(g)
    fillers = []
    for r in cat.fillers(a, x):
        for s in cat.fillers(b, y, pre=[(j, cat.compose(g, r))]):
            found = None
            for l in cat.fillers(b, x, pre=[(j, r)], post=[(g, s)]):
                found = l
                break
            if found is None:
                return InjectivityVerdict(Status.REFUTED_EXHAUSTIVE,
                                          counterexample=(r, s))
            fillers.append((r, s, found))
    return InjectivityVerdict(Status.VERIFIED, witness=tuple(fillers))


def is_injective(cat, j, x):
    """Is the object x injective with respect to j: every f: A -> x
    extends along j."""
    a, b = cat.source(j), cat.target(j)
    table = []
    for f in cat.fillers(a, x):
        found = None
        for l in cat.fillers(b, x, pre=[(j, f)]):
            found = l
            break
        if found is None:
            return InjectivityVerdict(Status.REFUTED_EXHAUSTIVE, counterexample=f)
        table.append((f, found))
    return InjectivityVerdict(Status.VERIFIED, witness=tuple(table))


def rlp_as_arrow_injectivity(cat, f):
    """The square (f, 1_B): f -> 1_B whose arrow-category injectives are
    exactly the maps with the RLP against f."""
    b = cat.target(f)
    return SquareMorphism(f, cat.identity(b), f, cat.identity(b))


def cone_injective(cat, cone, x, leg_bound=None):
    """Cone injectivity: each f: apex -> x must factor through SOME leg.

    For lazy cones only legs up to ``leg_bound`` are materialized, and a
    miss yields UnknownAtBound (nothing was exhausted).  Finite cones can
    be genuinely refuted.
    """
    table = []
    indices = list(cone.indices(leg_bound))
    legs = {}
    for f in cat.fillers(cone.apex, x):
        hit = None
        for k in indices:
            if k not in legs:
                legs[k] = cone.leg(k)
            p = legs[k]
            for l in cat.fillers(cat.target(p), x, pre=[(p, f)]):
                hit = (k, l)
                break
            if hit is not None:
                break
        if hit is None:
            if cone.lazy:
                return InjectivityVerdict(Status.UNKNOWN_AT_BOUND,
                                          counterexample=f, bound=leg_bound)
            return InjectivityVerdict(Status.REFUTED_EXHAUSTIVE, counterexample=f)
        table.append((f, hit[0], hit[1]))
    return InjectivityVerdict(Status.VERIFIED, witness=tuple(table), bound=leg_bound)


@dataclass(frozen=True)
class AlgInjWitness:
    """A chosen filler c(j, f) for every j in J and f: source(j) -> carrier.

    ``table[i]`` lists (f, c) pairs in the canonical order of
    hom(source(J[i]), carrier), totally."""

    carrier: object
    generators: tuple
    table: tuple


@dataclass(frozen=True)
class ConeAlgInjWitness:
    """Cone variant: per cone p and attempt f, a leg index c1 and an
    extension c2 through that leg."""

    carrier: object
    cones: tuple
    table: tuple  # table[i] lists (f, c1, c2)


def build_algebraic_injective(cat, generators, x, leg_bound=None):
    """Total witness table for x against morphisms or cones, all fillers
    canonically first.  Raises NotInjective at the least unfillable
    problem."""
    generators = tuple(generators)
    if any(isinstance(j, Cone) for j in generators):
        if not all(isinstance(j, Cone) for j in generators):
            raise IncompatibleJ("cannot mix plain morphisms and cones")
        rows = []
        for i, cone in enumerate(generators):
            verdict = cone_injective(cat, cone, x, leg_bound)
            if not verdict.verified:
                raise NotInjective((i, verdict.counterexample))
            rows.append(verdict.witness)
        return ConeAlgInjWitness(x, generators, tuple(rows))
    rows = []
    for i, j in enumerate(generators):
        verdict = is_injective(cat, j, x)
        if not verdict.verified:
            raise NotInjective((i, verdict.counterexample))
        rows.append(verdict.witness)
    return AlgInjWitness(x, generators, tuple(rows))


def witness_replays(cat, w):
    """Check every table entry recomposes to the required equality."""
    if isinstance(w, ConeAlgInjWitness):
        for cone, row in zip(w.cones, w.table):
            for f, c1, c2 in row:
                if cat.compose(c2, cone.leg(c1)) != f:
                    return False
            attempts = [f for f, _, _ in row]
            if attempts != cat.hom(cone.apex, w.carrier):
                return False
        return True
    for j, row in zip(w.generators, w.table):
        for f, c in row:
            if cat.compose(c, j) != f:
                return False
        attempts = [f for f, _ in row]
        if attempts != cat.hom(cat.source(j), w.carrier):
            return False
    return True


def is_witness_morphism(cat, g, wx, wy):
    """Does g: carrier(wx) -> carrier(wy) commute with the chosen
    extensions: g . c_x(j, f) = c_y(j, g . f) for all entries."""
    if isinstance(wx, AlgInjWitness) != isinstance(wy, AlgInjWitness):
        raise IncompatibleJ("mixed plain/cone witnesses")
    if isinstance(wx, AlgInjWitness):
        if wx.generators != wy.generators:
            raise IncompatibleJ("witnesses over different generating families")
        for j, row in zip(wx.generators, wx.table):
            lookup = {f: c for f, c in _witness_row(wy, j)}
            for f, c in row:
                if cat.compose(g, c) != lookup[cat.compose(g, f)]:
                    return False
        return True
    if wx.cones != wy.cones:
        raise IncompatibleJ("witnesses over different generating families")
    for cone, row in zip(wx.cones, wx.table):
        lookup = {f: (c1, c2) for f, c1, c2 in _cone_row(wy, cone)}
        for f, c1, c2 in row:
            d1, d2 = lookup[cat.compose(g, f)]
            if d1 != c1 or cat.compose(g, c2) != d2:
                return False
    return True


def _witness_row(w, j):
    return w.table[w.generators.index(j)]


def _cone_row(w, cone):
    return w.table[w.cones.index(cone)]


@dataclass(frozen=True)
class SectionView:
    """The split epimorphism realizing one witness row: ``restriction``
    maps a filler (or (leg, filler) pair) to the attempt it extends, and
    ``section`` is the witness's chosen splitting."""

    restriction: FinSetMap
    section: FinSetMap
    fillers: tuple
    attempts: tuple


def restriction_map(cat, j, x):
    """C(j, x): C(B, x) -> C(A, x), l -> l . j, as a concrete FinSetMap on
    canonical hom indices."""
    attempts = cat.hom(cat.source(j), x)
    fillers = cat.hom(cat.target(j), x)
    idx = {f: i for i, f in enumerate(attempts)}
    table = tuple(idx[cat.compose(l, j)] for l in fillers)
    return FinSetMap(FinSetObj(len(fillers)), FinSetObj(len(attempts)), table), fillers, attempts


def cone_restriction_map(cat, cone, x, leg_bound=None):
    """Sum-over-legs variant: (i, l) -> l . p_i."""
    attempts = cat.hom(cone.apex, x)
    idx = {f: i for i, f in enumerate(attempts)}
    pairs = []
    for k in cone.indices(leg_bound):
        p = cone.leg(k)
        for l in cat.hom(cat.target(p), x):
            pairs.append((k, l, idx[cat.compose(l, p)]))
    table = tuple(v for _, _, v in pairs)
    fillers = tuple((k, l) for k, l, _ in pairs)
    return FinSetMap(FinSetObj(len(pairs)), FinSetObj(len(attempts)), table), fillers, attempts


def sections_view(cat, w, leg_bound=None):
    """One split epi per generator; the split-epi law rho . sec = id is
    checked exactly before returning."""
    views = []
    if isinstance(w, AlgInjWitness):
        for j, row in zip(w.generators, w.table):
            rho, fillers, attempts = restriction_map(cat, j, w.carrier)
            fidx = {l: i for i, l in enumerate(fillers)}
            sec = FinSetMap(rho.target, rho.source,
                            tuple(fidx[c] for _, c in row))
            if any(rho.table[sec.table[i]] != i for i in range(rho.target.size)):
                raise AssertionError("witness section does not split the restriction")
            views.append(SectionView(rho, sec, tuple(fillers), tuple(attempts)))
        return views
    for cone, row in zip(w.cones, w.table):
        rho, fillers, attempts = cone_restriction_map(cat, cone, w.carrier, leg_bound)
        fidx = {pair: i for i, pair in enumerate(fillers)}
        sec = FinSetMap(rho.target, rho.source,
                        tuple(fidx[(c1, c2)] for _, c1, c2 in row))
        if any(rho.table[sec.table[i]] != i for i in range(rho.target.size)):
            raise AssertionError("witness section does not split the restriction")
        views.append(SectionView(rho, sec, tuple(fillers), tuple(attempts)))
    return views

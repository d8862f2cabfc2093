"""Equivalence of finite categories, decided two ways.

The direct route checks fully-faithfulness by hom-table comparison and
essential surjectivity by isomorphism search.  The injectivity route tests
the functor, as an object of Arr(Cat), against three fixed squares: the
essential-surjectivity square (empty category into the point, over the
point into the walking isomorphism) and the (f, 1) squares of the fullness
and faithfulness generators.  Each square goes from a generating
cofibration to a trivial cofibration of the categorical model structure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SearchBudgetExceeded
from .fincat import (CAT, FinFunctor, discrete_two, empty_category,
                     parallel_pair, terminal_category, walking_arrow,
                     walking_iso)
from .kernel import SquareMorphism, arrow_category, square_commutes
from .lifting import InjectivityVerdict, Status, is_injective

ARR_CAT = arrow_category(CAT)


@dataclass(frozen=True)
class CatInjSquares:
    eso: SquareMorphism
    fullness: SquareMorphism
    faithfulness: SquareMorphism

    def all(self):
        return (self.eso, self.fullness, self.faithfulness)


def _functor(c, d, object_map, morphism_map):
    return FinFunctor(c, d, tuple(object_map), tuple(morphism_map)).validate()


def build_cat_inj_squares():
    """The three generating squares in Arr(Cat).

    The left arrows are the generating cofibrations (empty -> point,
    discrete pair -> walking arrow, parallel pair -> walking arrow); the
    eso square's right arrow picks out object 0 of the walking iso, its
    bottom picks out object 1.
    """
    empty = empty_category()
    point = terminal_category()
    iso = walking_iso()
    disc = discrete_two()
    arrow = walking_arrow()
    par = parallel_pair()

    bang = _functor(empty, point, [], [])
    pick0 = _functor(point, iso, [0], [iso.identity_of[0]])
    pick1 = _functor(point, iso, [1], [iso.identity_of[1]])
    eso = SquareMorphism(bang, pick0, bang, pick1)

    arrow_a = arrow.homset(0, 1)[0]
    include = _functor(disc, arrow, [0, 1], list(arrow.identity_of))
    id_arrow = CAT.identity(arrow)
    fullness = SquareMorphism(include, id_arrow, include, id_arrow)

    fold = _functor(par, arrow, [0, 1],
                    list(arrow.identity_of) + [arrow_a, arrow_a])
    faithfulness = SquareMorphism(fold, id_arrow, fold, id_arrow)

    squares = CatInjSquares(eso, fullness, faithfulness)
    for sq in squares.all():
        assert square_commutes(CAT, sq)
    return squares


@dataclass(frozen=True)
class EquivalenceWitness:
    """Essential-surjectivity choices (a_b, phi_b, phi_b inverse) per target
    object, plus a fullness preimage per target morphism; faithfulness is
    proposition-only."""

    eso: tuple     # per object b of the target: (a_b, phi_b, phi_b_inv)
    fullness: tuple  # per ((a, a'), morphism of target): chosen preimage


@dataclass(frozen=True)
class EquivalenceFailure:
    kind: str      # "eso" | "full" | "faithful"
    detail: tuple


def _isos(cat):
    """(source, target, m, m_inv) for every isomorphism of a FinCategory."""
    out = []
    for m in range(cat.n_morphisms()):
        s, t = cat.mor_source[m], cat.mor_target[m]
        for inv in cat.homset(t, s):
            if (cat.comp[inv][m] == cat.identity_of[s]
                    and cat.comp[m][inv] == cat.identity_of[t]):
                out.append((s, t, m, inv))
                break
    return out


def is_equivalence_direct(f):
    """(True, EquivalenceWitness) or (False, EquivalenceFailure); failures
    are reported in the fixed order eso, full, faithful."""
    c, d = f.source, f.target
    isos = _isos(d)
    eso = []
    for b in range(d.n_objects()):
        found = None
        for a in range(c.n_objects()):
            fa = f.object_map[a]
            for s, t, m, inv in isos:
                if s == fa and t == b:
                    found = (a, m, inv)
                    break
            if found:
                break
        if found is None:
            return False, EquivalenceFailure("eso", (b,))
        eso.append(found)
    fullness = []
    for a in range(c.n_objects()):
        for a2 in range(c.n_objects()):
            images = {}
            for m in c.homset(a, a2):
                fm = f.morphism_map[m]
                if fm not in images:
                    images[fm] = m
            for dm in d.homset(f.object_map[a], f.object_map[a2]):
                if dm not in images:
                    return False, EquivalenceFailure("full", (a, a2, dm))
                fullness.append(((a, a2), dm, images[dm]))
            seen = {}
            for m in c.homset(a, a2):
                fm = f.morphism_map[m]
                if fm in seen and seen[fm] != m:
                    return False, EquivalenceFailure("faithful", (a, a2, seen[fm], m))
                seen[fm] = m
    return True, EquivalenceWitness(tuple(eso), tuple(fullness))


def witness_replays(f, w):
    d = f.target
    for b, (a, phi, phi_inv) in enumerate(w.eso):
        if d.mor_source[phi] != f.object_map[a] or d.mor_target[phi] != b:
            return False
        if d.comp[phi_inv][phi] != d.identity_of[f.object_map[a]]:
            return False
        if d.comp[phi][phi_inv] != d.identity_of[b]:
            return False
    for (a, a2), dm, m in w.fullness:
        if f.morphism_map[m] != dm:
            return False
        if f.source.mor_source[m] != a or f.source.mor_target[m] != a2:
            return False
    return True


def is_equivalence_via_injectivity(f, squares=None, max_size=400, budget=None):
    """Arrow-category injectivity against the three generating squares.

    The guard bounds |objects| * |morphisms| of both categories before any
    functor enumeration starts.
    """
    for cat in (f.source, f.target):
        if cat.n_objects() * cat.n_morphisms() > max_size:
            raise SearchBudgetExceeded(
                f"category too large for functor enumeration ({cat.n_objects()} objects, "
                f"{cat.n_morphisms()} morphisms)")
    if squares is None:
        squares = build_cat_inj_squares()
    fillers = []
    for sq in squares.all():
        verdict = is_injective(ARR_CAT, sq, f)
        if not verdict.verified:
            return InjectivityVerdict(Status.REFUTED_EXHAUSTIVE,
                                      counterexample=(sq, verdict.counterexample))
        fillers.append(verdict.witness)
    return InjectivityVerdict(Status.VERIFIED, witness=tuple(fillers))


def eso_witness_from_verdict(squares, verdict):
    """Extract (a_b, phi_b) pairs from the eso-square fillers: the filler's
    top picks a_b and its bottom functor sends the generic isomorphism to
    phi_b: f(a_b) ~ b."""
    iso = walking_iso()
    u = iso.homset(0, 1)[0]
    out = []
    for attempt, square in verdict.witness[0]:
        b = attempt.bottom.object_map[0]
        a = square.top.object_map[0]
        phi = square.bottom.morphism_map[u]
        out.append((b, a, phi))
    return out

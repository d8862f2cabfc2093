"""Explicitly tabulated finite categories and their functors.

Two backends live here:

* ``TabulatedCategory`` exposes ONE finite category as a ComputableCategory
  (objects and morphisms are integer indices into the tables); this is the
  ambient category for lifting searches inside a FinCategory.
* ``Cat`` is the category of finite categories, whose hom-sets are
  enumerated by object-map backtracking with hom-table pruning followed by
  morphism-map backtracking.  A naive search over all morphism maps blows
  up even at desk scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import SearchBudgetExceeded
from .kernel import ComputableCategory


@dataclass(frozen=True)
class FinCategory:
    """A finite category with a total composition table.

    ``comp[g][f]`` is the index of g . f, or -1 when the pair is not
    composable.  Identities are listed in ``identity_of`` per object.
    """

    objects: tuple
    mor_names: tuple
    mor_source: tuple
    mor_target: tuple
    identity_of: tuple
    comp: tuple

    def n_objects(self):
        return len(self.objects)

    def n_morphisms(self):
        return len(self.mor_names)

    def homset(self, a, b):
        return [m for m in range(self.n_morphisms())
                if self.mor_source[m] == a and self.mor_target[m] == b]

    def compose(self, g, f):
        h = self.comp[g][f]
        if h < 0:
            raise ValueError("morphisms not composable")
        return h

    def validate(self):
        n = self.n_morphisms()
        for a, i in enumerate(self.identity_of):
            if self.mor_source[i] != a or self.mor_target[i] != a:
                raise ValueError(f"identity of object {a} has wrong endpoints")
        for g in range(n):
            for f in range(n):
                composable = self.mor_target[f] == self.mor_source[g]
                if composable != (self.comp[g][f] >= 0):
                    raise ValueError("composition table does not match composability")
                if composable:
                    h = self.comp[g][f]
                    if (self.mor_source[h] != self.mor_source[f]
                            or self.mor_target[h] != self.mor_target[g]):
                        raise ValueError("composite has wrong endpoints")
        for f in range(n):
            if self.comp[f][self.identity_of[self.mor_source[f]]] != f:
                raise ValueError("right identity law fails")
            if self.comp[self.identity_of[self.mor_target[f]]][f] != f:
                raise ValueError("left identity law fails")
        for h in range(n):
            for g in range(n):
                if self.comp[h][g] < 0:
                    continue
                for f in range(n):
                    if self.comp[g][f] < 0:
                        continue
                    if self.comp[self.comp[h][g]][f] != self.comp[h][self.comp[g][f]]:
                        raise ValueError("associativity fails")
        return self


def build_category(objects, morphisms, composition):
    """Assemble and validate a FinCategory.

    ``morphisms``: list of (name, source_object, target_object) for the
    non-identity morphisms; identities are added automatically with names
    ``id_<object>``.  ``composition``: dict (g_name, f_name) -> name for
    composites of non-identity pairs.
    """
    objects = tuple(objects)
    obj_index = {o: i for i, o in enumerate(objects)}
    names = [f"id_{o}" for o in objects]
    source = [i for i in range(len(objects))]
    target = [i for i in range(len(objects))]
    for name, s, t in morphisms:
        names.append(name)
        source.append(obj_index[s])
        target.append(obj_index[t])
    name_index = {n: i for i, n in enumerate(names)}
    n = len(names)
    comp = [[-1] * n for _ in range(n)]
    for g in range(n):
        for f in range(n):
            if target[f] != source[g]:
                continue
            if f < len(objects):
                comp[g][f] = g
            elif g < len(objects):
                comp[g][f] = f
            else:
                comp[g][f] = name_index[composition[(names[g], names[f])]]
    cat = FinCategory(objects, tuple(names), tuple(source), tuple(target),
                      tuple(range(len(objects))), tuple(tuple(r) for r in comp))
    return cat.validate()


# The fixed presentations used throughout: the generating cofibrations of
# the categorical model structure and the walking isomorphism.

def empty_category():
    return build_category([], [], {})

def terminal_category():
    return build_category(["*"], [], {})

def discrete_two():
    return build_category(["0", "1"], [], {})

def walking_arrow():
    return build_category(["0", "1"], [("a", "0", "1")], {})

def parallel_pair():
    return build_category(["0", "1"], [("a", "0", "1"), ("b", "0", "1")], {})

def walking_iso():
    """{0 ~ 1}: two objects, two mutually inverse arrows."""
    return build_category(
        ["0", "1"], [("u", "0", "1"), ("v", "1", "0")],
        {("v", "u"): "id_0", ("u", "v"): "id_1"})


class TabulatedCategory(ComputableCategory):
    """One FinCategory viewed as a computable category; objects and
    morphisms are indices."""

    def __init__(self, cat):
        self.cat = cat

    def source(self, f):
        return self.cat.mor_source[f]

    def target(self, f):
        return self.cat.mor_target[f]

    def identity(self, a):
        return self.cat.identity_of[a]

    def compose(self, g, f):
        return self.cat.compose(g, f)

    def fillers(self, b, x, pre=(), post=()):
        for m in self.cat.homset(b, x):
            if any(self.cat.compose(m, j) != r for j, r in pre):
                continue
            if any(self.cat.compose(g, m) != s for g, s in post):
                continue
            yield m


@dataclass(frozen=True)
class FinFunctor:
    source: FinCategory
    target: FinCategory
    object_map: tuple
    morphism_map: tuple

    def obj(self, a):
        return self.object_map[a]

    def mor(self, f):
        return self.morphism_map[f]

    def validate(self):
        c, d = self.source, self.target
        for m in range(c.n_morphisms()):
            fm = self.morphism_map[m]
            if (d.mor_source[fm] != self.object_map[c.mor_source[m]]
                    or d.mor_target[fm] != self.object_map[c.mor_target[m]]):
                raise ValueError("functor breaks endpoints")
        for a in range(c.n_objects()):
            if self.morphism_map[c.identity_of[a]] != d.identity_of[self.object_map[a]]:
                raise ValueError("functor breaks identities")
        for g in range(c.n_morphisms()):
            for f in range(c.n_morphisms()):
                if c.comp[g][f] < 0:
                    continue
                if (self.morphism_map[c.comp[g][f]]
                        != d.comp[self.morphism_map[g]][self.morphism_map[f]]):
                    raise ValueError("functor breaks composition")
        return self


def identity_functor(cat):
    return FinFunctor(cat, cat, tuple(range(cat.n_objects())),
                      tuple(range(cat.n_morphisms())))


def enumerate_functors(c, d, budget=None):
    """All functors c -> d, lexicographic in (object_map, morphism_map).

    Object maps are pruned by the hom-table condition (a nonempty hom-set
    must land in a nonempty hom-set); morphism maps are filled in by
    backtracking with composition checks after every assignment.
    """
    if c.n_objects() == 0:
        return [FinFunctor(c, d, (), ())]
    if d.n_objects() == 0:
        return []
    nonidentity = [m for m in range(c.n_morphisms())
                   if m not in c.identity_of]
    hom_nonempty = [(a, b) for a in range(c.n_objects())
                    for b in range(c.n_objects()) if c.homset(a, b)]
    out = []
    steps = 0
    for omap in itertools.product(range(d.n_objects()), repeat=c.n_objects()):
        if any(not d.homset(omap[a], omap[b]) for a, b in hom_nonempty):
            continue
        mmap = [None] * c.n_morphisms()
        for a in range(c.n_objects()):
            mmap[c.identity_of[a]] = d.identity_of[omap[a]]

        def consistent(m):
            # Check every fully assigned triple (g, f, g.f) touching m.
            for g in range(c.n_morphisms()):
                if mmap[g] is None:
                    continue
                for f in range(c.n_morphisms()):
                    if mmap[f] is None:
                        continue
                    h = c.comp[g][f]
                    if h < 0 or mmap[h] is None:
                        continue
                    if m not in (g, f, h):
                        continue
                    if d.comp[mmap[g]][mmap[f]] != mmap[h]:
                        return False
            return True

        def backtrack(i):
            nonlocal steps
            if i == len(nonidentity):
                out.append(FinFunctor(c, d, omap, tuple(mmap)))
                return
            m = nonidentity[i]
            for cand in d.homset(omap[c.mor_source[m]], omap[c.mor_target[m]]):
                steps += 1
                if budget is not None and steps > budget:
                    raise SearchBudgetExceeded("functor enumeration budget")
                mmap[m] = cand
                if consistent(m):
                    backtrack(i + 1)
                mmap[m] = None

        backtrack(0)
    return out


class Cat(ComputableCategory):
    """The category of finite categories and functors."""

    def __init__(self, budget=None):
        self.budget = budget

    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def identity(self, a):
        return identity_functor(a)

    def compose(self, g, f):
        if f.target != g.source:
            raise ValueError("functors not composable")
        return FinFunctor(f.source, g.target,
                          tuple(g.object_map[o] for o in f.object_map),
                          tuple(g.morphism_map[m] for m in f.morphism_map))

    def fillers(self, b, x, pre=(), post=()):
        for fun in enumerate_functors(b, x, self.budget):
            if any(self.compose(fun, j) != r for j, r in pre):
                continue
            if any(self.compose(g, fun) != s for g, s in post):
                continue
            yield fun

    def initial(self):
        return empty_category()


CAT = Cat()

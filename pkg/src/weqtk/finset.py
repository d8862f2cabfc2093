"""Finite sets backend: canonical carriers 0..size-1, maps as value tables.

Hom enumeration is lexicographic in the table; the constraint solver
enumerates only the admissible value per position, which keeps the order
exactly the restriction of the unconstrained lexicographic order.
Coequalizers relabel classes by least representative, so computed objects
have stable equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .kernel import ComputableCategory


@dataclass(frozen=True)
class FinSetObj:
    size: int

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("negative carrier size")


@dataclass(frozen=True)
class FinSetMap:
    source: FinSetObj
    target: FinSetObj
    table: tuple

    def __post_init__(self):
        if len(self.table) != self.source.size:
            raise ValueError("table length does not match source size")
        if any(not (0 <= v < self.target.size) for v in self.table):
            raise ValueError("table entry outside target")

    def __call__(self, x):
        return self.table[x]

    def is_injective(self):
        return len(set(self.table)) == len(self.table)

    def is_surjective(self):
        return set(self.table) == set(range(self.target.size))


def finset_map(source_size, target_size, table):
    return FinSetMap(FinSetObj(source_size), FinSetObj(target_size), tuple(table))


class FinSet(ComputableCategory):

    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def identity(self, a):
        return FinSetMap(a, a, tuple(range(a.size)))

    def compose(self, g, f):
        if f.target != g.source:
            raise ValueError("maps not composable")
        return FinSetMap(f.source, g.target, tuple(g.table[v] for v in f.table))

    def inverse(self, f):
        if f.source.size != f.target.size or not f.is_injective():
            return None
        table = [0] * f.source.size
        for i, v in enumerate(f.table):
            table[v] = i
        return FinSetMap(f.target, f.source, tuple(table))

    def fillers(self, b, x, pre=(), post=()):
        # allowed[v] is the candidate list for position v, ascending.
        allowed = [None] * b.size
        for g, s in post:
            for v in range(b.size):
                ok = [val for val in (allowed[v] if allowed[v] is not None
                                      else range(x.size))
                      if g.table[val] == s.table[v]]
                allowed[v] = ok
        for j, r in pre:
            for a in range(j.source.size):
                v, val = j.table[a], r.table[a]
                if allowed[v] is None:
                    allowed[v] = [val]
                elif val in allowed[v]:
                    allowed[v] = [val]
                else:
                    return
        domains = [al if al is not None else range(x.size) for al in allowed]
        for table in itertools.product(*domains):
            yield FinSetMap(b, x, table)

    def initial(self):
        return FinSetObj(0)

    def coproduct(self, objs):
        total = sum(o.size for o in objs)
        cop = FinSetObj(total)
        injections = []
        offset = 0
        for o in objs:
            injections.append(FinSetMap(o, cop, tuple(range(offset, offset + o.size))))
            offset += o.size
        return cop, injections

    def coproduct_factor(self, objs, maps):
        cop, _ = self.coproduct(objs)
        table = tuple(v for m in maps for v in m.table)
        return FinSetMap(cop, maps[0].target if maps else FinSetObj(0), table)

    def coequalizer(self, f, g):
        if f.source != g.source or f.target != g.target:
            raise ValueError("maps not parallel")
        parent = list(range(f.target.size))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for a in range(f.source.size):
            ra, rb = find(f.table[a]), find(g.table[a])
            if ra != rb:
                # Least representative wins, keeping labels canonical.
                lo, hi = min(ra, rb), max(ra, rb)
                parent[hi] = lo
        roots = sorted({find(i) for i in range(f.target.size)})
        index = {r: k for k, r in enumerate(roots)}
        proj = FinSetMap(f.target, FinSetObj(len(roots)),
                         tuple(index[find(i)] for i in range(f.target.size)))
        return proj.target, proj

    def coequalizer_factor(self, f, g, u):
        if self.compose(u, f) != self.compose(u, g):
            raise ValueError("map does not coequalize the pair")
        q, proj = self.coequalizer(f, g)
        table = [None] * q.size
        for i in range(f.target.size):
            table[proj.table[i]] = u.table[i]
        return FinSetMap(q, u.target, tuple(table))


FINSET = FinSet()

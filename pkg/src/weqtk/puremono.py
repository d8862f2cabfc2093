"""Pure monomorphisms of finite sets, decided by arrow-category
injectivity against the self-pushout squares.

For every map j between carriers up to the size bound, the test square is
the pushout cocone of j along itself; a map is pure exactly when it is
injective to all of these.  Purity is relative to the bound, which the
verdict records, but in finite sets any bound at least the carrier sizes
involved is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .finset import FINSET, finset_map
from .kernel import SquareMorphism, arrow_category, pushout
from .lifting import InjectivityVerdict, Status, is_injective

ARR_FINSET = arrow_category(FINSET)


@dataclass(frozen=True)
class PuritySquareFamily:
    size_bound: int
    squares: tuple  # SquareMorphism values, one per map j


def build_purity_squares(size_bound):
    squares = []
    for n in range(size_bound + 1):
        for m in range(size_bound + 1):
            for table in itertools.product(range(m), repeat=n):
                j = finset_map(n, m, table)
                po = pushout(FINSET, j, j)
                squares.append(SquareMorphism(j, po.from_left, j, po.from_right))
    return PuritySquareFamily(size_bound, tuple(squares))


def is_pure_mono(f, size_bound, family=None):
    """Arrow-category injectivity against the whole square family; the
    verdict's witness is one filler table per square."""
    if family is None:
        family = build_purity_squares(size_bound)
    tables = []
    for k, sq in enumerate(family.squares):
        verdict = is_injective(ARR_FINSET, sq, f)
        if not verdict.verified:
            return InjectivityVerdict(Status.REFUTED_EXHAUSTIVE,
                                      counterexample=(k, verdict.counterexample),
                                      bound=size_bound)
        tables.append(verdict.witness)
    return InjectivityVerdict(Status.VERIFIED, witness=tuple(tables),
                              bound=size_bound)


def split_mono_oracle(f):
    """Direct characterization in finite sets: injective with nonempty
    source, or empty-to-empty."""
    if not f.is_injective():
        return False
    if f.source.size == 0:
        return f.target.size == 0
    return True

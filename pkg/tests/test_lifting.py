import itertools

import pytest
from hypothesis import given, settings, strategies as st

from weqtk.errors import NotInjective
from weqtk.finset import FINSET, FinSetObj, finset_map
from weqtk.kernel import arrow_category, square_commutes
from weqtk.lifting import (AlgInjWitness, Cone, Status,
                           build_algebraic_injective, cone_injective, has_rlp,
                           is_injective, is_witness_morphism,
                           restriction_map, rlp_as_arrow_injectivity,
                           sections_view, witness_replays)

ARR = arrow_category(FINSET)


def all_maps(a, b):
    return [finset_map(a, b, t) for t in itertools.product(range(b), repeat=a)]


def all_maps_bounded(n):
    out = []
    for a in range(n + 1):
        for b in range(n + 1):
            out.extend(all_maps(a, b))
    return out


def test_has_rlp_identity():
    one = FINSET.identity(FinSetObj(1))
    assert has_rlp(FINSET, one, one).status is Status.VERIFIED


def test_has_rlp_surjection():
    j = finset_map(0, 1, [])
    g = finset_map(2, 1, [0, 0])
    v = has_rlp(FINSET, j, g)
    assert v.status is Status.VERIFIED
    for r, s, l in v.witness:
        assert FINSET.compose(l, j) == r
        assert FINSET.compose(g, l) == s


def test_has_rlp_refuted_empty():
    j = finset_map(0, 1, [])
    v = has_rlp(FINSET, j, j)
    assert v.status is Status.REFUTED_EXHAUSTIVE


def test_is_injective_examples():
    j = finset_map(1, 2, [0])
    assert is_injective(FINSET, j, FinSetObj(1)).status is Status.VERIFIED
    # Empty attempt set is vacuously verified.
    assert is_injective(FINSET, j, FinSetObj(0)).status is Status.VERIFIED
    j0 = finset_map(0, 1, [])
    assert is_injective(FINSET, j0, FinSetObj(0)).status is Status.REFUTED_EXHAUSTIVE
    assert is_injective(FINSET, finset_map(0, 0, []), FinSetObj(0)).status is Status.VERIFIED


def test_rlp_square_construction():
    f = finset_map(0, 1, [])
    sq = rlp_as_arrow_injectivity(FINSET, f)
    assert sq.source_arrow == f
    assert sq.target_arrow == FINSET.identity(FinSetObj(1))
    assert sq.top == f
    assert square_commutes(FINSET, sq)

    ident = FINSET.identity(FinSetObj(2))
    sq = rlp_as_arrow_injectivity(FINSET, ident)
    assert sq.top == sq.bottom == sq.source_arrow == sq.target_arrow == ident


def test_lemma_equivalence_carriers_up_to_two():
    maps = all_maps_bounded(2)
    for f in maps:
        sq = rlp_as_arrow_injectivity(FINSET, f)
        for g in maps:
            direct = has_rlp(FINSET, f, g).status
            via_arrow = is_injective(ARR, sq, g).status
            assert direct == via_arrow, (f, g)


def test_single_leg_cone_specializes():
    maps = all_maps_bounded(2)
    for j in maps:
        cone = Cone(j.source, (j,))
        for x in range(3):
            obj = FinSetObj(x)
            assert (cone_injective(FINSET, cone, obj).status
                    == is_injective(FINSET, j, obj).status)


def test_lazy_cone_unknown_at_bound():
    # Legs that can never fill a nonempty attempt: target stays empty.
    cone = Cone(FinSetObj(0), lambda k: finset_map(0, 0, []), lazy=True)
    v = cone_injective(FINSET, cone, FinSetObj(1), leg_bound=3)
    assert v.status is Status.VERIFIED  # unique attempt does factor
    cone2 = Cone(FinSetObj(1), lambda k: finset_map(1, 0, None) if False else finset_map(1, 1, [0]), lazy=True)
    v2 = cone_injective(FINSET, cone2, FinSetObj(1), leg_bound=2)
    assert v2.status is Status.VERIFIED


def test_build_witness_unique_filler():
    j = finset_map(0, 1, [])
    w = build_algebraic_injective(FINSET, [j], FinSetObj(1))
    assert isinstance(w, AlgInjWitness)
    assert len(w.table[0]) == 1
    assert witness_replays(FINSET, w)


def test_build_witness_not_injective():
    collapse = finset_map(2, 1, [0, 0])
    with pytest.raises(NotInjective):
        build_algebraic_injective(FINSET, [collapse], FinSetObj(2))


def test_witness_morphism_identity_and_tampered():
    j = finset_map(1, 2, [0])
    x = FinSetObj(2)
    w = build_algebraic_injective(FINSET, [j], x)
    ident = FINSET.identity(x)
    assert is_witness_morphism(FINSET, ident, w, w)
    # A second table choosing the next filler in order must fail against
    # the canonical one.
    row = w.table[0]
    alt_row = []
    for f, c in row:
        alts = [l for l in FINSET.fillers(FinSetObj(2), x, pre=[(j, f)])]
        alt_row.append((f, alts[1] if len(alts) > 1 else alts[0]))
    w2 = AlgInjWitness(x, w.generators, (tuple(alt_row),))
    assert w2 != w
    assert not is_witness_morphism(FINSET, ident, w2, w)


def test_sections_view_split_epi():
    j = finset_map(0, 1, [])
    w = build_algebraic_injective(FINSET, [j], FinSetObj(1))
    views = sections_view(FINSET, w)
    assert len(views) == 1
    rho, sec = views[0].restriction, views[0].section
    assert rho.source.size == 1 and rho.target.size == 1
    assert FINSET.compose(rho, sec) == FINSET.identity(rho.target)


def test_section_correspondence_small_carriers():
    gens = [finset_map(0, 1, []), finset_map(1, 2, [0]), finset_map(2, 1, [0, 0])]
    for size in range(4):
        x = FinSetObj(size)
        inj_all = all(is_injective(FINSET, j, x).verified for j in gens)
        sections_exist = True
        for j in gens:
            rho, fillers, attempts = restriction_map(FINSET, j, x)
            has_section = any(
                FINSET.compose(rho, s) == FINSET.identity(rho.target)
                for s in FINSET.hom(rho.target, rho.source))
            if not has_section:
                sections_exist = False
        try:
            w = build_algebraic_injective(FINSET, gens, x)
            witness_exists = True
        except NotInjective:
            witness_exists = False
        assert inj_all == sections_exist == witness_exists


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_verified_rlp_always_replays(data):
    a = data.draw(st.integers(0, 2))
    b = data.draw(st.integers(0, 2))
    x = data.draw(st.integers(0, 2))
    y = data.draw(st.integers(1, 2))
    jt = [data.draw(st.integers(0, b - 1)) for _ in range(a)] if b else []
    gt = [data.draw(st.integers(0, y - 1)) for _ in range(x)]
    if b == 0 and a > 0:
        return
    j = finset_map(a, b, jt)
    g = finset_map(x, y, gt)
    v = has_rlp(FINSET, j, g)
    if v.status is Status.VERIFIED:
        for r, s, l in v.witness:
            assert FINSET.compose(l, j) == r
            assert FINSET.compose(g, l) == s

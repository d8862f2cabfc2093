import pytest

from weqtk.fincat import (CAT, TabulatedCategory, build_category,
                          discrete_two, empty_category, enumerate_functors,
                          identity_functor, parallel_pair, terminal_category,
                          walking_arrow, walking_iso)
from weqtk.kernel import is_iso


def test_named_categories_validate():
    for cat in (empty_category(), terminal_category(), discrete_two(),
                walking_arrow(), parallel_pair(), walking_iso()):
        cat.validate()


def test_walking_iso_presentation():
    iso = walking_iso()
    # Smallest faithful presentation: 2 objects, 4 morphisms.
    assert iso.n_objects() == 2
    assert iso.n_morphisms() == 4


def test_bad_composition_rejected():
    with pytest.raises(ValueError):
        build_category(["0", "1"],
                       [("u", "0", "1"), ("v", "1", "0")],
                       {("v", "u"): "id_0", ("u", "v"): "id_0"})


def test_functor_counts():
    pt = terminal_category()
    iso = walking_iso()
    arrow = walking_arrow()
    assert len(enumerate_functors(pt, iso)) == 2
    assert len(enumerate_functors(iso, iso)) == 4
    assert len(enumerate_functors(empty_category(), arrow)) == 1
    assert len(enumerate_functors(arrow, empty_category())) == 0
    # Functors {0 -> 1} -> {0 -> 1}: constant 0, constant 1, identity.
    assert len(enumerate_functors(arrow, arrow)) == 3
    # Functors {0 ~ 1} -> {0 -> 1}: only the constants (a non-identity
    # image of u would need an inverse).
    assert len(enumerate_functors(iso, arrow)) == 2


def test_functors_validate():
    for c in (walking_iso(), walking_arrow(), parallel_pair()):
        for d in (walking_iso(), walking_arrow(), terminal_category()):
            for f in enumerate_functors(c, d):
                f.validate()


def test_swap_functor_is_iso():
    iso = walking_iso()
    swap = [f for f in enumerate_functors(iso, iso)
            if f.object_map == (1, 0)]
    assert len(swap) == 1
    inv = is_iso(CAT, swap[0])
    assert inv == swap[0]


def test_cat_composition():
    pt = terminal_category()
    iso = walking_iso()
    to_iso = enumerate_functors(pt, iso)[0]
    back = enumerate_functors(iso, pt)[0]
    rt = CAT.compose(back, to_iso)
    assert rt == identity_functor(pt)


def test_tabulated_backend():
    arrow = walking_arrow()
    back = TabulatedCategory(arrow)
    a = back.cat.homset(0, 1)[0]
    assert back.source(a) == 0 and back.target(a) == 1
    assert back.hom(0, 1) == [a]
    assert back.compose(a, back.identity(0)) == a
    assert is_iso(back, back.identity(1)) is not None
    assert is_iso(back, a) is None

import itertools

from weqtk.finset import FINSET, finset_map
from weqtk.kernel import square_commutes
from weqtk.lifting import Status
from weqtk.puremono import build_purity_squares, is_pure_mono, split_mono_oracle


def all_maps_bounded(n):
    out = []
    for a in range(n + 1):
        for b in range(n + 1):
            for t in itertools.product(range(b), repeat=a):
                out.append(finset_map(a, b, t))
    return out


def test_square_family_shapes():
    fam = build_purity_squares(2)
    for sq in fam.squares:
        assert square_commutes(FINSET, sq)
    by_map = {sq.source_arrow: sq for sq in fam.squares}
    ident1 = FINSET.identity(finset_map(1, 1, [0]).source)
    assert by_map[ident1].target_arrow.target.size == 1
    incl = finset_map(1, 2, [0])
    # Gluing two copies of 2 along 1 leaves 3 elements.
    assert by_map[incl].target_arrow.target.size == 3
    empty_to_one = finset_map(0, 1, [])
    assert by_map[empty_to_one].target_arrow.target.size == 2


def test_pure_mono_examples():
    fam = build_purity_squares(2)
    ident = FINSET.identity(finset_map(2, 2, [0, 1]).source)
    assert is_pure_mono(ident, 2, fam).status is Status.VERIFIED
    incl = finset_map(1, 2, [0])
    assert is_pure_mono(incl, 2, fam).status is Status.VERIFIED
    point = finset_map(0, 1, [])
    assert is_pure_mono(point, 2, fam).status is Status.REFUTED_EXHAUSTIVE
    collapse = finset_map(2, 1, [0, 0])
    assert is_pure_mono(collapse, 2, fam).status is Status.REFUTED_EXHAUSTIVE
    empty = finset_map(0, 0, [])
    assert is_pure_mono(empty, 2, fam).status is Status.VERIFIED


def test_agreement_with_split_mono_oracle_carriers_two():
    fam = build_purity_squares(2)
    for f in all_maps_bounded(2):
        verdict = is_pure_mono(f, 2, fam)
        assert (verdict.status is Status.VERIFIED) == split_mono_oracle(f), f

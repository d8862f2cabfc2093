import itertools
import math
import random

from weqtk.kernel import pushout
from weqtk.simplicial import (EMPTY, POINT, SSET, ReflexiveGraph, boundary,
                              compose_maps, coproduct_ssets, graph_a,
                              identity_map, joint_factor, make_map, pair_map,
                              pi0, pi0_surjective, product, product_map,
                              skeleton, standard_simplex, vertex_map, zigzag)


def test_standard_simplex_counts():
    d1 = standard_simplex(1)
    assert d1.counts == (2, 1)
    d2 = standard_simplex(2)
    assert d2.counts == (3, 3, 1)
    d3 = standard_simplex(3)
    assert d3.counts == tuple(math.comb(4, k + 1) for k in range(4))
    for d in (d1, d2, d3):
        d.validate()


def test_boundary_counts():
    bd1, j1 = boundary(1)
    assert bd1.counts == (2,)
    # The boundary of the 1-simplex is two points.
    two_points, _ = coproduct_ssets([POINT, POINT])
    assert bd1 == two_points
    bd2, j2 = boundary(2)
    assert bd2.counts == (3, 3)
    j1.validate()
    j2.validate()
    bd0, j0 = boundary(0)
    assert bd0 == EMPTY


def test_totals_count_delta1():
    d1 = standard_simplex(1)
    # Level 1: one nondegenerate edge plus two degenerate vertices.
    assert len(d1.totals(1)) == 3
    # Level 2 of the 1-simplex: surjections [2]->>[1] on the edge (2) plus
    # two doubly degenerate vertices.
    assert len(d1.totals(2)) == 4


def test_product_point_unit():
    d2 = standard_simplex(2)
    prod = product(POINT, d2)
    assert prod.sset == d2 or prod.sset.counts == d2.counts
    prod.pr2.validate()


def shuffle_count(p, q, k):
    """Independent oracle: nondegenerate k-cells of Delta_p x Delta_q are
    pairs of jointly-nondegenerate surjection paths, counted as monotone
    lattice paths; for k = p + q this is the binomial shuffle count."""
    count = 0
    for sx in itertools.combinations_with_replacement(range(p + 1), k + 1):
        for sy in itertools.combinations_with_replacement(range(q + 1), k + 1):
            if set(sx) != set(range(p + 1)) or set(sy) != set(range(q + 1)):
                continue
            joint = True
            for i in range(k):
                if sx[i] == sx[i + 1] and sy[i] == sy[i + 1]:
                    joint = False
                    break
            if joint and all(sx[i] <= sx[i + 1] and sy[i] <= sy[i + 1]
                             for i in range(k)):
                count += 1
    return count


def test_product_square():
    d1 = standard_simplex(1)
    prod = product(d1, d1)
    assert prod.sset.counts == (4, 5, 2)
    assert prod.sset.counts[2] == shuffle_count(1, 1, 2) == 2
    prod.sset.validate()
    prod.pr1.validate()
    prod.pr2.validate()


def test_product_delta2_delta1():
    d2, d1 = standard_simplex(2), standard_simplex(1)
    prod = product(d2, d1)
    assert prod.sset.counts[3] == shuffle_count(2, 1, 3) == 3
    prod.sset.validate()


def test_pair_map_diagonal():
    d1 = standard_simplex(1)
    prod = product(d1, d1)
    diag = pair_map(identity_map(d1), identity_map(d1), prod)
    diag.validate()
    assert compose_maps(prod.pr1, diag) == identity_map(d1)
    assert compose_maps(prod.pr2, diag) == identity_map(d1)


def test_coproduct_and_injections():
    d1 = standard_simplex(1)
    cop, (i0, i1) = coproduct_ssets([d1, d1])
    assert cop.counts == (4, 2)
    i0.validate()
    i1.validate()


def test_pushout_glue_edges_at_vertex():
    # Two 1-simplices glued at an endpoint: 3 vertices, 2 edges.
    d1 = standard_simplex(1)
    f = vertex_map(d1, 1)
    g = vertex_map(d1, 0)
    po = pushout(SSET, f, g)
    assert po.obj.counts == (3, 2)
    assert compose_maps(po.from_left, f) == compose_maps(po.from_right, g)


def test_pushout_coproduct_over_empty():
    d1 = standard_simplex(1)
    e0 = SSET.fillers(EMPTY, d1).__next__()
    po = pushout(SSET, e0, e0)
    assert po.obj.counts == (4, 2)


def test_hom_enumeration_counts():
    d1 = standard_simplex(1)
    # Maps Delta_1 -> Delta_1: monotone vertex pairs: (0,0),(0,1),(1,1).
    assert len(SSET.hom(d1, d1)) == 3
    # Maps Delta_0 -> Delta_1: the two vertices.
    assert len(SSET.hom(POINT, d1)) == 2
    # Maps Delta_2 -> Delta_1: monotone triples: 4.
    assert len(SSET.hom(standard_simplex(2), d1)) == 4
    assert len(SSET.hom(EMPTY, d1)) == 1
    assert len(SSET.hom(d1, EMPTY)) == 0


def test_hom_maps_validate():
    d2 = standard_simplex(2)
    d1 = standard_simplex(1)
    for f in SSET.hom(d2, d1):
        f.validate()


def test_zigzags():
    z0, a, b = zigzag(0)
    assert z0 == POINT and a == b
    z1, j0, j2 = zigzag(1)
    assert z1.counts == (3, 2)
    # Edges 0 -> 1 and 2 -> 1 per the alternating pattern.
    assert z1.face(1, 0, 1)[1] == 0 and z1.face(1, 0, 0)[1] == 1
    assert z1.face(1, 1, 1)[1] == 2 and z1.face(1, 1, 0)[1] == 1
    z1.validate()
    for n in range(2, 6):
        zn, _, _ = zigzag(n)
        assert zn.counts == (2 * n + 1, 2 * n)
        comps, _ = pi0(zn)
        assert len(comps) == 1


def test_pi0_examples():
    for n in range(3):
        comps, _ = pi0(standard_simplex(n))
        assert len(comps) == 1
    two, _ = coproduct_ssets([POINT, POINT])
    comps, _ = pi0(two)
    assert len(comps) == 2


def union_find_components(n_vertices, edges):
    parent = list(range(n_vertices))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for s, t in edges:
        parent[find(s)] = find(t)
    return len({find(v) for v in range(n_vertices)})


def test_pi0_matches_graph_oracle():
    rng = random.Random(42)
    for _ in range(20):
        nv = rng.randrange(1, 7)
        ne = rng.randrange(0, 7)
        edges = tuple((rng.randrange(nv), rng.randrange(nv)) for _ in range(ne))
        g = ReflexiveGraph(nv, edges)
        sk = skeleton(g)
        comps, _ = pi0(sk)
        assert len(comps) == union_find_components(nv, edges)


def test_pi0_of_products():
    rng = random.Random(9)
    for _ in range(10):
        nv = rng.randrange(1, 4)
        edges = tuple((rng.randrange(nv), rng.randrange(nv))
                      for _ in range(rng.randrange(0, 3)))
        x = skeleton(ReflexiveGraph(nv, edges))
        y = skeleton(ReflexiveGraph(rng.randrange(1, 3), ()))
        if x.cell_count() * y.cell_count() > 24:
            continue
        prod = product(x, y)
        cx, _ = pi0(x)
        cy, _ = pi0(y)
        cp, _ = pi0(prod.sset)
        assert len(cp) == len(cx) * len(cy)


def test_skeleton_examples():
    assert skeleton(ReflexiveGraph(1, ())) == POINT
    a3 = skeleton(graph_a(3))
    assert a3.counts == (4, 3)
    comps, _ = pi0(a3)
    assert len(comps) == 1


def test_pi0_surjectivity():
    z1, j0, j2 = zigzag(1)
    f = vertex_map(z1, 0)
    assert pi0_surjective(f)
    two, (i0, i1) = coproduct_ssets([POINT, POINT])
    assert not pi0_surjective(i0)


def test_product_map_functorial():
    d1 = standard_simplex(1)
    collapse = make_map(d1, POINT,
                        (((0, 0, (0,)), (0, 0, (0,))), ((0, 0, (0, 0)),)))
    prod_src = product(d1, d1)
    prod_tgt = product(POINT, d1)
    pm = product_map(collapse, identity_map(d1), prod_src, prod_tgt)
    pm.validate()


def test_joint_factor_roundtrip():
    u = (1, 0, (0, 0, 1))
    v = (1, 1, (0, 1, 1))
    (bu, bv), rho = joint_factor(u, v)
    assert bu == u and bv == v and rho == (0, 1, 2)
    u2 = (1, 0, (0, 0, 1, 1))
    v2 = (0, 0, (0, 0, 0, 0))
    (bu2, bv2), rho2 = joint_factor(u2, v2)
    assert bu2 == (1, 0, (0, 1)) and bv2 == (0, 0, (0, 0))
    from weqtk.simplicial import mcompose
    assert mcompose(bu2[2], rho2) == u2[2]
    assert mcompose(bv2[2], rho2) == v2[2]

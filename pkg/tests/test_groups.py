import random

import pytest

from gdeg.ccs import ccs, goursat_name, n_count
from gdeg.errors import GroupTooLarge, NotAProduct
from gdeg.groups import (
    Subgroup,
    bits,
    build_cyclic,
    build_dihedral,
    build_permutation_group,
    build_product,
    enumerate_subgroups,
    popcount,
)
from gdeg.pipeline import h_s_subgroup

from conftest import dihedral_env, small_groups


def test_dihedral_orders():
    D3 = build_dihedral(3)
    assert D3.order == 6
    assert sum(1 for a, e in D3.labels if e == 0) == 3
    assert build_dihedral(1).order == 2


def test_dihedral_rotation_is_n_cycle():
    D5 = build_dihedral(5)
    r = D5.labels.index((1, 0))
    assert D5.perm[r] == (1, 2, 3, 4, 0)


def test_product_orders_and_projections():
    K = small_groups()["D1xZ2"]
    assert K.order == 4
    G = build_product(K, build_dihedral(3))
    assert G.order == 24
    assert G.descriptor == "product(D1,Z2,D3)"
    for x in range(G.order):
        for y in range(G.order):
            (a, b), (c, d) = G.project(x), G.project(y)
            assert G.project(G.mul[x][y]) == (K.mul[a][c], G.factors[1].mul[b][d])


def test_trivial_factor_is_a_copy():
    B = build_dihedral(3)
    P = build_product(build_cyclic(1), B)
    assert P.order == B.order
    assert len(ccs(P)) == len(ccs(B))


def test_subgroup_counts():
    assert len(enumerate_subgroups(build_cyclic(2))) == 2
    assert len(enumerate_subgroups(build_dihedral(3))) == 6
    assert len(enumerate_subgroups(small_groups()["D1xZ2"])) == 5


def test_size_bound():
    with pytest.raises(GroupTooLarge):
        enumerate_subgroups(build_dihedral(3), bound=5)


def test_d5_classes():
    t = ccs(build_dihedral(5))
    assert [c.name for c in t] == ["Z1", "D1", "Z5", "D5"]


def test_d3_weyl_orders():
    t = ccs(build_dihedral(3))
    assert [c.weyl_order for c in t] == [6, 1, 2, 1]


def test_d1z_x_d3_present(d3):
    _, table, *_ = d3
    i = table.find("D1z x D3")
    assert table.weyl(i) == 2


def test_n_counts_in_d3():
    t = ccs(build_dihedral(3))
    z1, d1, z3, d3 = range(4)
    assert n_count(t, z1, d1) == 3
    assert n_count(t, d1, z3) == 0
    assert all(n_count(t, h, d3) == 1 for h in range(4))


@pytest.mark.parametrize("n", [1, 3, 5])
def test_partition_and_weyl(n):
    G, table, *_ = dihedral_env(n) if n > 1 else (None, None)
    if G is None:
        G = build_product(small_groups()["D1xZ2"], build_dihedral(1))
        table = ccs(G)
    subs = enumerate_subgroups(G)
    assert table.subgroup_count == len(subs)
    seen = set()
    for c in table:
        assert not seen & set(c.members)
        seen |= set(c.members)
        rep = c.representative.mask
        normalizer = sum(1 for g in range(G.order) if G.conjugate_mask(rep, g) == rep)
        assert normalizer == G.order // len(c.members)
        assert c.weyl_order == normalizer // c.order
    assert seen == {s.mask for s in subs}


def test_conjugation_stays_in_class():
    G, table, *_ = dihedral_env(5)
    rng = random.Random(0)
    subs = enumerate_subgroups(G)
    for _ in range(200):
        H = rng.choice(subs).mask
        g = rng.randrange(G.order)
        assert table.index_of(G.conjugate_mask(H, g)) == table.index_of(H)


@pytest.mark.parametrize("n", [3, 5])
def test_leq_matches_n_count(n):
    _, table, *_ = dihedral_env(n)
    C = len(table)
    for i in range(C):
        assert table.leq[i][i]
        for j in range(C):
            assert table.leq[i][j] == (n_count(table, i, j) > 0)
            if i != j and table.leq[i][j]:
                assert not table.leq[j][i]
            for k in range(C):
                if table.leq[i][j] and table.leq[j][k]:
                    assert table.leq[i][k]


def test_n_count_brute_force():
    G, table, *_ = dihedral_env(3)
    for i, ci in enumerate(table):
        for j, cj in enumerate(table):
            want = sum(1 for m in cj.members if ci.representative.mask & ~m == 0)
            assert n_count(table, i, j) == want


def test_goursat_d1z():
    K = small_groups()["D1xZ2"]
    G = build_product(build_dihedral(1), build_cyclic(2))
    gn = goursat_name(G, Subgroup(G, 0b1001))
    assert gn.orders[2] == 2  # L of order 2
    assert gn.Z == "Z1" and gn.R == "Z1"
    assert K.order == 4


def test_goursat_full_product_and_order_formula(d3):
    G, table, *_ = d3
    for c in table:
        if c.index == table.top:
            continue
        gn = goursat_name(G, c.representative)
        h, k, l, z, r = gn.orders
        assert c.order == h * k // l
        if l == 1:
            assert " x " in gn.rendered and "^" not in gn.rendered


def test_goursat_needs_product():
    with pytest.raises(NotAProduct):
        goursat_name(build_dihedral(3), Subgroup(build_dihedral(3), 1))


@pytest.mark.parametrize("n,p,name", [
    (3, 3, "(D1xZ2)^{D1z} x_{Z2}^{Z1} D1"),
    (9, 3, "(D1xZ2)^{D1z} x_{Z2}^{Z3} D3"),
    (15, 3, "(D1xZ2)^{D1z} x_{Z2}^{Z5} D5"),
    (15, 5, "(D1xZ2)^{D1z} x_{Z2}^{Z3} D3"),
])
def test_h_s_names(n, p, name):
    G, table, *_ = dihedral_env(n)
    mask = h_s_subgroup(G, p)
    assert G.is_subgroup(mask)
    assert table[table.index_of(mask)].name == name


def test_gap_names(d3):
    _, table, *_ = d3
    assert table[15].gap_name == "D1p^{D1z} x_{Z2}^{Z1} D1"
    assert table.find("D1p^{D1z} x_{Z2}^{Z1} D1") == 15


def test_permutation_group():
    S3 = build_permutation_group([(1, 0, 2), (1, 2, 0)])
    assert S3.order == 6
    assert len(ccs(S3)) == 4


def test_masks():
    assert bits(0b1011) == [0, 1, 3]
    assert popcount(0b1011) == 3

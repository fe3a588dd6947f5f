import itertools

import pytest

from nestfan.compat import degree
from nestfan.fans import build_fan
from nestfan.graphs import GraphError, disjoint_union, make_family, relabel
from nestfan.isos import (
    connected_size_partition,
    fan_class_count,
    graph_automorphisms,
    path_dihedral_class_count,
    path_rotation,
    spider_omega,
    spider_omega_tubing,
    tubing_orbit_count,
)
from nestfan.nested import maximal_tubings, tubes_of


def all_spiders(max_vertices):
    """All leg multisets with total vertex count up to the bound."""
    out = []

    def rec(prefix, remaining, lo):
        if prefix:
            out.append(list(prefix))
        for n in range(lo, remaining):
            if n + 1 <= remaining:
                rec(prefix + [n], remaining - (n + 1), n)

    for total in range(1, max_vertices + 1):
        rec([], total, 0)
    # deduplicate multisets
    uniq = {tuple(sorted(legs)) for legs in out}
    return sorted(uniq)


def test_spider_omega_complete_graph_is_complementation():
    sp = make_family("spider", [0, 0, 0])
    full = sp.full_mask
    for t in tubes_of(sp):
        assert spider_omega(sp, t) == full & ~t


def test_spider_omega_leg_example():
    sp = make_family("spider", [3])
    t = sp.mask_of(["v1_2", "v1_3"])
    assert sp.labels_of(spider_omega(sp, t)) == ["v1_1", "v1_2"]


def test_spider_omega_involution():
    sp = make_family("spider", [0, 2])
    for t in tubes_of(sp):
        assert spider_omega(sp, spider_omega(sp, t)) == t


def test_spider_omega_dualizes_degree():
    for legs in all_spiders(7):
        sp = make_family("spider", list(legs))
        ts = tubes_of(sp)
        for t, u in itertools.product(ts, ts):
            got = degree(sp, spider_omega(sp, t), spider_omega(sp, u))
            assert got == degree(sp, u, t), (legs, t, u)


def test_spider_omega_maps_tubings_to_tubings():
    sp = make_family("spider", [1, 2])
    for tub in maximal_tubings(sp):
        image = spider_omega_tubing(sp, tub)
        assert len(image) == len(tub)
        assert image in set(maximal_tubings(sp))


def test_dual_fan_is_primal_fan_of_omega_image():
    for legs in ([0, 0], [1, 1], [0, 2], [0, 0, 0]):
        sp = make_family("spider", legs)
        for init in maximal_tubings(sp):
            image_init = spider_omega_tubing(sp, init)
            dual = build_fan(sp, init, "dual")
            primal = build_fan(sp, image_init, "primal")
            mapping = {t: spider_omega(sp, t) for t in dual.ray_keys}
            # coordinate i of the dual fan corresponds to the coordinate of
            # the involution image of the i-th initial tube in the primal fan
            perm = [image_init.index(spider_omega(sp, t0)) for t0 in init]
            for t in dual.ray_keys:
                dv = dual.ray_of(t)
                pv = primal.ray_of(mapping[t])
                assert all(dv[i] == pv[perm[i]] for i in range(len(init)))
            dual_cones = {
                frozenset(mapping[t] for t in dual.cone_keys(c)) for c in dual.cones
            }
            primal_cones = {frozenset(primal.cone_keys(c)) for c in primal.cones}
            assert dual_cones == primal_cones


def test_path_rotation_table_n5():
    n = 5
    p6 = make_family("path", [6])

    def iv(j, k):
        return p6.mask_of([str(v) for v in range(j, k + 1)])

    table = {
        (1, 1): (2, 6), (2, 2): (1, 1), (3, 3): (2, 2), (4, 4): (3, 3),
        (5, 5): (4, 4), (6, 6): (5, 5),
        (1, 2): (3, 6), (2, 3): (1, 2), (3, 4): (2, 3), (4, 5): (3, 4),
        (5, 6): (4, 5),
        (1, 3): (4, 6), (2, 4): (1, 3), (3, 5): (2, 4), (4, 6): (3, 5),
        (1, 4): (5, 6), (2, 5): (1, 4), (3, 6): (2, 5),
        (1, 5): (6, 6), (2, 6): (1, 5),
    }
    for (j, k), (jj, kk) in table.items():
        assert path_rotation(n, 1, iv(j, k)) == iv(jj, kk)


def test_path_rotation_order_and_composition():
    for n in range(1, 7):
        p = make_family("path", [n + 1])
        for t in tubes_of(p):
            assert path_rotation(n, n + 3, t) == t
            step = t
            for p_count in range(1, n + 3):
                step = path_rotation(n, 1, step)
                assert step == path_rotation(n, p_count, t)


def test_path_rotation_preserves_compatibility():
    from nestfan.nested import are_compatible

    for n in range(1, 6):
        p = make_family("path", [n + 1])
        ts = tubes_of(p)
        for t, u in itertools.combinations(ts, 2):
            rt, ru = path_rotation(n, 1, t), path_rotation(n, 1, u)
            assert are_compatible(p, t, u) == are_compatible(p, rt, ru)


def test_graph_automorphism_counts():
    assert len(graph_automorphisms(make_family("path", [4]))) == 2
    assert len(graph_automorphisms(make_family("cycle", [4]))) == 8
    assert len(graph_automorphisms(make_family("star", [4]))) == 6
    assert len(graph_automorphisms(make_family("complete", [4]))) == 24


def test_tubing_orbit_counts():
    assert tubing_orbit_count(make_family("complete", [3])) == 1
    # hexagon triangulations up to the dihedral action: fan, strip, tripod
    assert path_dihedral_class_count(make_family("path", [4])) == 3
    # heptagon triangulations up to the dihedral action
    assert path_dihedral_class_count(make_family("path", [5])) == 4
    assert fan_class_count(make_family("path", [4])) == 3
    assert fan_class_count(make_family("complete", [3])) == 1


def test_cycle4_orbit_count_burnside_oracle():
    c4 = make_family("cycle", [4])
    perms = graph_automorphisms(c4)
    from nestfan.isos import apply_perm_tubing

    tubings = set(maximal_tubings(c4))
    fixed = sum(
        1
        for perm in perms
        for tub in tubings
        if apply_perm_tubing(perm, tub) == tub
    )
    assert tubing_orbit_count(c4) == fixed // len(perms)


def test_connected_size_partition():
    p3 = relabel(make_family("path", [3]), "a.")
    p2 = relabel(make_family("path", [2]), "b.")
    assert connected_size_partition(disjoint_union(p3, p2)) == (3, 2)
    assert connected_size_partition(make_family("complete", [4])) == (4,)
    from nestfan.graphs import graph_from_edges

    empty3 = graph_from_edges(["a", "b", "c"], [])
    assert connected_size_partition(empty3) == (1, 1, 1)


def test_tube_map_classification():
    from nestfan.isos import as_tube_map

    sp = make_family("spider", [0, 0, 0])
    omega = as_tube_map(sp, sp, lambda t: spider_omega(sp, t))
    assert omega.dualizes and not omega.preserves
    assert omega(sp.mask_of(["v1_0"])) == sp.mask_of(["v2_0", "v3_0"])
    p4 = make_family("path", [4])
    rot = as_tube_map(p4, p4, lambda t: path_rotation(3, 1, t, p4))
    # the path degree is symmetric, so the rotation both preserves and
    # reverses it
    assert rot.preserves and rot.dualizes
    with pytest.raises(GraphError):
        as_tube_map(p4, p4, lambda t: p4.mask_of(["1"]))  # constant map


def test_spider_omega_rejects_non_tube():
    sp = make_family("spider", [2])
    with pytest.raises(GraphError):
        spider_omega(sp, sp.mask_of(["v1_0", "v1_2"]))
    p3 = make_family("path", [3])
    with pytest.raises(GraphError):
        spider_omega(p3, p3.mask_of(["1"]))

from fractions import Fraction

import pytest

from nestfan.fans import build_fan, build_nested_fan
from nestfan.graphs import GraphError, make_family
from nestfan.nested import maximal_tubings
from nestfan.polytopes import (
    concave_height,
    find_weights_lp,
    path_cycle_weights,
    realize_polytope,
    star_fan,
    star_polytope,
    verify_normal_fan,
)
from helpers import connected_graph_classes


def test_find_weights_triangle_hexagon():
    k3 = make_family("complete", [3])
    init = maximal_tubings(k3)[0]
    fan = build_fan(k3, init, "primal")
    w = find_weights_lp(fan)
    assert w is not None and all(v >= 1 for v in w.values())
    poly = realize_polytope(fan, w)
    assert len(poly.vertices) == 6
    assert verify_normal_fan(poly, fan)


def test_find_weights_nested_fans_small():
    for g in connected_graph_classes(4):
        fan = build_nested_fan(g)
        w = find_weights_lp(fan)
        assert w is not None
        assert verify_normal_fan(realize_polytope(fan, w), fan)


def test_path_cycle_weights_examples():
    p4 = make_family("path", [4])
    for init in maximal_tubings(p4):
        w = path_cycle_weights(p4, init)
        fan = build_fan(p4, init, "primal")
        assert verify_normal_fan(realize_polytope(fan, w), fan)


def test_cycle_weights_primal_and_dual():
    c4 = make_family("cycle", [4])
    for init in maximal_tubings(c4)[:6]:
        for kind in ("primal", "dual"):
            w = path_cycle_weights(c4, init, kind)
            fan = build_fan(c4, init, kind)
            assert verify_normal_fan(realize_polytope(fan, w), fan), (init, kind)


def test_cycle_dual_halves_largest_proper_tubes():
    c4 = make_family("cycle", [4])
    init = maximal_tubings(c4)[0]
    w = path_cycle_weights(c4, init, "dual")
    m = 4
    for t, val in w.items():
        if t in init:
            continue
        expect = Fraction(concave_height(m, t.bit_count()))
        if t.bit_count() == m - 1:
            expect /= 2
        assert val == expect


def test_path_cycle_weights_rejects_other_graphs():
    s4 = make_family("star", [4])
    with pytest.raises(GraphError):
        path_cycle_weights(s4, maximal_tubings(s4)[0])


def test_star_polytope_pentagon():
    poly = star_polytope(2)
    pts = {tuple(map(int, p)) for p, _ in poly.vertices}
    assert pts == {(1, 2), (2, 1), (0, 2), (2, 0), (0, 0)}
    offs = sorted(int(o) for _, _, o in poly.facets)
    assert offs == [0, 0, 2, 2, 3]
    assert verify_normal_fan(poly, star_fan(2))


def test_star_polytope_f_values():
    poly = star_polytope(3)
    by_size = {}
    for key, _, off in poly.facets:
        if off != 0:
            by_size.setdefault(key.bit_count(), set()).add(off)
    assert by_size == {1: {Fraction(6)}, 2: {Fraction(5)}, 3: {Fraction(3)}}


def test_star_polytope_vertex_count_and_normal_fan():
    import math

    for n in (2, 3):
        poly = star_polytope(n)
        expect = sum(math.factorial(n) // math.factorial(i) for i in range(n + 1))
        assert len(poly.vertices) == expect
        assert verify_normal_fan(poly, star_fan(n))


def test_star_polytope_vrep_hrep_consistency():
    for n in (2, 3):
        poly = star_polytope(n)
        for point, tag in poly.vertices:
            for key, normal, off in poly.facets:
                val = sum(x * c for x, c in zip(point, normal))
                if key in tag:
                    assert val == off
                else:
                    assert val < off


def test_verify_normal_fan_detects_bad_weights():
    k3 = make_family("complete", [3])
    init = maximal_tubings(k3)[0]
    fan = build_fan(k3, init, "primal")
    w = find_weights_lp(fan)
    # push one non-initial weight below its flip bound
    t = next(k for k in fan.ray_keys if k not in init)
    bad = dict(w)
    bad[t] = Fraction(-100)
    poly = realize_polytope(fan, bad)
    assert not verify_normal_fan(poly, fan)


def test_adjacent_vertices_differ_orthogonally_to_shared_rays():
    p4 = make_family("path", [4])
    init = maximal_tubings(p4)[0]
    fan = build_fan(p4, init, "primal")
    w = path_cycle_weights(p4, init)
    poly = realize_polytope(fan, w)
    verts = {tag: p for p, tag in poly.vertices}
    rays = fan.reduced_rays()
    for ci, cj, out_i, in_i in fan.flips:
        a = verts[frozenset(fan.cone_keys(fan.cones[ci]))]
        b = verts[frozenset(fan.cone_keys(fan.cones[cj]))]
        diff = [x - y for x, y in zip(a, b)]
        for i in set(fan.cones[ci]) & set(fan.cones[cj]):
            assert sum(d * c for d, c in zip(diff, rays[i])) == 0


def test_design_fan_explicit_weights():
    # all-squares initial tubing: cubical weights certify the design fan
    for g in connected_graph_classes(3):
        from nestfan.design import all_squares_tubing

        fan = build_fan(g, all_squares_tubing(g), "design_primal")
        big = Fraction(3 ** (2 * g.m))
        w = {}
        for key in fan.ray_keys:
            if key[0] == "s":
                w[key] = big
            else:
                size = key[1].bit_count()
                w[key] = Fraction(3**g.m * size - 3**size)
        poly = realize_polytope(fan, w)
        assert verify_normal_fan(poly, fan)

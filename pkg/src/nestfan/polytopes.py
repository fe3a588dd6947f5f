"""Polytopality certificates: weights on rays and realizing polytopes.

A complete simplicial fan is the normal fan of a simple polytope exactly
when some positive weight on the rays makes every flip dependence evaluate
strictly positive.  The generic route finds such weights by exact LP; paths
and cycles admit an explicit concave-height construction; the star has a
fully explicit realization with integer coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from .exactla import lp_feasible
from .fans import Fan, build_fan, flip_dependence_on
from .graphs import Graph, GraphError, make_family, proper_tubes
from .nested import canonical, maximal_tubings

Weights = dict


@dataclass(frozen=True)
class Polytope:
    """H- and V-representations with exact rational data.

    ``facets`` are (ray key or None, normal vector, offset) triples read as
    normal . x <= offset; ``vertices`` are (point, cone tag) pairs, the tag
    being the frozenset of ray keys whose inequalities are tight there.
    """

    facets: tuple[tuple[object, tuple, Fraction], ...]
    vertices: tuple[tuple[tuple[Fraction, ...], frozenset], ...]


def fan_weight_rows(f: Fan) -> list[tuple[list[int], int]]:
    """One LP row per flip: the dependence evaluated at the weights must be
    at least 1 (scale-invariant form of strict positivity)."""
    rays = f.reduced_rays()
    rows = []
    for ci, cj, out_i, in_i in f.flips:
        dep, separating, _ = flip_dependence_on(f, rays, ci, cj, out_i, in_i)
        if dep is None or not separating:
            raise GraphError("weight rows need a verified fan")
        coeffs = [0] * len(f.ray_keys)
        for key, c in dep.as_dict().items():
            coeffs[f.index_of(key)] = c
        rows.append((coeffs, 1))
    return rows


def find_weights_lp(f: Fan) -> Optional[Weights]:
    """Exact positive weights making all flip rows positive, or None when
    the LP is infeasible (which is a reportable finding, not an error)."""
    rows = fan_weight_rows(f)
    n = len(f.ray_keys)
    sol = lp_feasible(rows, n, lower=[Fraction(1)] * n)
    if sol is None:
        return None
    return dict(zip(f.ray_keys, sol))


def concave_height(m: int, size: int) -> int:
    """k(2(m+1) - k) at k = size: strictly concave, increasing and positive
    for sizes 1..m, and integer-valued."""
    return size * (2 * (m + 1) - size)


def path_cycle_weights(g: Graph, initial, kind: str = "primal") -> Weights:
    """Explicit weights for path and cycle compatibility fans.

    Non-initial tubes get the concave height of their size; on cycles the
    dual fan halves the weight of the tubes one vertex short of the whole
    cycle; initial tubes get a scanned constant large enough to clear every
    flip row they appear in.
    """
    degs = sorted(nb.bit_count() for nb in g.nbr)
    m = g.m
    is_path = degs == sorted([1, 1] + [2] * (m - 2)) or m <= 2
    is_cycle = m >= 3 and degs == [2] * m
    if not (is_path or is_cycle):
        raise GraphError("explicit weights exist only for paths and cycles")
    init = canonical(initial)
    fan = build_fan(g, init, kind if kind in ("primal", "dual") else "primal")

    halve = is_cycle and kind == "dual"
    base: Weights = {}
    for t in fan.ray_keys:
        if t in init:
            continue
        w = Fraction(concave_height(m, t.bit_count()))
        if halve and t.bit_count() == m - 1:
            w = w / 2
        base[t] = w

    rays = fan.reduced_rays()
    need = Fraction(0)
    for ci, cj, out_i, in_i in fan.flips:
        dep, separating, _ = flip_dependence_on(fan, rays, ci, cj, out_i, in_i)
        if dep is None or not separating:
            raise GraphError("fan verification failed while scanning weights")
        const = Fraction(0)
        c_init = 0
        for key, c in dep.as_dict().items():
            if key in init:
                c_init += c
            else:
                const += c * base[key]
        if c_init == 0:
            if const <= 0:
                raise GraphError("flip row cannot be made positive")
            continue
        if c_init < 0:
            raise GraphError("initial tube with negative flip coefficient")
        need = max(need, (1 - const) / c_init)
    omega = need + 1
    out = dict(base)
    for t in init:
        out[t] = omega
    return out


# ---------------------------------------------------------------------------
# realization


def _solve_int_rows(rows: list[Sequence[int]], rhs_num: list[int], den: int):
    """Solve A x = b/den for integer A exactly; returns (nums, d) with
    x = nums / d, or None when A is singular."""
    n = len(rows)
    a = [list(rows[i]) + [rhs_num[i]] for i in range(n)]
    prev = 1
    for c in range(n):
        pr = next((i for i in range(c, n) if a[i][c]), None)
        if pr is None:
            return None
        if pr != c:
            a[c], a[pr] = a[pr], a[c]
            for j in range(n + 1):
                a[pr][j] = -a[pr][j]
        piv = a[c][c]
        for i in range(c + 1, n):
            f = a[i][c]
            row = a[i]
            rowc = a[c]
            for j in range(c, n + 1):
                row[j] = (piv * row[j] - f * rowc[j]) // prev
        prev = piv
    # division-free back-substitution over a running common denominator
    nums = [0] * n
    d = 1
    for i in reversed(range(n)):
        piv = a[i][i]
        s = a[i][n] * d
        for j in range(i + 1, n):
            if nums[j]:
                s -= a[i][j] * nums[j]
        for j in range(i + 1, n):
            if nums[j]:
                nums[j] *= piv
        nums[i] = s
        d *= piv
    from math import gcd

    g = d
    for v in nums:
        g = gcd(g, v)
    return [v // g for v in nums], (d // g) * den


def realize_polytope(f: Fan, weights: Weights) -> Polytope:
    """Vertex per maximal cone: the unique point where the cone's ray
    inequalities are tight.  Offsets may be zero (supporting through the
    origin); every other combination must come out strictly smaller, which
    verify_normal_fan checks."""
    rays = f.reduced_rays()
    n = f.dimension
    facets = tuple(
        (key, tuple(rays[i]), Fraction(weights[key]))
        for i, key in enumerate(f.ray_keys)
    )
    verts = []
    for cone in f.cones:
        a = [rays[i] for i in cone]
        b = [Fraction(weights[f.ray_keys[i]]) for i in cone]
        den = 1
        for x in b:
            den = lcm(den, x.denominator)
        if all(isinstance(v, int) for row in a for v in row):
            solved = _solve_int_rows(a, [int(x * den) for x in b], den)
            if solved is None:
                raise GraphError("singular cone matrix; fan not simplicial")
            nums, d = solved
            point = tuple(Fraction(v, d) for v in nums)
        else:
            from .exactla import solve_square

            sol = solve_square(a, b)
            if sol is None:
                raise GraphError("singular cone matrix; fan not simplicial")
            point = tuple(sol)
        verts.append((point, frozenset(f.cone_keys(cone))))
    return Polytope(facets=facets, vertices=tuple(verts))


def verify_normal_fan(p: Polytope, f: Fan) -> bool:
    """Exact incidence check: the vertex tagged by each maximal cone lies on
    exactly its own ray hyperplanes and strictly inside all others.

    Everything is rescaled to integers (a positive scaling per facet and per
    vertex changes nothing) so the inner loop is integer arithmetic.
    """
    rays = f.reduced_rays()
    by_normal = {}
    for _, normal, offset in p.facets:
        by_normal[tuple(normal)] = offset
    # integer normals with rational offsets, scaled facet by facet
    normals_int: list[tuple[int, ...]] = []
    off_num: list[int] = []
    off_den: list[int] = []
    for r in rays:
        key = tuple(r)
        if key not in by_normal:
            return False
        off = by_normal[key]
        den = 1
        if not type(r[0]) is int:
            for x in r:
                den = lcm(den, Fraction(x).denominator)
        normals_int.append(tuple(int(x * den) for x in r) if den != 1 else tuple(r))
        scaled = Fraction(off) * den
        off_num.append(scaled.numerator)
        off_den.append(scaled.denominator)
    by_tag = {tag: point for point, tag in p.vertices}
    if len(by_tag) != len(p.vertices):
        return False
    for cone in f.cones:
        tag = frozenset(f.cone_keys(cone))
        point = by_tag.get(tag)
        if point is None:
            return False
        vden = 1
        for x in point:
            vden = lcm(vden, Fraction(x).denominator)
        nums = tuple(int(x * vden) for x in point)
        inside = set(cone)
        for i, rint in enumerate(normals_int):
            s = 0
            for a, b in zip(nums, rint):
                if b:
                    s += a * b
            lhs = s * off_den[i]
            rhs = off_num[i] * vden
            if i in inside:
                if lhs != rhs:
                    return False
            elif lhs >= rhs:
                return False
    return True


# ---------------------------------------------------------------------------
# the stellohedron


def star_polytope(n: int) -> Polytope:
    """Explicit realization for the star on n+1 vertices with the all-leaves
    initial tubing: vertices are coordinate permutations of partial staircase
    sums, facets pair the characteristic vector of the leaves outside a tube
    with a concave quadratic offset."""
    if n < 1:
        raise GraphError("the star realization needs at least one leaf")
    g = make_family("star", [n + 1])
    leaves = [g.index(f"l{i}") for i in range(1, n + 1)]
    center = g.index("*")
    init = canonical(1 << v for v in leaves)

    def f_off(k: int) -> Fraction:
        return Fraction((n + k) * (n + 1 - k), 2)

    facets = []
    for t in proper_tubes(g):
        if t & (1 << center):
            normal = tuple(
                1 if not t & (1 << leaves[i]) else 0 for i in range(n)
            )
            facets.append((t, normal, f_off(t.bit_count())))
        else:
            i = leaves.index(t.bit_length() - 1)
            normal = tuple(-1 if j == i else 0 for j in range(n))
            facets.append((t, normal, Fraction(0)))

    verts = []
    for tub in maximal_tubings(g):
        nodes = list(tub) + [g.full_mask]
        point = []
        for v in leaves:
            smallest = min(
                (s for s in nodes if s & (1 << v)), key=lambda s: s.bit_count()
            )
            point.append(Fraction(smallest.bit_count() - 1))
        verts.append((tuple(point), frozenset(tub)))
    return Polytope(facets=tuple(facets), vertices=tuple(verts))


def star_fan(n: int) -> Fan:
    g = make_family("star", [n + 1])
    init = canonical(1 << g.index(f"l{i}") for i in range(1, n + 1))
    return build_fan(g, init, "primal")

"""Design tubings: tubes augmented by square (single-vertex) tubes.

Round design tubes are ordinary tubes, components included; square tubes
are single vertices.  A square tube is compatible with a round tube exactly
when they are not nested, so the all-squares tubing is always maximal and
serves as the search seed.  Maximal design tubings carry one tube per
vertex and the fan lives in R^V.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Iterable

from .compat import DesignTube, design_degree, design_mask
from .graphs import (
    Graph,
    GraphError,
    all_tubes,
    bits,
    check_enumeration_guard,
    components_of,
    is_tube,
    neighbor_mask_table,
)
from .isos import octopus_structure, spider_structure, _segment
from .nested import are_compatible

DesignTubing = tuple[DesignTube, ...]


def design_tubes_of(g: Graph) -> tuple[DesignTube, ...]:
    rounds = tuple(("r", t) for t in all_tubes(g))
    squares = tuple(("s", v) for v in range(g.m))
    return tuple(sorted(rounds + squares))


def design_compatible(g: Graph, a: DesignTube, b: DesignTube) -> bool:
    if a[0] == "r" and b[0] == "r":
        return are_compatible(g, a[1], b[1])
    ma, mb = design_mask(a), design_mask(b)
    nested = not ma & ~mb or not mb & ~ma
    return not nested


def all_squares_tubing(g: Graph) -> DesignTubing:
    return tuple(("s", v) for v in range(g.m))


def is_design_tubing(g: Graph, xs: Iterable[DesignTube]) -> bool:
    seq = list(xs)
    for i, a in enumerate(seq):
        if a[0] == "r" and not is_tube(g, a[1]):
            return False
        if a[0] == "s" and not 0 <= a[1] < g.m:
            return False
        for b in seq[i + 1 :]:
            if a == b or not design_compatible(g, a, b):
                return False
    return True


def design_flip(
    g: Graph, tubing: DesignTubing, x: DesignTube
) -> tuple[DesignTube, DesignTubing]:
    """Exchange one design tube by completion search: the remaining tubes
    extend to a maximal design tubing in exactly one other way."""
    ts = tuple(sorted(tubing))
    if x not in ts:
        raise GraphError("flip requires a tube of the design tubing")
    if len(ts) != g.m:
        raise GraphError("flip requires a maximal design tubing")
    rest = [y for y in ts if y != x]
    cands = [
        y
        for y in design_tubes_of(g)
        if y != x
        and y not in rest
        and all(design_compatible(g, y, z) for z in rest)
    ]
    if len(cands) != 1:  # pragma: no cover - the complex is a pseudomanifold
        raise GraphError(f"expected a unique completion, found {len(cands)}")
    y = cands[0]
    return y, tuple(sorted(rest + [y]))


@lru_cache(maxsize=1024)
def _design_tubings_flips(g: Graph):
    check_enumeration_guard(g.m, "maximal design tubings")
    seed = all_squares_tubing(g)
    seen = {seed}
    stack = [seed]
    edges = set()
    while stack:
        cur = stack.pop()
        for x in cur:
            y, nxt = design_flip(g, cur, x)
            a, b = sorted((cur, nxt))
            edges.add((a, b, x if a == cur else y, y if a == cur else x))
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    tubings = tuple(sorted(seen))
    index = {T: i for i, T in enumerate(tubings)}
    flips = tuple(sorted((index[a], index[b], xo, xi) for a, b, xo, xi in edges))
    return tubings, flips


def maximal_design_tubings(g: Graph) -> tuple[DesignTubing, ...]:
    return _design_tubings_flips(g)[0]


def design_flips(g: Graph):
    return _design_tubings_flips(g)[1]


def design_roots(g: Graph, tubing: DesignTubing) -> dict[int, int]:
    """Root vertex of each round tube of a maximal design tubing: the tube
    minus all strictly smaller round tubes of the tubing."""
    rounds = [x[1] for x in tubing if x[0] == "r"]
    out = {}
    for t in rounds:
        lam = t
        for s in rounds:
            if s != t and s & ~t == 0:
                lam &= ~s
        if lam.bit_count() != 1:
            raise GraphError("round tube has no unique root; tubing not maximal?")
        out[t] = lam.bit_length() - 1
    return out


# ---------------------------------------------------------------------------
# explicit dependences for square flips (dual vectors)


def design_square_flip_dependence(
    g: Graph, initial: DesignTubing, t: int, v: int
):
    """The dependence among dual compatibility vectors across the square flip
    exchanging the round tube ``t`` with the square tube on ``v``.

    Supported on the flipped pair and its forced tubes (squares of the
    neighbors of t, components of t minus v).  Closed forms cover every
    configuration except a flipped initial proper round tube, which is
    resolved by an exact nullspace computation on the same support.
    """
    from .compat import design_compat_vector
    from .exactla import nullspace_dependence
    from .fans import LinearDependence

    if not is_tube(g, t) or not t & (1 << v):
        raise GraphError("need a round tube containing the flipped vertex")
    init = tuple(sorted(initial))
    nbm = neighbor_mask_table(g)
    w_all = sorted(bits(nbm[t]))
    a_all = components_of(g, t & ~(1 << v))

    squares_init = {x[1] for x in init if x[0] == "s"}
    rounds_init = [x[1] for x in init if x[0] == "r"]
    roots = design_roots(g, init)
    root_of_vertex = {root: tube for tube, root in roots.items()}

    sq_mask = 0
    for w in squares_init:
        sq_mask |= 1 << w
    a_with_sq = [a for a in a_all if a & sq_mask]
    q = len(a_with_sq)

    def ddeg(x: DesignTube, y: DesignTube) -> int:
        return design_degree(g, x, y)

    coeffs: dict[DesignTube, int] = {}

    def add(key: DesignTube, c: int):
        if c:
            coeffs[key] = coeffs.get(key, 0) + c

    def solve_on_support():
        # the dependence always lives on the flipped pair and forced tubes;
        # used where no closed form applies
        support = sorted(
            {("r", t), ("s", v)}
            | {("s", w) for w in w_all}
            | {("r", a) for a in a_all}
        )
        vecs = [design_compat_vector(g, init, x, "dual") for x in support]
        dep = nullspace_dependence(vecs, support.index(("r", t)))
        if dep is None:
            raise GraphError("square-flip support is rank deficient")
        for k, c in zip(support, dep.coeffs):
            add(k, c)

    if v in squares_init:
        if q > 0:
            solve_on_support()
        else:
            # the flipped-in square is initial: the round tube splits over the
            # squares of its non-initial neighbors
            add(("r", t), 1)
            add(("s", v), 1)
            for w in w_all:
                if w not in squares_init:
                    add(("s", w), -1)
    elif q > 0:
        # the round tube splits over the square-carrying components; square
        # coefficients are corrected recursively along the inclusion order of
        # the initial round tubes rooted at neighbors of t
        pairs = [(w, root_of_vertex[w]) for w in w_all if w in root_of_vertex]
        pairs.sort(key=lambda p: (p[1].bit_count(), p[1]))
        betas = []
        for i, (w_i, t_i) in enumerate(pairs):
            ti = ("r", t_i)
            b = ddeg(("r", t), ti)
            b -= sum(ddeg(("r", a), ti) - ddeg(("s", v), ti) for a in a_with_sq)
            b -= sum(betas[r] * ddeg(("s", pairs[r][0]), ti) for r in range(i))
            betas.append(b)
        add(("r", t), 1)
        add(("s", v), q)
        for a in a_with_sq:
            add(("r", a), -1)
        for (w_i, _), b in zip(pairs, betas):
            add(("s", w_i), -b)
    elif t in rounds_init:
        if not w_all:
            # flipping a whole component against one of its vertices
            z0 = roots[t]
            add(("r", t), 1)
            add(("s", v), 1)
            if z0 != v:
                a1 = next(a for a in a_all if a & (1 << z0))
                add(("r", a1), -1)
        else:
            # no closed form when the flipped tube is a proper initial tube
            solve_on_support()
    else:
        containers = [r for r in rounds_init if t & ~r == 0]
        if not containers:  # pragma: no cover - excluded by the cases above
            raise GraphError("no initial round tube contains the flipped tube")
        else:
            t0 = min(containers, key=lambda r: (r.bit_count(), r))
            z0 = roots[t0]
            ws = [w for w in w_all if t0 & (1 << w)]
            if z0 == v:
                r = len(ws)
                add(("r", t), 1)
                add(("s", v), r)
                for w in ws:
                    add(("s", w), -1)
            else:
                a1 = next(a for a in a_all if a & (1 << z0))
                # the neighbors of a1 among the w's carry the residual weight
                far = [w for w in ws if nbm[a1] & (1 << w)]
                near = [w for w in ws if w not in far]
                s, r = len(ws), len(near)
                add(("r", t), s - r + 1)
                add(("r", a1), -s)
                add(("s", v), s)
                for w in near:
                    add(("s", w), -(s - r + 1))
                for w in far:
                    add(("s", w), r - 1)

    keys = tuple(sorted(coeffs))
    vals = [coeffs[k] for k in keys]
    g_all = 0
    for c in vals:
        g_all = gcd(g_all, c)
    vals = [c // g_all for c in vals]
    if vals[keys.index(("r", t))] < 0:  # pragma: no cover - positive by form
        vals = [-c for c in vals]
    return LinearDependence(
        keys=keys, coeffs=tuple(vals), pivot=("r", t), pivot_zero=False
    )


# ---------------------------------------------------------------------------
# isomorphisms with square tubes


def design_iso_target(kind: str, source: Graph) -> Graph:
    from .graphs import make_family

    if kind == "Pi":
        return make_family("path", [source.m + 1])
    if kind == "OmegaBar":
        legs = spider_structure(source)
        return make_family("octopus", [len(leg) - 1 for leg in legs])
    if kind == "OmegaDesign":
        head, legs = octopus_structure(source)
        return make_family("octopus", [len(leg) - 1 for leg in legs])
    raise GraphError(f"unknown design isomorphism {kind!r}")


def design_iso(kind: str, source: Graph, x: DesignTube):
    """Image of a design tube under the square-aware isomorphisms.

    Pi sends the design complex of a path into the nested complex of the
    next longer path; OmegaBar sends a spider's design complex onto the
    octopus nested complex; OmegaDesign is the involutive automorphism of an
    octopus design complex.  Pi and OmegaBar return tube bitmasks of the
    target graph; OmegaDesign returns a design tube.
    """
    if kind == "Pi":
        n = source.m
        if x[0] == "s":
            return sum(1 << j for j in range(x[1] + 1, n + 1))
        return x[1]

    if kind == "OmegaBar":
        legs = spider_structure(source)
        target = design_iso_target(kind, source)
        head, tlegs = octopus_structure(target)
        if x[0] == "s":
            i, j = _leg_position(legs, x[1])
            n_i = len(legs[i]) - 1
            return _segment(tlegs[i], 0, n_i - j)
        t = x[1]
        body = 0
        for leg in legs:
            body |= 1 << leg[0]
        if t & body == 0:
            i, j, k = _leg_interval(legs, t)
            n_i = len(legs[i]) - 1
            return _segment(tlegs[i], n_i + 1 - k, n_i + 1 - j)
        out = 1 << head
        for i, leg in enumerate(legs):
            n_i = len(leg) - 1
            inside = [j for j in range(len(leg)) if t & (1 << leg[j])]
            k_i = max(inside) if inside else -1
            new_k = n_i - 1 - k_i
            if new_k >= 0:
                out |= _segment(tlegs[i], 0, new_k)
        return out

    if kind == "OmegaDesign":
        head, legs = octopus_structure(source)
        if x[0] == "s":
            if x[1] == head:
                return ("s", head)
            i, j = _leg_position(legs, x[1])
            n_i = len(legs[i]) - 1
            return ("r", _segment(legs[i], 0, n_i - j))
        t = x[1]
        if not t & (1 << head):
            i, j, k = _leg_interval(legs, t)
            n_i = len(legs[i]) - 1
            if j == 0:
                return ("s", legs[i][n_i - k])
            return ("r", _segment(legs[i], n_i + 1 - k, n_i + 1 - j))
        out = 1 << head
        for leg in legs:
            n_i = len(leg) - 1
            inside = [j for j in range(len(leg)) if t & (1 << leg[j])]
            k_i = max(inside) if inside else -1
            new_k = n_i - 1 - k_i
            if new_k >= 0:
                out |= _segment(leg, 0, new_k)
        return ("r", out)

    raise GraphError(f"unknown design isomorphism {kind!r}")


def _leg_position(legs, v: int) -> tuple[int, int]:
    for i, leg in enumerate(legs):
        if v in leg:
            return i, leg.index(v)
    raise GraphError("vertex not on any leg")


def _leg_interval(legs, t: int) -> tuple[int, int, int]:
    for i, leg in enumerate(legs):
        mask = _segment(leg, 0, len(leg) - 1)
        if t & ~mask == 0:
            inside = [j for j in range(len(leg)) if t & (1 << leg[j])]
            j, k = min(inside), max(inside)
            if t != _segment(leg, j, k):
                raise GraphError("not an interval inside a leg")
            return i, j, k
    raise GraphError("tube is not contained in a leg")


# ---------------------------------------------------------------------------
# JSON


def design_tube_to_json(g: Graph, x: DesignTube) -> dict:
    if x[0] == "s":
        return {"square": g.labels[x[1]]}
    return {"round": g.labels_of(x[1])}


def design_tube_from_json(g: Graph, data: dict) -> DesignTube:
    if "square" in data:
        return ("s", g.index(data["square"]))
    if "round" in data:
        return ("r", g.mask_of(data["round"]))
    raise GraphError("design tube JSON needs a 'round' or 'square' field")

"""Tubings of a graph: compatibility, enumeration, flips, and spines.

A tubing is a set of pairwise compatible proper tubes; it is stored as a
sorted tuple of bitmasks so equality and hashing are structural.  Maximal
tubings have exactly ``m - #components`` tubes.  Connected components are
never stored inside tubings but participate transparently in root and flip
computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .graphs import (
    Graph,
    GraphError,
    bits,
    check_enumeration_guard,
    components_of,
    connected_components,
    induced_subgraph,
    is_tube,
    nested_dimension,
    neighbor_mask_table,
    proper_tubes,
    reconnected_complement,
)

Tubing = tuple[int, ...]


def canonical(tubes: Iterable[int]) -> Tubing:
    return tuple(sorted(set(tubes)))


def are_compatible(g: Graph, t: int, u: int) -> bool:
    """Tubes are compatible when nested, or disjoint and non-adjacent."""
    inter = t & u
    if inter:
        return inter == t or inter == u
    return not neighbor_mask_table(g)[t] & u


def is_tubing(g: Graph, tubes: Iterable[int]) -> bool:
    ts = list(tubes)
    comps = set(connected_components(g))
    for i, t in enumerate(ts):
        if not is_tube(g, t) or t in comps:
            return False
        for u in ts[i + 1 :]:
            if t == u or not are_compatible(g, t, u):
                return False
    return True


def tubes_of(g: Graph) -> tuple[int, ...]:
    """All proper tubes, sorted by bitmask value."""
    return proper_tubes(g)


def tubings_of(g: Graph, size: Optional[int] = None) -> list[Tubing]:
    """All tubings, optionally restricted to a given number of tubes.

    Backtracks over tubes in mask order, so the output is duplicate-free and
    lexicographically sorted.
    """
    check_enumeration_guard(g.m, "tubings")
    ts = proper_tubes(g)
    n = nested_dimension(g)
    top = n if size is None else size
    out: list[Tubing] = []

    def extend(start: int, chosen: list[int]):
        if size is None or len(chosen) == size:
            out.append(tuple(chosen))
            if len(chosen) == top:
                return
        if len(chosen) >= top:
            return
        for i in range(start, len(ts)):
            t = ts[i]
            if all(are_compatible(g, t, u) for u in chosen):
                chosen.append(t)
                extend(i + 1, chosen)
                chosen.pop()

    if size is not None and not 0 <= size <= n:
        return []
    extend(0, [])
    return out


def _strict_subtubes_mask(tubing: Iterable[int], t: int) -> int:
    acc = 0
    for s in tubing:
        if s != t and s & ~t == 0:
            acc |= s
    return acc


def lambda_sets(g: Graph, tubing: Iterable[int]) -> dict[int, int]:
    """The label set of each tube of the tubing and of each component: the
    tube minus all strictly smaller tubes.  These sets partition the vertices."""
    ts = list(tubing)
    nodes = ts + [c for c in connected_components(g) if c not in ts]
    return {t: t & ~_strict_subtubes_mask(nodes, t) for t in nodes}


@dataclass(frozen=True)
class Spine:
    """Inclusion forest of a tubing together with the components.

    ``parent[t]`` is the inclusion-minimal strictly containing tube, or None
    for the components; ``label[t]`` is the tube minus its strict subtubes.
    For maximal tubings every label is a singleton, the root of the tube.
    """

    nodes: tuple[int, ...]
    parent: dict[int, Optional[int]]
    label: dict[int, int]

    def roots(self) -> dict[int, int]:
        out = {}
        for t, lam in self.label.items():
            if lam.bit_count() != 1:
                raise GraphError("roots are only defined for maximal tubings")
            out[t] = lam.bit_length() - 1
        return out


def lambda_roots(g: Graph, tubing: Iterable[int]) -> Spine:
    ts = canonical(tubing)
    nodes = list(ts) + [c for c in connected_components(g) if c not in ts]
    label = lambda_sets(g, ts)
    parent: dict[int, Optional[int]] = {}
    for t in nodes:
        sups = [s for s in nodes if s != t and t & ~s == 0]
        parent[t] = min(sups, key=lambda s: (s.bit_count(), s)) if sups else None
    return Spine(tuple(sorted(nodes)), parent, label)


def flip(g: Graph, tubing: Tubing, t: int) -> tuple[int, Tubing]:
    """Exchange tube ``t`` of a maximal tubing for the unique other tube
    completing the remaining tubes to a maximal tubing."""
    ts = canonical(tubing)
    if t not in ts:
        raise GraphError("flip requires a tube of the tubing")
    if len(ts) != nested_dimension(g):
        raise GraphError("flip requires a maximal tubing")
    nodes = list(ts) + [c for c in connected_components(g) if c not in ts]
    sups = [s for s in nodes if s != t and t & ~s == 0]
    tbar = min(sups, key=lambda s: (s.bit_count(), s))
    lam_t = t & ~_strict_subtubes_mask(nodes, t)
    lam_tbar = tbar & ~_strict_subtubes_mask(nodes, tbar)
    region = tbar & ~lam_t
    comp = _find_component(g, region, lam_tbar)
    return comp, canonical([s for s in ts if s != t] + [comp])


def _find_component(g: Graph, region: int, seed: int) -> int:
    seen = seed
    frontier = seed
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.nbr[v]
        frontier = nxt & region & ~seen
        seen |= frontier
    return seen


def _greedy_maximal(g: Graph, order: Optional[list[int]] = None) -> Tubing:
    ts = list(proper_tubes(g)) if order is None else order
    chosen: list[int] = []
    for t in ts:
        if all(are_compatible(g, t, u) for u in chosen):
            chosen.append(t)
    return canonical(chosen)


@lru_cache(maxsize=2048)
def _maximal_tubings_flips(g: Graph) -> tuple[tuple[Tubing, ...], tuple[tuple, ...]]:
    check_enumeration_guard(g.m, "maximal tubings")
    n = nested_dimension(g)
    seed = _greedy_maximal(g)
    if len(seed) != n:  # pragma: no cover - greedy always completes
        raise GraphError("failed to seed a maximal tubing")
    seen = {seed}
    stack = [seed]
    edges = set()
    while stack:
        cur = stack.pop()
        for t in cur:
            t2, nxt = flip(g, cur, t)
            a, b = sorted((cur, nxt))
            edges.add((a, b, t if a == cur else t2, t2 if a == cur else t))
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    tubings = tuple(sorted(seen))
    index = {T: i for i, T in enumerate(tubings)}
    flips = tuple(
        sorted((index[a], index[b], tout, tin) for a, b, tout, tin in edges)
    )
    return tubings, flips


def maximal_tubings(g: Graph) -> tuple[Tubing, ...]:
    """All maximal tubings, found by a flip search from a greedy seed."""
    return _maximal_tubings_flips(g)[0]


def tubing_flips(g: Graph) -> tuple[tuple, ...]:
    """Flip edges between maximal tubings as (i, j, tube out of i, tube into j)."""
    return _maximal_tubings_flips(g)[1]


def random_maximal_tubing(g: Graph, rng) -> Tubing:
    order = list(proper_tubes(g))
    rng.shuffle(order)
    return _greedy_maximal(g, order)


def enumerate_nested(g: Graph, what: str, size_filter: Optional[int] = None):
    """Dispatcher used by the CLI and service: tubes, tubings, maximal_tubings."""
    check_enumeration_guard(g.m, what)  # guards even when caches are warm
    if what == "tubes":
        ts = tubes_of(g)
        if size_filter is not None:
            ts = tuple(t for t in ts if t.bit_count() == size_filter)
        return list(ts)
    if what == "tubings":
        return tubings_of(g, size_filter)
    if what == "maximal_tubings":
        out = maximal_tubings(g)
        if size_filter is not None and size_filter != nested_dimension(g):
            return []
        return list(out)
    raise GraphError(f"unknown enumeration target {what!r}")


# ---------------------------------------------------------------------------
# exchangeable pairs


@dataclass(frozen=True)
class FlipContext:
    """Data attached to an exchangeable pair of tubes.

    ``r`` is the unique neighbor of t2 inside t1, ``r2`` the unique neighbor
    of t1 inside t2.  The forced tubes are the union (when proper) plus the
    components of the union minus the two roots, split into the components of
    the intersection and of the two private parts.
    """

    t1: int
    t2: int
    union: int
    union_proper: bool
    inter_parts: tuple[int, ...]
    a_parts: tuple[int, ...]
    a2_parts: tuple[int, ...]
    r: int
    r2: int

    @property
    def forced(self) -> tuple[int, ...]:
        out = list(self.inter_parts + self.a_parts + self.a2_parts)
        if self.union_proper:
            out.append(self.union)
        return tuple(sorted(out))


def exchange_data(g: Graph, t1: int, t2: int) -> Optional[FlipContext]:
    """FlipContext when the pair is exchangeable, None otherwise."""
    if t1 == t2:
        raise GraphError("exchange_data requires distinct tubes")
    from .compat import degree

    if degree(g, t1, t2) != 1 or degree(g, t2, t1) != 1:
        return None
    nbm = neighbor_mask_table(g)
    r_mask = nbm[t2] & t1
    r2_mask = nbm[t1] & t2
    union = t1 | t2
    inter = t1 & t2
    a = t1 & ~(t2 | r_mask)
    a2 = t2 & ~(t1 | r2_mask)
    comps = set(connected_components(g))
    return FlipContext(
        t1=t1,
        t2=t2,
        union=union,
        union_proper=union not in comps,
        inter_parts=tuple(components_of(g, inter)),
        a_parts=tuple(components_of(g, a)),
        a2_parts=tuple(components_of(g, a2)),
        r=r_mask.bit_length() - 1,
        r2=r2_mask.bit_length() - 1,
    )


def exchangeable_pairs_by_flips(g: Graph) -> set[frozenset[int]]:
    """Pairs of tubes realized by some flip of maximal tubings (oracle route)."""
    return {
        frozenset((tout, tin)) for _, _, tout, tin in tubing_flips(g)
    }


# ---------------------------------------------------------------------------
# links


def link_split(g: Graph, t0: int, s: int) -> tuple[str, int]:
    """Send a tube compatible with ``t0`` into the disjoint union of the
    restriction to ``t0`` and the reconnected complement of ``t0``.

    Returns ("restriction", tube of g[t0]) or ("complement", tube of g*t0),
    with tubes expressed as bitmasks of the respective subgraph.
    """
    if s == t0:
        raise GraphError("link_split requires a tube distinct from the split tube")
    if not are_compatible(g, t0, s):
        raise GraphError("link_split requires a tube compatible with the split tube")
    if s & ~t0 == 0:
        sub = induced_subgraph(g, t0)
        return "restriction", sub.mask_of(g.labels_of(s))
    rc = reconnected_complement(g, t0)
    return "complement", rc.mask_of(g.labels_of(s & ~t0))


def split_graphs(g: Graph, t0: int) -> tuple[Graph, Graph]:
    return induced_subgraph(g, t0), reconnected_complement(g, t0)


def induced_tubings_after_split(
    g: Graph, tubing: Iterable[int], t0: int
) -> tuple[Tubing, Tubing]:
    """Images of a tubing containing ``t0`` on the restriction and on the
    reconnected complement."""
    ts = [t for t in tubing if t != t0]
    sub, rc = split_graphs(g, t0)
    inside = [sub.mask_of(g.labels_of(t)) for t in ts if t & ~t0 == 0]
    comps_rc = set(connected_components(rc))
    outside = []
    for t in ts:
        if t & ~t0:
            img = rc.mask_of(g.labels_of(t & ~t0))
            if img not in comps_rc:
                outside.append(img)
    return canonical(inside), canonical(outside)

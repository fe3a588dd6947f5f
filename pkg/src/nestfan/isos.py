"""Nontrivial nested-complex automorphisms and orbit counting.

The involution on spider graphs reflects tubes inside each leg and
complements tubes meeting the body; it reverses the order of the two
arguments of the compatibility degree.  On paths the one-step rotation of
the bounding polygon acts on tubes with order n+3.  Together with plain
graph automorphisms these account for all linear isomorphisms between
compatibility fans, so counting fan classes reduces to orbit counting.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .graphs import Graph, GraphError, bits, connected_components
from .nested import Tubing, canonical, maximal_tubings


# ---------------------------------------------------------------------------
# spider and octopus structure from labels


@lru_cache(maxsize=512)
def spider_structure(g: Graph) -> tuple[tuple[int, ...], ...]:
    """Leg vertex indices [v_i0, .., v_i n_i] of a spider-labeled graph."""
    legs: dict[int, dict[int, int]] = {}
    for idx, lab in enumerate(g.labels):
        if not lab.startswith("v") or "_" not in lab:
            raise GraphError(f"{lab!r} is not a spider vertex label")
        head, _, tail = lab[1:].partition("_")
        try:
            i, j = int(head), int(tail)
        except ValueError:
            raise GraphError(f"{lab!r} is not a spider vertex label") from None
        legs.setdefault(i, {})[j] = idx
    out = []
    for i in sorted(legs):
        seq = legs[i]
        if sorted(seq) != list(range(len(seq))):
            raise GraphError(f"leg {i} has gaps in its labels")
        out.append(tuple(seq[j] for j in range(len(seq))))
    _check_spider_edges(g, out)
    return tuple(out)


def _check_spider_edges(g: Graph, legs) -> None:
    expect = set()
    base = [leg[0] for leg in legs]
    for a in range(len(base)):
        for b in range(a + 1, len(base)):
            expect.add(frozenset((base[a], base[b])))
    for leg in legs:
        for j in range(1, len(leg)):
            expect.add(frozenset((leg[j - 1], leg[j])))
    actual = {frozenset((v, w)) for v in range(g.m) for w in bits(g.nbr[v])}
    if expect != actual:
        raise GraphError("graph is not a spider with this labeling")


@lru_cache(maxsize=512)
def octopus_structure(g: Graph) -> tuple[int, tuple]:
    """Head index and leg vertex indices of an octopus-labeled graph."""
    if "*" not in g.labels:
        raise GraphError("octopus labeling requires a head vertex '*'")
    head = g.index("*")
    legs: dict[int, dict[int, int]] = {}
    for idx, lab in enumerate(g.labels):
        if idx == head:
            continue
        if not lab.startswith("v") or "_" not in lab:
            raise GraphError(f"{lab!r} is not an octopus vertex label")
        a, _, b = lab[1:].partition("_")
        try:
            i, j = int(a), int(b)
        except ValueError:
            raise GraphError(f"{lab!r} is not an octopus vertex label") from None
        legs.setdefault(i, {})[j] = idx
    out = []
    expect = set()
    for i in sorted(legs):
        seq = legs[i]
        if sorted(seq) != list(range(len(seq))):
            raise GraphError(f"leg {i} has gaps in its labels")
        leg = tuple(seq[j] for j in range(len(seq)))
        out.append(leg)
        expect.add(frozenset((head, leg[0])))
        for j in range(1, len(leg)):
            expect.add(frozenset((leg[j - 1], leg[j])))
    actual = {frozenset((v, w)) for v in range(g.m) for w in bits(g.nbr[v])}
    if expect != actual:
        raise GraphError("graph is not an octopus with this labeling")
    return head, tuple(out)


def _segment(leg, lo: int, hi: int) -> int:
    mask = 0
    for j in range(lo, hi + 1):
        mask |= 1 << leg[j]
    return mask


# ---------------------------------------------------------------------------
# the spider involution


def spider_omega(g: Graph, t: int) -> int:
    """Image of a tube under the degree-reversing involution of a spider.

    Tubes inside a leg are reflected within the leg; tubes meeting the body
    (unions of initial leg segments) are complemented legwise.
    """
    legs = spider_structure(g)
    body = 0
    for leg in legs:
        body |= 1 << leg[0]
    if t & body == 0:
        for leg in legs:
            leg_mask = _segment(leg, 0, len(leg) - 1)
            if t & ~leg_mask:
                continue
            inside = [j for j in range(len(leg)) if t & (1 << leg[j])]
            j, k = min(inside), max(inside)
            if t != _segment(leg, j, k) or j < 1:
                raise GraphError("not a tube of the spider")
            n_i = len(leg) - 1
            return _segment(leg, n_i + 1 - k, n_i + 1 - j)
        raise GraphError("not a tube of the spider")
    out = 0
    for leg in legs:
        n_i = len(leg) - 1
        inside = [j for j in range(len(leg)) if t & (1 << leg[j])]
        k_i = max(inside) if inside else -1
        if inside and (inside != list(range(k_i + 1))):
            raise GraphError("not a tube of the spider")
        new_k = n_i - 1 - k_i
        if new_k >= 0:
            out |= _segment(leg, 0, new_k)
    return out


def spider_omega_tubing(g: Graph, tubing: Iterable[int]) -> Tubing:
    return canonical(spider_omega(g, t) for t in tubing)


# ---------------------------------------------------------------------------
# path rotation


def _path_order(g: Graph) -> list[int]:
    degs = [nb.bit_count() for nb in g.nbr]
    if g.m == 1:
        return [0]
    ends = [v for v, d in enumerate(degs) if d == 1]
    if len(ends) != 2 or any(d > 2 for d in degs):
        raise GraphError("graph is not a path")
    order = [ends[0]]
    seen = 1 << ends[0]
    while len(order) < g.m:
        nxt = g.nbr[order[-1]] & ~seen
        if nxt == 0:
            raise GraphError("graph is not a path")
        v = nxt.bit_length() - 1
        order.append(v)
        seen |= 1 << v
    return order


def path_rotation(n: int, p: int, t: int, g: Optional[Graph] = None) -> int:
    """p-fold rotation image of an interval tube of the path on n+1 vertices.

    ``t`` is a bitmask over the path order (vertex "i" at position i-1 for
    the standard path labels); the rotation has order n+3.
    """
    from .graphs import make_family

    if g is None:
        g = make_family("path", [n + 1])
    order = _path_order(g)
    if order[0] != 0:
        order = order if order[0] < order[-1] else order[::-1]
    pos = {v: i + 1 for i, v in enumerate(order)}  # 1-based along the path
    inside = sorted(pos[v] for v in bits(t))
    j, k = inside[0], inside[-1]
    if inside != list(range(j, k + 1)):
        raise GraphError("not a tube of the path")
    p %= n + 3
    if p == 0:
        jj, kk = j, k
    elif p < j:
        jj, kk = j - p, k - p
    elif p < k + 2:
        jj, kk = k - p + 2, n + j - p + 1
    else:
        # continuation of the orbit past the long side; consistent with the
        # p = k+2 wrap and with rot^{n+2} being the inverse rotation
        jj, kk = n + j - p + 3, n + k - p + 3
    mask = 0
    for q in range(jj, kk + 1):
        mask |= 1 << order[q - 1]
    return mask


def path_reversal(n: int, t: int) -> int:
    """Image of an interval tube under the end-for-end path symmetry."""
    out = 0
    for v in bits(t):
        out |= 1 << (n - v)
    return out


# ---------------------------------------------------------------------------
# automorphisms and orbits


@lru_cache(maxsize=2048)
def graph_automorphisms(g: Graph) -> tuple[tuple[int, ...], ...]:
    """All vertex permutations preserving adjacency, by backtracking with
    degree pruning."""
    degs = [nb.bit_count() for nb in g.nbr]
    perms: list[tuple[int, ...]] = []
    image = [-1] * g.m
    used = [False] * g.m

    def extend(v: int):
        if v == g.m:
            perms.append(tuple(image))
            return
        for w in range(g.m):
            if used[w] or degs[w] != degs[v]:
                continue
            ok = True
            for u in range(v):
                adj = bool(g.nbr[v] & (1 << u))
                adj_img = bool(g.nbr[w] & (1 << image[u]))
                if adj != adj_img:
                    ok = False
                    break
            if ok:
                image[v] = w
                used[w] = True
                extend(v + 1)
                used[w] = False
                image[v] = -1

    extend(0)
    return tuple(perms)


def apply_perm_mask(perm: tuple[int, ...], mask: int) -> int:
    out = 0
    for v in bits(mask):
        out |= 1 << perm[v]
    return out


def apply_perm_tubing(perm: tuple[int, ...], tubing: Iterable[int]) -> Tubing:
    return canonical(apply_perm_mask(perm, t) for t in tubing)


def tubing_orbit_count(g: Graph) -> int:
    """Number of orbits of maximal tubings under graph automorphisms."""
    perms = graph_automorphisms(g)
    seen: set[Tubing] = set()
    orbits = 0
    for T in maximal_tubings(g):
        if T in seen:
            continue
        orbits += 1
        for perm in perms:
            seen.add(apply_perm_tubing(perm, T))
    return orbits


def is_path_graph(g: Graph) -> bool:
    try:
        _path_order(g)
        return g.m >= 2
    except GraphError:
        return False


def path_dihedral_class_count(g: Graph) -> int:
    """Orbits of maximal tubings under rotation and reversal of the bounding
    polygon (the dihedral action on triangulations)."""
    n = g.m - 1
    tubings = set(maximal_tubings(g))
    seen: set[Tubing] = set()
    orbits = 0
    for T in tubings:
        if T in seen:
            continue
        orbits += 1
        stack = [T]
        seen.add(T)
        while stack:
            cur = stack.pop()
            for img in (
                canonical(path_rotation(n, 1, t, g) for t in cur),
                canonical(path_reversal(n, t) for t in cur),
            ):
                if img not in seen:
                    seen.add(img)
                    stack.append(img)
    return orbits


def fan_class_count(g: Graph) -> int:
    """Number of linear isomorphism classes of compatibility fans: the
    dihedral triangulation count for paths, the automorphism orbit count of
    maximal tubings otherwise."""
    if is_path_graph(g):
        return path_dihedral_class_count(g)
    return tubing_orbit_count(g)


def connected_size_partition(g: Graph) -> tuple[int, ...]:
    """Multiset of component sizes, decreasing."""
    return tuple(
        sorted((c.bit_count() for c in connected_components(g)), reverse=True)
    )


@dataclass(frozen=True)
class TubeMap:
    """A materialized bijection between the tubes of two graphs, tagged by
    whether it preserves or reverses the degree's argument order."""

    pairs: tuple[tuple[int, int], ...]
    preserves: bool
    dualizes: bool

    def __call__(self, t: int) -> int:
        for a, b in self.pairs:
            if a == t:
                return b
        raise GraphError("tube outside the map's domain")


def as_tube_map(g: Graph, h: Graph, fn) -> TubeMap:
    """Tabulate ``fn`` on all proper tubes of ``g`` and classify it.

    Rejects non-bijections; the preserves/dualizes flags compare degrees on
    every ordered pair (a symmetric-degree graph can satisfy both).
    """
    from .compat import degree
    from .graphs import proper_tubes

    src = proper_tubes(g)
    images = [fn(t) for t in src]
    if len(set(images)) != len(images) or set(images) != set(proper_tubes(h)):
        raise GraphError("tube map is not a bijection onto the target tubes")
    preserves = True
    dualizes = True
    for i, t in enumerate(src):
        for j, u in enumerate(src):
            base = degree(g, t, u)
            if degree(h, images[i], images[j]) != base:
                preserves = False
            if degree(h, images[j], images[i]) != base:
                dualizes = False
    if not (preserves or dualizes):
        raise GraphError("tube map neither preserves nor reverses degrees")
    return TubeMap(tuple(zip(src, images)), preserves, dualizes)

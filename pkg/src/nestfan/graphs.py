"""Graphs, vertex bitmasks, tube predicates, and the standard graph families.

Vertices are indexed 0..m-1 following the order of the label list given at
construction; that order is the canonical coordinate order everywhere else
(compatibility vectors, fan rays, polytope coordinates).  Vertex subsets are
plain Python ints used as bitmasks, so they are value-semantic and unbounded
in size.  Graphs are immutable after construction.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

DEFAULT_MAX_VERTICES = 16


class GraphError(ValueError):
    pass


class EnumerationGuardError(RuntimeError):
    """Raised when an exhaustive enumeration would exceed the vertex guard."""


def max_enumeration_vertices() -> int:
    raw = os.environ.get("NESTFAN_MAX_VERTICES", "")
    try:
        return int(raw) if raw else DEFAULT_MAX_VERTICES
    except ValueError:
        return DEFAULT_MAX_VERTICES


def check_enumeration_guard(m: int, what: str) -> None:
    limit = max_enumeration_vertices()
    if m > limit:
        raise EnumerationGuardError(
            f"refusing to enumerate {what} on {m} vertices "
            f"(guard NESTFAN_MAX_VERTICES={limit}); raise the env var to override"
        )


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph with labeled vertices.

    ``nbr[v]`` is the bitmask of neighbors of vertex ``v``.  No self-loops,
    no parallel edges; the neighbor relation is symmetric by construction.
    """

    labels: tuple[str, ...]
    nbr: tuple[int, ...]
    _hash: int = field(init=False, repr=False, compare=False, default=0)

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise GraphError("vertex labels must be distinct")
        m = len(self.labels)
        if len(self.nbr) != m:
            raise GraphError("adjacency size mismatch")
        for v, nb in enumerate(self.nbr):
            if nb >> m:
                raise GraphError("adjacency references unknown vertex")
            if nb & (1 << v):
                raise GraphError("self-loops are not allowed")
            for w in bits(nb):
                if not self.nbr[w] & (1 << v):
                    raise GraphError("adjacency must be symmetric")
        object.__setattr__(self, "_hash", hash((self.labels, self.nbr)))

    def __hash__(self) -> int:
        return self._hash

    @property
    def m(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.m) - 1

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise GraphError(f"unknown vertex label {label!r}") from None

    def mask_of(self, labels: Iterable[str]) -> int:
        mask = 0
        for s in labels:
            mask |= 1 << self.index(s)
        return mask

    def labels_of(self, mask: int) -> list[str]:
        return [self.labels[v] for v in bits(mask)]

    def edges(self) -> list[tuple[str, str]]:
        out = []
        for v in range(self.m):
            for w in bits(self.nbr[v]):
                if w > v:
                    out.append((self.labels[v], self.labels[w]))
        return out


def graph_from_edges(labels: Iterable[str], edges: Iterable[tuple[str, str]]) -> Graph:
    labels = tuple(str(s) for s in labels)
    pos = {s: i for i, s in enumerate(labels)}
    if len(pos) != len(labels):
        raise GraphError("vertex labels must be distinct")
    nbr = [0] * len(labels)
    for a, b in edges:
        a, b = str(a), str(b)
        if a not in pos or b not in pos:
            raise GraphError(f"edge ({a},{b}) references unknown vertex")
        if a == b:
            raise GraphError("self-loops are not allowed")
        nbr[pos[a]] |= 1 << pos[b]
        nbr[pos[b]] |= 1 << pos[a]
    return Graph(labels, tuple(nbr))


def neighbor_mask(g: Graph, mask: int) -> int:
    """Vertices outside ``mask`` adjacent to at least one vertex of ``mask``."""
    nb = 0
    for v in bits(mask):
        nb |= g.nbr[v]
    return nb & ~mask


def _component_from(g: Graph, mask: int, start: int) -> int:
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.nbr[v]
        frontier = nxt & mask & ~seen
        seen |= frontier
    return seen


def is_tube(g: Graph, mask: int) -> bool:
    """True iff ``mask`` is non-empty and induces a connected subgraph."""
    if mask == 0 or mask & ~g.full_mask:
        return False
    start = mask & -mask
    return _component_from(g, mask, start) == mask


def components_of(g: Graph, mask: int) -> list[int]:
    """Connected components of the induced subgraph, sorted by smallest element."""
    out = []
    rest = mask
    while rest:
        start = rest & -rest
        comp = _component_from(g, rest, start)
        out.append(comp)
        rest &= ~comp
    return out


@lru_cache(maxsize=4096)
def connected_components(g: Graph) -> tuple[int, ...]:
    return tuple(components_of(g, g.full_mask))


def nested_dimension(g: Graph) -> int:
    """Number of tubes in any maximal tubing: |V| minus the component count."""
    return g.m - len(connected_components(g))


@lru_cache(maxsize=4096)
def all_tubes(g: Graph) -> tuple[int, ...]:
    """All tubes (connected induced non-empty subsets), components included."""
    check_enumeration_guard(g.m, "tubes")
    return tuple(
        mask for mask in range(1, g.full_mask + 1) if is_tube(g, mask)
    )


@lru_cache(maxsize=4096)
def proper_tubes(g: Graph) -> tuple[int, ...]:
    comps = set(connected_components(g))
    return tuple(t for t in all_tubes(g) if t not in comps)


@lru_cache(maxsize=4096)
def neighbor_mask_table(g: Graph) -> dict[int, int]:
    return {t: neighbor_mask(g, t) for t in all_tubes(g)}


def induced_subgraph(g: Graph, mask: int) -> Graph:
    """Restriction of ``g`` to the vertices of ``mask``, label order inherited."""
    keep = list(bits(mask))
    pos = {v: i for i, v in enumerate(keep)}
    nbr = []
    for v in keep:
        nb = 0
        for w in bits(g.nbr[v] & mask):
            nb |= 1 << pos[w]
        nbr.append(nb)
    return Graph(tuple(g.labels[v] for v in keep), tuple(nbr))


def reconnected_complement(g: Graph, tube: int) -> Graph:
    """Graph on the vertices outside ``tube``: two of them are adjacent when
    they are adjacent in ``g`` or become connected through ``tube``."""
    if not is_tube(g, tube):
        raise GraphError("reconnected complement requires a tube")
    keep = [v for v in range(g.m) if not tube & (1 << v)]
    pos = {v: i for i, v in enumerate(keep)}
    nbr = [0] * len(keep)
    for i, v in enumerate(keep):
        for j in range(i + 1, len(keep)):
            w = keep[j]
            pair = (1 << v) | (1 << w)
            if g.nbr[v] & (1 << w) or is_tube(g, pair | tube):
                nbr[i] |= 1 << pos[w]
                nbr[j] |= 1 << pos[v]
    return Graph(tuple(g.labels[v] for v in keep), tuple(nbr))


def relabel(g: Graph, prefix: str) -> Graph:
    return Graph(tuple(prefix + s for s in g.labels), g.nbr)


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union keeping each factor's vertex order; labels must not clash."""
    labels: list[str] = []
    nbr: list[int] = []
    offset = 0
    for g in graphs:
        labels.extend(g.labels)
        nbr.extend(nb << offset for nb in g.nbr)
        offset += g.m
    if len(set(labels)) != len(labels):
        raise GraphError("disjoint union requires disjoint vertex labels")
    return Graph(tuple(labels), tuple(nbr))


# ---------------------------------------------------------------------------
# standard families


def make_family(kind: str, sizes: list[int]) -> Graph:
    """Construct a standard family member.

    path/cycle/complete take one vertex count; star takes the total vertex
    count (one center plus leaves); spider and octopus take the list of leg
    lengths (legs may be empty).
    """
    kind = kind.lower()
    if kind in ("path", "cycle", "complete", "star"):
        if len(sizes) != 1:
            raise GraphError(f"{kind} takes a single vertex count")
        m = sizes[0]
        if m <= 0:
            raise GraphError("vertex count must be positive")
        labels = [str(i) for i in range(1, m + 1)]
        if kind == "path":
            edges = [(str(i), str(i + 1)) for i in range(1, m)]
        elif kind == "cycle":
            if m < 3:
                raise GraphError("a cycle needs at least 3 vertices")
            edges = [(str(i), str(i + 1)) for i in range(1, m)] + [(str(m), "1")]
        elif kind == "complete":
            edges = [
                (str(i), str(j)) for i in range(1, m + 1) for j in range(i + 1, m + 1)
            ]
        else:  # star
            labels = ["*"] + [f"l{i}" for i in range(1, m)]
            edges = [("*", f"l{i}") for i in range(1, m)]
        return graph_from_edges(labels, edges)

    if kind in ("spider", "octopus"):
        if not sizes:
            raise GraphError(f"{kind} takes at least one leg length")
        if any(n < 0 for n in sizes):
            raise GraphError("leg lengths must be non-negative")
        labels = []
        edges = []
        if kind == "octopus":
            labels.append("*")
        for i, n in enumerate(sizes, start=1):
            leg = [f"v{i}_{j}" for j in range(n + 1)]
            labels.extend(leg)
            edges.extend((leg[j - 1], leg[j]) for j in range(1, len(leg)))
            if kind == "octopus":
                edges.append(("*", leg[0]))
        if kind == "spider":
            base = [f"v{i}_0" for i in range(1, len(sizes) + 1)]
            edges.extend(
                (base[i], base[j])
                for i in range(len(base))
                for j in range(i + 1, len(base))
            )
        return graph_from_edges(labels, edges)

    raise GraphError(f"unknown family kind {kind!r}")


def parse_family(spec: str) -> Graph:
    """Parse shorthand like ``path:5``, ``star:6`` or ``spider:0,3,2``."""
    kind, _, arg = spec.partition(":")
    if not arg:
        raise GraphError(f"bad family spec {spec!r}; expected kind:sizes")
    try:
        sizes = [int(x) for x in arg.split(",")]
    except ValueError:
        raise GraphError(f"bad sizes in family spec {spec!r}") from None
    return make_family(kind, sizes)


# ---------------------------------------------------------------------------
# JSON interface


def graph_to_json(g: Graph) -> dict:
    return {"vertices": list(g.labels), "edges": [list(e) for e in g.edges()]}


def graph_from_json(data: dict) -> Graph:
    try:
        return graph_from_edges(data["vertices"], [tuple(e) for e in data["edges"]])
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from None


def parse_graph_spec(spec) -> Graph:
    """Accept a family shorthand string, a JSON string, or a parsed dict."""
    if isinstance(spec, Graph):
        return spec
    if isinstance(spec, dict):
        return graph_from_json(spec)
    text = str(spec)
    if text.lstrip().startswith("{"):
        return graph_from_json(json.loads(text))
    return parse_family(text)

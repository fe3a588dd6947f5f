"""Compatibility degrees, compatibility vectors and matrices.

The degree of a tube t with a tube u is -1 when t = u, the number of
vertices of u outside t adjacent to t when t is not contained in u, and 0
otherwise.  It is 0 exactly on compatible pairs and (1, 1) exactly on
exchangeable pairs; it is asymmetric in general.

Coordinates of compatibility vectors follow the canonical order of the
initial tubing (tubes sorted by bitmask), which matches the canonical
vertex order through the roots when needed.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .graphs import Graph, GraphError, is_tube, neighbor_mask_table
from .nested import canonical

# design tubes are ('r', bitmask) for round tubes and ('s', vertex) for squares
DesignTube = tuple[str, int]


def degree(g: Graph, t: int, u: int) -> int:
    """Compatibility degree of tube ``t`` with tube ``u``."""
    if t == u:
        return -1
    if t & ~u:
        return (neighbor_mask_table(g)[t] & u).bit_count()
    return 0


def degree_fn(g: Graph):
    """Closure avoiding per-call table lookups inside hot loops."""
    nbm = neighbor_mask_table(g)

    def deg(t: int, u: int) -> int:
        if t == u:
            return -1
        if t & ~u:
            return (nbm[t] & u).bit_count()
        return 0

    return deg


def compat_vector(
    g: Graph, initial: Sequence[int], t: int, mode: str = "primal"
) -> tuple[int, ...]:
    """Compatibility vector of ``t`` with respect to the initial maximal tubing.

    Primal entries are (initial_i, t) degrees; dual entries are (t, initial_i).
    """
    init = canonical(initial)
    deg = degree_fn(g)
    if mode == "primal":
        return tuple(deg(t0, t) for t0 in init)
    if mode == "dual":
        return tuple(deg(t, t0) for t0 in init)
    raise GraphError(f"unknown mode {mode!r}")


def compat_matrix(
    g: Graph, initial: Sequence[int], tubes: Iterable[int], mode: str = "primal"
) -> list[tuple[int, ...]]:
    """Columns are the (dual) compatibility vectors of ``tubes``."""
    return [compat_vector(g, initial, t, mode) for t in tubes]


# ---------------------------------------------------------------------------
# design tubes


def design_mask(x: DesignTube) -> int:
    kind, payload = x
    return payload if kind == "r" else 1 << payload


def design_degree(g: Graph, a: DesignTube, b: DesignTube) -> int:
    """Degree extended to design tubes: nested pairs with exactly one square
    tube have degree 1; round pairs fall back to the tube degree."""
    if a == b:
        return -1
    if a[0] == "r" and b[0] == "r":
        return degree(g, a[1], b[1])
    ma, mb = design_mask(a), design_mask(b)
    nested = not ma & ~mb or not mb & ~ma
    return 1 if nested else 0


def design_compat_vector(
    g: Graph, initial: Sequence[DesignTube], x: DesignTube, mode: str = "primal"
) -> tuple[int, ...]:
    init = sorted(initial)
    if mode == "primal":
        return tuple(design_degree(g, y, x) for y in init)
    if mode == "dual":
        return tuple(design_degree(g, x, y) for y in init)
    raise GraphError(f"unknown mode {mode!r}")


def validate_tube(g: Graph, t: int) -> None:
    if not is_tube(g, t):
        raise GraphError(f"{g.labels_of(t)} does not induce a connected subgraph")

"""Combinatorial models for paths, cycles, complete graphs and stars.

Path tubes are the internal diagonals of a convex polygon with two more
vertices; cycle tubes are the centrally symmetric diagonal pairs (long
diagonals counted once but listed as duplicated) of a polygon twice as
large; complete-graph tubes are decreasing lattice paths and tubings are
ordered set partitions.  Closed-form counting is provided for paths, cycles
and stars; complete graphs are counted by brute force and the mismatch with
the traditional n-indexed formulas is reported explicitly.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial

from .graphs import Graph, GraphError, bits, make_family
from .nested import tubings_of, maximal_tubings, tubes_of

Diagonal = tuple[int, int]


# ---------------------------------------------------------------------------
# paths <-> polygon diagonals


def polygon_diagonals(n: int) -> list[Diagonal]:
    """Internal diagonals of the polygon with n+3 vertices labeled 0..n+2,
    the boundary edge (0, n+2) excluded."""
    out = []
    for a in range(n + 3):
        for b in range(a + 2, n + 3):
            if (a, b) == (0, n + 2):
                continue
            out.append((a, b))
    return out


def polygon_tube(n: int, diag: Diagonal) -> int:
    """Tube of the path on n+1 vertices below a diagonal: the labels strictly
    between the endpoints, clipped to the path range 1..n+1."""
    a, b = min(diag), max(diag)
    if b - a < 2 or (a, b) == (0, n + 2) or b > n + 2 or a < 0:
        raise GraphError(f"{diag} is not an internal diagonal")
    mask = 0
    for j in range(max(a + 1, 1), min(b - 1, n + 1) + 1):
        mask |= 1 << (j - 1)
    return mask


def tube_polygon(n: int, tube: int) -> Diagonal:
    """Inverse of polygon_tube on interval tubes of the path."""
    inside = list(bits(tube))
    j, k = inside[0] + 1, inside[-1] + 1
    if tube != polygon_tube(n, (j - 1, k + 1)):
        raise GraphError("not an interval tube of the path")
    return (j - 1, k + 1)


def diagonals_cross(d1: Diagonal, d2: Diagonal) -> bool:
    a, b = min(d1), max(d1)
    c, d = min(d2), max(d2)
    return a < c < b < d or c < a < d < b


# ---------------------------------------------------------------------------
# cycles <-> centrally symmetric diagonals


def _cyc_label(n: int, pos: int) -> int:
    return pos % (n + 1) + 1


def _antipode(n: int, pos: int) -> int:
    return (pos + n + 1) % (2 * n + 2)


SymPair = tuple[Diagonal, ...]


def _canon_pair(n: int, diag: Diagonal) -> SymPair:
    p, q = sorted(diag)
    pbar, qbar = sorted((_antipode(n, p), _antipode(n, q)))
    if (pbar, qbar) == (p, q):
        return ((p, q),)
    return tuple(sorted([(p, q), (pbar, qbar)]))


def cycle_pairs(n: int) -> list[SymPair]:
    """Centrally symmetric diagonal pairs of the polygon on 2n+2 vertices,
    long diagonals giving singleton entries."""
    m = 2 * n + 2
    seen = set()
    for p in range(m):
        for q in range(p + 2, m):
            if (q - p) % m in (1, m - 1) or (p, q) == (0, m - 1):
                continue
            seen.add(_canon_pair(n, (p, q)))
    return sorted(seen)


def cycle_tube(n: int, pair: SymPair) -> int:
    """Labels cut off from the center by the symmetric pair (the complement
    of the long-diagonal label for long diagonals)."""
    m = 2 * n + 2
    if len(pair) == 1:
        (p, q) = pair[0]
        if q != _antipode(n, p):
            raise GraphError("singleton pairs must be long diagonals")
        i = _cyc_label(n, p)
        return ((1 << (n + 1)) - 1) & ~(1 << (i - 1))
    (p, q), (pbar, qbar) = pair
    arc1 = [(p + k) % m for k in range(1, (q - p) % m)]
    arc2 = [(q + k) % m for k in range(1, (p - q) % m)]
    cap = arc1 if not set(arc1) & {pbar, qbar} else arc2
    if set(cap) & {pbar, qbar}:
        raise GraphError("diagonals of the pair cross each other")
    mask = 0
    for pos in cap:
        mask |= 1 << (_cyc_label(n, pos) - 1)
    return mask


def tube_cycle(n: int, tube: int) -> SymPair:
    """Inverse of cycle_tube on the proper tubes of the cycle on n+1 vertices."""
    m = 2 * n + 2
    size = tube.bit_count()
    labels = {v + 1 for v in bits(tube)}
    if size == n:
        missing = next(i for i in range(1, n + 2) if i not in labels)
        p = missing - 1
        return ((p, _antipode(n, p)),)
    for start in range(m):
        run = [(start + k) % m for k in range(size)]
        if {_cyc_label(n, pos) for pos in run} == labels:
            before = (start - 1) % m
            after = (start + size) % m
            return _canon_pair(n, tuple(sorted((before, after))))
    raise GraphError("not a proper tube of the cycle")


def pair_crossings(n: int, pair: SymPair, other: SymPair) -> int:
    """Number of crossings of the diagonals of ``pair`` with one
    representative diagonal of ``other``."""
    rep = other[0]
    total = 0
    for diag in pair:
        if _cross_cyclic(2 * n + 2, diag, rep):
            total += 1
    return total


def _cross_cyclic(m: int, d1: Diagonal, d2: Diagonal) -> bool:
    a, b = d1
    c, d = d2
    if len({a, b, c, d}) < 4:
        return False

    def between(x, lo, hi):
        return (x - lo) % m < (hi - lo) % m

    return between(c, a, b) != between(d, a, b)


# ---------------------------------------------------------------------------
# complete graphs <-> lattice paths and ordered partitions


def phi_path(n: int, tube: int) -> list[int]:
    """Step heights |tube minus the first i vertices| for i = 0..n."""
    out = []
    for i in range(n + 1):
        out.append((tube & ~((1 << i) - 1)).bit_count())
    return out


def psi_path(n: int, tube: int) -> list[int]:
    """Step heights: degree of the initial tube {1..i} with the tube,
    for i = 1..n."""
    from .compat import degree

    k = make_family("complete", [n + 1])
    return [degree(k, (1 << i) - 1, tube) for i in range(1, n + 1)]


def complete_lattice_path(n: int, tube: int, which: str = "phi") -> list[int]:
    if which == "phi":
        return phi_path(n, tube)
    if which == "psi":
        return psi_path(n, tube)
    raise GraphError(f"unknown lattice path kind {which!r}")


def ordered_partition(n: int, tubing) -> list[int]:
    """Tubings of the complete graph on n+1 vertices are nested chains; the
    vertices fall into blocks by how many tubes contain them, from none
    (outermost block) at the end to all (innermost block) first.

    Returned as a list of vertex masks, innermost block last, matching the
    descent count order: block j holds the vertices contained in exactly
    |tubing|+1-j tubes.
    """
    ts = list(tubing)
    blocks: dict[int, int] = {}
    for v in range(n + 1):
        cnt = sum(1 for t in ts if t & (1 << v))
        sigma = cnt + 1
        blocks[sigma] = blocks.get(sigma, 0) | (1 << v)
    top = len(ts) + 1
    if sorted(blocks) != list(range(1, top + 1)):
        raise GraphError("not a valid tubing of the complete graph")
    return [blocks[j] for j in range(1, top + 1)]


# ---------------------------------------------------------------------------
# closed-form counting


@lru_cache(maxsize=None)
def stirling2(m: int, p: int) -> int:
    if m == p == 0:
        return 1
    if m == 0 or p == 0:
        return 0
    return p * stirling2(m - 1, p) + stirling2(m - 1, p - 1)


def _star_k_tubings(n: int, k: int) -> int:
    """Tubings with k tubes on the star with n leaves: choose leaf singletons
    plus a nested chain of center tubes; counted by inclusion-exclusion over
    the chain layers."""
    if k == 0:
        return 1
    total = comb(n, k)  # no center tube at all
    for i in range(1, k + 1):
        m = n - k + i
        layers = sum(
            (-1) ** s * comb(i, s) * (i + 1 - s) ** m for s in range(i + 1)
        )
        total += comb(n, k - i) * layers
    return total


def closed_form_counts(kind: str, n: int) -> dict:
    """Exact counts for the path, cycle and star on the usual parameter n
    (path and cycle on n+1 vertices, star with n leaves)."""
    if kind == "path":
        return {
            "proper_tubes": n * (n + 3) // 2,
            "maximal_tubings": comb(2 * n + 2, n + 1) // (n + 2),
            "k_tubings": [
                comb(n, k) * comb(n + k + 2, k) // (k + 1) for k in range(n + 1)
            ],
        }
    if kind == "cycle":
        return {
            "proper_tubes": n * (n + 1),
            "maximal_tubings": comb(2 * n, n),
            "k_tubings": [comb(n, k) * comb(n + k, k) for k in range(n + 1)],
        }
    if kind == "star":
        counts = [_star_k_tubings(n, k) for k in range(n + 1)]
        return {
            "proper_tubes": 2**n + n - 1,
            "maximal_tubings": sum(
                factorial(n) // factorial(i) for i in range(n + 1)
            ),
            "k_tubings": counts,
            "total_tubings": sum(counts),
        }
    raise GraphError(
        f"no closed form for {kind!r}; complete graphs are counted by brute "
        "force, see complete_count_report"
    )


def brute_counts(g: Graph) -> dict:
    from .graphs import nested_dimension

    n = nested_dimension(g)
    return {
        "proper_tubes": len(tubes_of(g)),
        "maximal_tubings": len(maximal_tubings(g)),
        "k_tubings": [len(tubings_of(g, k)) for k in range(n + 1)],
    }


def complete_count_report(n: int) -> dict:
    """Brute-force counts for the complete graph on n+1 vertices next to the
    traditional formulas indexed by n; the formulas match the graph on n
    vertices instead, which the report flags as an index shift."""
    g = make_family("complete", [n + 1])
    brute = brute_counts(g)
    printed = {
        "proper_tubes": 2**n - 2,
        "maximal_tubings": factorial(n),
        "k_tubings": [
            factorial(k) * stirling2(n, k) for k in range(n + 1)
        ],
    }
    shifted = {
        "proper_tubes": 2 ** (n + 1) - 2,
        "maximal_tubings": factorial(n + 1),
    }
    return {
        "n": n,
        "vertices": n + 1,
        "brute": brute,
        "printed_formulas": printed,
        "formulas_match": brute["proper_tubes"] == printed["proper_tubes"]
        and brute["maximal_tubings"] == printed["maximal_tubings"],
        "index_shift_matches": brute["proper_tubes"] == shifted["proper_tubes"]
        and brute["maximal_tubings"] == shifted["maximal_tubings"],
    }

"""Shared oracles and graph catalogs for the test suite.

The oracles here are deliberately independent of the library code they
check: connectivity by set-based BFS, determinants by cofactor expansion,
kernels by rational Gaussian elimination, infeasibility by Fourier-Motzkin.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from nestfan.graphs import Graph, bits, graph_from_edges


def bfs_connected(g: Graph, mask: int) -> bool:
    verts = set(bits(mask))
    if not verts:
        return False
    start = next(iter(verts))
    seen = {start}
    queue = [start]
    while queue:
        v = queue.pop()
        for w in bits(g.nbr[v]):
            if w in verts and w not in seen:
                seen.add(w)
                queue.append(w)
    return seen == verts


def subsets_tubings(g: Graph, size: int) -> set[frozenset[int]]:
    """All tubings of a given size by brute subset filtering (oracle)."""
    from nestfan.graphs import proper_tubes
    from nestfan.nested import are_compatible

    ts = proper_tubes(g)
    out = set()
    for combo in itertools.combinations(ts, size):
        if all(
            are_compatible(g, a, b) for a, b in itertools.combinations(combo, 2)
        ):
            out.add(frozenset(combo))
    return out


def cofactor_det(rows) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j in range(n):
        if not rows[0][j]:
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        total += (-1) ** j * Fraction(rows[0][j]) * cofactor_det(minor)
    return total


def gauss_kernel(cols) -> list[list[Fraction]]:
    """Basis of the kernel of the matrix whose columns are ``cols``."""
    w = len(cols)
    n = len(cols[0]) if w else 0
    a = [[Fraction(cols[j][i]) for j in range(w)] for i in range(n)]
    piv = []
    r = 0
    for c in range(w):
        pr = next((i for i in range(r, n) if a[i][c]), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        a[r] = [x / a[r][c] for x in a[r]]
        for i in range(n):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        piv.append(c)
        r += 1
    free = [c for c in range(w) if c not in piv]
    basis = []
    for f in free:
        vec = [Fraction(0)] * w
        vec[f] = Fraction(1)
        for i, c in enumerate(piv):
            vec[c] = -a[i][f]
        basis.append(vec)
    return basis


def fourier_motzkin_feasible(rows, n_vars: int) -> bool:
    """Feasibility of {coeffs.x >= rhs} by variable elimination (exact)."""
    system = [([Fraction(c) for c in coeffs], Fraction(rhs)) for coeffs, rhs in rows]
    for var in range(n_vars):
        pos, neg, rest = [], [], []
        for coeffs, rhs in system:
            c = coeffs[var]
            if c > 0:
                pos.append((coeffs, rhs))
            elif c < 0:
                neg.append((coeffs, rhs))
            else:
                rest.append((coeffs, rhs))
        new = rest
        for pc, pr in pos:
            for nc, nr in neg:
                a, b = pc[var], -nc[var]
                coeffs = [b * x + a * y for x, y in zip(pc, nc)]
                coeffs[var] = Fraction(0)
                new.append((coeffs, b * pr + a * nr))
        system = new
    return all(rhs <= 0 for coeffs, rhs in system)


# ---------------------------------------------------------------------------
# isomorphism-class catalogs


def _edge_code(g: Graph) -> int:
    code = 0
    k = 0
    for i in range(g.m):
        for j in range(i + 1, g.m):
            if g.nbr[i] & (1 << j):
                code |= 1 << k
            k += 1
    return code


def _canon_code(m: int, adj: set[tuple[int, int]]) -> int:
    best = None
    for perm in itertools.permutations(range(m)):
        code = 0
        k = 0
        for i in range(m):
            for j in range(i + 1, m):
                if (min(perm[i], perm[j]), max(perm[i], perm[j])) in adj:
                    code |= 1 << k
                k += 1
        if best is None or code < best:
            best = code
    return best


def _graph_from_code(m: int, code: int) -> Graph:
    labels = [str(i + 1) for i in range(m)]
    edges = []
    k = 0
    for i in range(m):
        for j in range(i + 1, m):
            if code & (1 << k):
                edges.append((labels[i], labels[j]))
            k += 1
    return graph_from_edges(labels, edges)


@lru_cache(maxsize=None)
def connected_graph_classes(m: int) -> tuple[Graph, ...]:
    """One representative per isomorphism class of connected graphs on m
    vertices.  Built incrementally: every connected graph arises from a
    connected graph on m-1 vertices by attaching a new vertex to a non-empty
    neighborhood."""
    if m == 1:
        return (graph_from_edges(["1"], []),)
    seen = {}
    for g in connected_graph_classes(m - 1):
        adj = set()
        for i in range(g.m):
            for j in bits(g.nbr[i]):
                if j > i:
                    adj.add((i, j))
        for sub in range(1, 1 << (m - 1)):
            new_adj = set(adj) | {(v, m - 1) for v in bits(sub)}
            code = _canon_code(m, new_adj)
            if code not in seen:
                seen[code] = _graph_from_code(m, code)
    return tuple(seen[c] for c in sorted(seen))


@lru_cache(maxsize=None)
def graph_classes_upto(max_m: int, connected_only: bool = True) -> tuple[Graph, ...]:
    out = []
    for m in range(1, max_m + 1):
        out.extend(connected_graph_classes(m))
    if connected_only:
        return tuple(out)
    # disconnected classes: multisets of connected classes, total <= max_m
    from nestfan.graphs import disjoint_union, relabel

    extra = []
    def build(parts, start_m, start_idx, total):
        if len(parts) >= 2:
            gs = [relabel(p, f"c{i}.") for i, p in enumerate(parts)]
            extra.append(disjoint_union(*gs))
        for m in range(start_m, max_m - total + 1):
            classes = connected_graph_classes(m)
            lo = start_idx if m == start_m else 0
            for i in range(lo, len(classes)):
                build(parts + [classes[i]], m, i, total + m)

    build([], 1, 0, 0)
    return tuple(out) + tuple(extra)

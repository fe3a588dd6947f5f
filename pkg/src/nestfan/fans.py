"""Simplicial fans from compatibility vectors and their exact verification.

A fan stores ray vectors keyed by the combinatorial object generating them
(tube bitmasks, or design tubes), its maximal cones as key-index tuples, and
the flip edges between adjacent cones.  Verification checks the two-part
criterion for a complete simplicial fan: a base cone whose open cone meets
no other open cone, and a separating linear dependence across every flip.
All checks are exact (integer or rational arithmetic only).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .compat import compat_vector, design_compat_vector, design_mask
from .exactla import det_sign, lp_feasible, nullspace_dependence
from .graphs import (
    Graph,
    GraphError,
    bits,
    connected_components,
    disjoint_union,
    nested_dimension,
    proper_tubes,
)
from .nested import (
    Tubing,
    canonical,
    induced_tubings_after_split,
    link_split,
    maximal_tubings,
    split_graphs,
    tubing_flips,
)

COMPAT_KINDS = ("primal", "dual")
DESIGN_KINDS = ("design_primal", "design_dual")


@dataclass(frozen=True)
class Provenance:
    kind: str
    graph: Optional[Graph] = None
    initial: Optional[tuple] = None


@dataclass(frozen=True)
class Fan:
    """Rays, maximal cones, and flip edges of a simplicial fan.

    ``rays[i]`` is the vector of ``ray_keys[i]``; cones hold sorted ray
    indices; ``active_coords`` lists the coordinates carrying the geometry
    (the nested fan lives in a codimension-#components subspace, its rays are
    reduced to a basis of that subspace by dropping one coordinate per
    component).
    """

    dimension: int
    ray_keys: tuple
    rays: tuple[tuple, ...]
    cones: tuple[tuple[int, ...], ...]
    flips: tuple[tuple[int, int, int, int], ...]
    provenance: Provenance
    active_coords: Optional[tuple[int, ...]] = None
    _index: dict = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        object.__setattr__(
            self, "_index", {k: i for i, k in enumerate(self.ray_keys)}
        )

    def index_of(self, key) -> int:
        try:
            return self._index[key]
        except KeyError:
            raise GraphError(f"unknown ray key {key!r}") from None

    def ray_of(self, key):
        return self.rays[self.index_of(key)]

    def reduced_rays(self) -> tuple[tuple, ...]:
        if self.active_coords is None:
            return self.rays
        cols = self.active_coords
        return tuple(tuple(r[c] for c in cols) for r in self.rays)

    def cone_keys(self, cone: Sequence[int]) -> tuple:
        return tuple(self.ray_keys[i] for i in cone)


@dataclass(frozen=True)
class LinearDependence:
    """Primitive integer dependence among the rays of two adjacent cones.

    Keyed by ray keys; the coefficient of the designated flipped ray is
    positive (unless it vanishes, flagged by ``pivot_zero``).  For flips of
    tube-keyed fans, ``local`` records whether the support stays inside the
    union of the two flipped tubes.
    """

    keys: tuple
    coeffs: tuple[int, ...]
    pivot: object
    pivot_zero: bool
    local: Optional[bool] = None

    def coefficient(self, key) -> int:
        try:
            return self.coeffs[self.keys.index(key)]
        except ValueError:
            return 0

    def support(self) -> tuple:
        return tuple(k for k, c in zip(self.keys, self.coeffs) if c)

    def as_dict(self) -> dict:
        return {k: c for k, c in zip(self.keys, self.coeffs) if c}


@dataclass(frozen=True)
class FlipRecord:
    cone_i: int
    cone_j: int
    out_key: object
    in_key: object
    dependence: Optional[LinearDependence]
    separating: bool
    local: Optional[bool]
    rank_deficient: bool


@dataclass(frozen=True)
class FanReport:
    ok: bool
    basis_cone_ok: bool
    disjointness_ok: bool
    structural_condition1: bool
    flip_records: tuple[FlipRecord, ...]
    problems: tuple[str, ...]

    def failures(self) -> tuple[FlipRecord, ...]:
        return tuple(r for r in self.flip_records if not r.separating)


# ---------------------------------------------------------------------------
# construction


def build_fan(g: Graph, initial: Tubing, kind: str = "primal") -> Fan:
    """Compatibility fan of ``g`` for an initial maximal (design) tubing.

    Rays are the (dual) compatibility vectors of all (design) tubes, cones
    are all maximal (design) tubings.
    """
    return _build_fan_cached(g, tuple(initial), kind)


@lru_cache(maxsize=32)
def _build_fan_cached(g: Graph, initial: Tubing, kind: str) -> Fan:
    if kind in COMPAT_KINDS:
        init = canonical(initial)
        n = nested_dimension(g)
        if len(init) != n:
            raise GraphError("initial tubing must be maximal")
        keys = proper_tubes(g)
        mode = "primal" if kind == "primal" else "dual"
        rays = tuple(compat_vector(g, init, t, mode) for t in keys)
        tubings = maximal_tubings(g)
        index = {t: i for i, t in enumerate(keys)}
        cones = tuple(tuple(index[t] for t in T) for T in tubings)
        flips = tuple(
            (ci, cj, index[tout], index[tin])
            for ci, cj, tout, tin in tubing_flips(g)
        )
        return Fan(n, keys, rays, cones, flips, Provenance(kind, g, init))

    if kind in DESIGN_KINDS:
        from .design import design_tubes_of, maximal_design_tubings, design_flips

        init = tuple(sorted(initial))
        if len(init) != g.m:
            raise GraphError("initial design tubing must be maximal")
        keys = design_tubes_of(g)
        mode = "primal" if kind == "design_primal" else "dual"
        rays = tuple(design_compat_vector(g, init, x, mode) for x in keys)
        tubings = maximal_design_tubings(g)
        index = {x: i for i, x in enumerate(keys)}
        cones = tuple(tuple(sorted(index[x] for x in T)) for T in tubings)
        flips = tuple(
            (ci, cj, index[xout], index[xin])
            for ci, cj, xout, xin in design_flips(g)
        )
        return Fan(g.m, keys, rays, cones, flips, Provenance(kind, g, init))

    raise GraphError(f"unknown fan kind {kind!r}")


def nested_ray(g: Graph, t: int) -> tuple[Fraction, ...]:
    """Characteristic vector of the tube projected to zero-sum-per-component."""
    comp = next(c for c in connected_components(g) if t & ~c == 0)
    size = comp.bit_count()
    frac = Fraction(t.bit_count(), size)
    return tuple(
        Fraction(1 if t & (1 << v) else 0) - (frac if comp & (1 << v) else 0)
        for v in range(g.m)
    )


def build_nested_fan(g: Graph) -> Fan:
    """The classical fan with rays the projected characteristic vectors."""
    keys = proper_tubes(g)
    rays = tuple(nested_ray(g, t) for t in keys)
    tubings = maximal_tubings(g)
    index = {t: i for i, t in enumerate(keys)}
    cones = tuple(tuple(index[t] for t in T) for T in tubings)
    flips = tuple(
        (ci, cj, index[tout], index[tin]) for ci, cj, tout, tin in tubing_flips(g)
    )
    # drop one coordinate per component: a linear isomorphism onto R^n
    drop = {max(bits(c)) for c in connected_components(g)}
    active = tuple(v for v in range(g.m) if v not in drop)
    return Fan(
        nested_dimension(g),
        keys,
        rays,
        cones,
        flips,
        Provenance("nested", g, None),
        active_coords=active,
    )


# ---------------------------------------------------------------------------
# verification


def _mask_of_key(key) -> Optional[int]:
    if isinstance(key, int):
        return key
    if isinstance(key, tuple) and len(key) == 2 and key[0] in ("r", "s"):
        return design_mask(key)
    return None


def _ridge_flips(f: Fan) -> tuple[tuple[int, int, int, int], ...]:
    """Adjacency through shared ridges of the cone complex."""
    ridge_map: dict[tuple, list[tuple[int, int]]] = {}
    for ci, cone in enumerate(f.cones):
        for drop in cone:
            ridge = tuple(x for x in cone if x != drop)
            ridge_map.setdefault(ridge, []).append((ci, drop))
    flips = []
    for members in ridge_map.values():
        if len(members) == 2:
            (ci, out_i), (cj, out_j) = members
            flips.append((ci, cj, out_i, out_j))
    return tuple(sorted(flips))


def _ridges_ok(f: Fan) -> Optional[str]:
    ridge_map: dict[tuple, int] = {}
    for cone in f.cones:
        for drop in cone:
            ridge = tuple(x for x in cone if x != drop)
            ridge_map[ridge] = ridge_map.get(ridge, 0) + 1
    bad = [r for r, c in ridge_map.items() if c != 2]
    if bad:
        return f"{len(bad)} ridges not shared by exactly two maximal cones"
    return None


def flip_dependence_on(
    f: Fan, rays: tuple[tuple, ...], ci: int, cj: int, out_idx: int, in_idx: int
) -> tuple[Optional[LinearDependence], bool, Optional[bool]]:
    """Dependence across one flip plus its separating and local verdicts."""
    union = sorted(set(f.cones[ci]) | {in_idx})
    vectors = [rays[i] for i in union]
    pivot_pos = union.index(out_idx)
    dep = nullspace_dependence(vectors, pivot_pos)
    if dep is None:
        return None, False, None
    keys = tuple(f.ray_keys[i] for i in union)
    local: Optional[bool] = None
    mo, mi = _mask_of_key(f.ray_keys[out_idx]), _mask_of_key(f.ray_keys[in_idx])
    if mo is not None and mi is not None:
        tbar = mo | mi
        local = True
        for key, c in zip(keys, dep.coeffs):
            mk = _mask_of_key(key)
            if c and (mk is None or mk & ~tbar):
                local = False
                break
    keyed = LinearDependence(
        keys=keys,
        coeffs=dep.coeffs,
        pivot=f.ray_keys[out_idx],
        pivot_zero=dep.pivot_zero,
        local=local,
    )
    separating = not dep.pivot_zero and keyed.coefficient(f.ray_keys[in_idx]) > 0
    return keyed, separating, local


def _structural_condition1(f: Fan, rays: tuple[tuple, ...]) -> Optional[int]:
    """Index of a cone equal to minus the coordinate basis when every ray
    outside it is non-negative; such a base cone needs no LP check."""
    neg_units = {}
    for i, r in enumerate(rays):
        nz = [(c, x) for c, x in enumerate(r) if x]
        if len(nz) == 1 and nz[0][1] == -1:
            neg_units[i] = nz[0][0]
    candidates = [
        ci
        for ci, cone in enumerate(f.cones)
        if all(i in neg_units for i in cone)
        and len({neg_units[i] for i in cone}) == f.dimension
    ]
    if not candidates:
        return None
    base = candidates[0]
    inside = set(f.cones[base])
    for i, r in enumerate(rays):
        if i not in inside and any(x < 0 for x in r):
            return None
    return base


def _cones_overlap(base_rays: list, other_rays: list) -> bool:
    """Exact test whether two open simplicial cones intersect: positive
    combinations x, y with base.x = other.y form an LP feasibility problem."""
    n = len(base_rays[0])
    nb, no = len(base_rays), len(other_rays)
    rows = []
    for c in range(n):
        coeffs = [r[c] for r in base_rays] + [-r[c] for r in other_rays]
        rows.append((coeffs, 0))
        rows.append(([-v for v in coeffs], 0))
    lower = [Fraction(1)] * (nb + no)
    return lp_feasible(rows, nb + no, lower) is not None


def verify_fan(f: Fan, check_condition1: bool = True) -> FanReport:
    """Exact verification that the stored cones form a complete simplicial fan.

    Condition 1 uses a structural shortcut for compatibility-style fans
    (base cone is minus the identity, all other rays non-negative); for
    arbitrary fans it falls back to pairwise open-cone disjointness against
    the base cone, decided by exact LP.  Condition 2 checks a separating
    dependence across every flip.
    """
    problems: list[str] = []
    rays = f.reduced_rays()
    n = f.dimension

    for cone in f.cones:
        if len(cone) != n:
            problems.append("a maximal cone does not have exactly n rays")
            break
    if len(set(rays)) != len(rays):
        problems.append("ray vectors are not pairwise distinct")

    flips = f.flips if f.flips else _ridge_flips(f)
    ridge_problem = _ridges_ok(f)
    if ridge_problem:
        problems.append(ridge_problem)

    basis_ok = True
    disjoint_ok = True
    structural = False
    if check_condition1 and f.cones:
        base = _structural_condition1(f, rays)
        if base is not None:
            structural = True
        else:
            base = 0
            if f.provenance.initial is not None:
                init_keys = set(f.provenance.initial)
                for ci, cone in enumerate(f.cones):
                    if set(f.cone_keys(cone)) == init_keys:
                        base = ci
                        break
            base_rays = [rays[i] for i in f.cones[base]]
            basis_ok = det_sign(base_rays) != 0
            if basis_ok:
                for ci, cone in enumerate(f.cones):
                    if ci == base:
                        continue
                    other = [rays[i] for i in cone]
                    if _cones_overlap(base_rays, other):
                        disjoint_ok = False
                        problems.append(
                            f"open cone {ci} meets the open base cone {base}"
                        )
                        break

    records = []
    all_separating = True
    for ci, cj, out_idx, in_idx in flips:
        dep, separating, local = flip_dependence_on(f, rays, ci, cj, out_idx, in_idx)
        records.append(
            FlipRecord(
                cone_i=ci,
                cone_j=cj,
                out_key=f.ray_keys[out_idx],
                in_key=f.ray_keys[in_idx],
                dependence=dep,
                separating=separating,
                local=local,
                rank_deficient=dep is None,
            )
        )
        if not separating:
            all_separating = False

    ok = (
        not problems
        and basis_ok
        and disjoint_ok
        and all_separating
        and bool(f.cones)
    )
    return FanReport(
        ok=ok,
        basis_cone_ok=basis_ok,
        disjointness_ok=disjoint_ok,
        structural_condition1=structural,
        flip_records=tuple(sorted(records, key=lambda r: (r.cone_i, r.cone_j))),
        problems=tuple(problems),
    )


def flip_dependence(f: Fan, tubing: Iterable, t) -> LinearDependence:
    """Dependence for flipping ray ``t`` out of the maximal cone ``tubing``,
    with the pivot coefficient positive and the locality flag attached."""
    target = frozenset(f.index_of(k) for k in tubing)
    ci = next(
        (i for i, cone in enumerate(f.cones) if frozenset(cone) == target), None
    )
    if ci is None:
        raise GraphError("tubing is not a maximal cone of the fan")
    out_idx = f.index_of(t)
    for a, b, oi, ii in f.flips:
        if a == ci and oi == out_idx:
            dep, separating, local = flip_dependence_on(f, f.reduced_rays(), a, b, oi, ii)
            break
        if b == ci and ii == out_idx:
            dep, separating, local = flip_dependence_on(f, f.reduced_rays(), b, a, ii, oi)
            break
    else:
        raise GraphError("no flip removes this ray from the cone")
    if dep is None:
        raise GraphError("rank-deficient flip: the fan is not simplicial here")
    return dep


# ---------------------------------------------------------------------------
# products and restrictions


def _shift_key(key, offset: int):
    if isinstance(key, int):
        return key << offset
    if isinstance(key, tuple) and key[0] == "r":
        return ("r", key[1] << offset)
    if isinstance(key, tuple) and key[0] == "s":
        return ("s", key[1] + offset)
    raise GraphError(f"cannot embed ray key {key!r} in a product")


def product_fan(fans: Sequence[Fan]) -> Fan:
    """Product of fans over graphs with disjoint vertex labels.

    Rays are embedded in block coordinates; maximal cones pick one maximal
    cone per factor.  Ray keys are shifted into the union graph's indexing.
    """
    if not fans:
        raise GraphError("product of no fans")
    if len(fans) == 1:
        return fans[0]
    graphs = [f.provenance.graph for f in fans]
    if any(g is None for g in graphs):
        raise GraphError("product factors need graph provenance")
    union = disjoint_union(*graphs)  # raises on label clashes

    dim = sum(f.dimension for f in fans)
    keys: list = []
    rays: list[tuple] = []
    start_of: list[int] = []
    coord_off = 0
    vert_off = 0
    for f in fans:
        start_of.append(len(keys))
        red = f.reduced_rays()
        for k, r in zip(f.ray_keys, red):
            keys.append(_shift_key(k, vert_off))
            vec = [0] * dim
            for c, x in enumerate(r):
                vec[coord_off + c] = x
            rays.append(tuple(vec))
        coord_off += f.dimension
        vert_off += f.provenance.graph.m

    cones: list[tuple[int, ...]] = []
    combo_index: dict[tuple[int, ...], int] = {}

    def rec(i: int, picked: list[int]):
        if i == len(fans):
            cone: list[int] = []
            for fi, ci in enumerate(picked):
                cone.extend(start_of[fi] + x for x in fans[fi].cones[ci])
            combo_index[tuple(picked)] = len(cones)
            cones.append(tuple(sorted(cone)))
            return
        for ci in range(len(fans[i].cones)):
            rec(i + 1, picked + [ci])

    rec(0, [])

    flips: list[tuple[int, int, int, int]] = []
    for fi, f in enumerate(fans):
        others = [range(len(fans[j].cones)) for j in range(len(fans)) if j != fi]

        def combos(idx: int, acc: list[int]):
            if idx == len(others):
                yield list(acc)
                return
            for c in others[idx]:
                yield from combos(idx + 1, acc + [c])

        for ci, cj, out_i, in_i in f.flips:
            for rest in combos(0, []):
                full_i = rest[:fi] + [ci] + rest[fi:]
                full_j = rest[:fi] + [cj] + rest[fi:]
                flips.append(
                    (
                        combo_index[tuple(full_i)],
                        combo_index[tuple(full_j)],
                        start_of[fi] + out_i,
                        start_of[fi] + in_i,
                    )
                )

    kind = fans[0].provenance.kind
    init = None
    if all(f.provenance.initial is not None for f in fans):
        parts = []
        off = 0
        for f in fans:
            parts.extend(_shift_key(k, off) for k in f.provenance.initial)
            off += f.provenance.graph.m
        init = tuple(sorted(parts))
    return Fan(
        dim,
        tuple(keys),
        tuple(rays),
        tuple(cones),
        tuple(sorted(set(flips))),
        Provenance(kind, union, init),
    )


def fan_equal(f1: Fan, f2: Fan) -> bool:
    """Exact equality as keyed geometric data: same rays and same cone set."""
    m1 = dict(zip(f1.ray_keys, f1.reduced_rays()))
    m2 = dict(zip(f2.ray_keys, f2.reduced_rays()))
    if m1 != m2:
        return False
    c1 = {frozenset(f1.cone_keys(c)) for c in f1.cones}
    c2 = {frozenset(f2.cone_keys(c)) for c in f2.cones}
    return c1 == c2


def hyperplane_restriction_check(g: Graph, initial: Tubing, t0: int) -> bool:
    """The rays of tubes compatible with ``t0``, with the vanishing
    t0-coordinate deleted, must reproduce the product fan of the restriction
    and the reconnected complement with their induced initial tubings."""
    init = canonical(initial)
    if t0 not in init:
        raise GraphError("the split tube must belong to the initial tubing")
    fan = build_fan(g, init, "primal")
    drop_pos = init.index(t0)

    sub, rc = split_graphs(g, t0)
    init_sub, init_rc = induced_tubings_after_split(g, init, t0)
    fan_sub = build_fan(sub, init_sub, "primal")
    fan_rc = build_fan(rc, init_rc, "primal")
    prod = product_fan([fan_sub, fan_rc])

    # match coordinates: position k of the reduced vector belongs to the
    # k-th surviving initial tube, whose split image indexes a product coord
    prod_init = list(prod.provenance.initial)
    union = prod.provenance.graph

    def image_key(s: int) -> int:
        where, tube = link_split(g, t0, s)
        graph = sub if where == "restriction" else rc
        off = 0 if where == "restriction" else sub.m
        return union.mask_of(graph.labels_of(tube))

    survivors = [s for s in init if s != t0]
    perm = []
    for s in survivors:
        key = image_key(s)
        if key not in prod_init:
            return False
        perm.append(prod_init.index(key))

    compatible = [
        s for s in fan.ray_keys if s != t0 and fan.ray_of(s)[drop_pos] == 0
    ]
    expected_rays = dict(zip(prod.ray_keys, prod.reduced_rays()))
    seen = {}
    for s in compatible:
        vec = fan.ray_of(s)
        reduced = [vec[i] for i in range(len(init)) if i != drop_pos]
        mapped = [0] * len(reduced)
        for k, p in enumerate(perm):
            mapped[p] = reduced[k]
        key = image_key(s)
        if key not in expected_rays or tuple(mapped) != tuple(expected_rays[key]):
            return False
        seen[key] = s
    if set(seen) != set(expected_rays):
        return False

    link_cones = {
        frozenset(image_key(s) for s in fan.cone_keys(c) if s != t0)
        for c in fan.cones
        if t0 in fan.cone_keys(c)
    }
    prod_cones = {frozenset(prod.cone_keys(c)) for c in prod.cones}
    return link_cones == prod_cones


# ---------------------------------------------------------------------------
# JSON


def key_label(f: Fan, key) -> str:
    g = f.provenance.graph
    if isinstance(key, int):
        return ",".join(g.labels_of(key)) if g else bin(key)
    if isinstance(key, tuple) and key[0] == "r":
        return ",".join(g.labels_of(key[1])) if g else bin(key[1])
    if isinstance(key, tuple) and key[0] == "s":
        return f"[{g.labels[key[1]]}]" if g else f"[{key[1]}]"
    return str(key)


def _num_json(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return int(x)


def fan_to_json(f: Fan) -> dict:
    return {
        "dimension": f.dimension,
        "rays": {
            key_label(f, k): [_num_json(x) for x in r]
            for k, r in zip(f.ray_keys, f.rays)
        },
        "cones": [[key_label(f, k) for k in f.cone_keys(c)] for c in f.cones],
        "provenance": {
            "kind": f.provenance.kind,
            "initial": [key_label(f, k) for k in f.provenance.initial]
            if f.provenance.initial is not None
            else None,
        },
    }


def report_to_json(r: FanReport, f: Fan) -> dict:
    return {
        "ok": r.ok,
        "condition1": {
            "basis_cone_ok": r.basis_cone_ok,
            "disjointness_ok": r.disjointness_ok,
            "structural": r.structural_condition1,
        },
        "flips": len(r.flip_records),
        "non_separating": [
            {
                "out": key_label(f, rec.out_key),
                "in": key_label(f, rec.in_key),
                "rank_deficient": rec.rank_deficient,
            }
            for rec in r.failures()
        ],
        "problems": list(r.problems),
    }

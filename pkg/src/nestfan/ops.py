"""Orchestration helpers shared by the CLI and the HTTP service.

Both front ends accept the same JSON payloads (graphs as family shorthands
or vertex/edge objects, tubings as lists of label lists, design tubings as
round/square objects) and delegate here; everything returns plain
JSON-serializable data.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .compat import degree
from .design import all_squares_tubing, design_tube_from_json, is_design_tubing
from .families import (
    brute_counts,
    closed_form_counts,
    complete_count_report,
    complete_lattice_path,
    cycle_pairs,
    cycle_tube,
    polygon_diagonals,
    polygon_tube,
)
from .fans import (
    Fan,
    build_fan,
    build_nested_fan,
    fan_to_json,
    flip_dependence,
    key_label,
    report_to_json,
    verify_fan,
)
from .graphs import Graph, GraphError, parse_graph_spec
from .isos import (
    fan_class_count,
    graph_automorphisms,
    is_path_graph,
    path_rotation,
    spider_omega,
    tubing_orbit_count,
)
from .nested import (
    canonical,
    enumerate_nested,
    is_tubing,
    maximal_tubings,
    random_maximal_tubing,
    tubes_of,
)
from .polytopes import (
    find_weights_lp,
    path_cycle_weights,
    realize_polytope,
    star_polytope,
    verify_normal_fan,
)

DESIGN_KINDS = ("design_primal", "design_dual")


def load_graph(spec) -> Graph:
    return parse_graph_spec(spec)


def tube_json(g: Graph, mask: int) -> list[str]:
    return g.labels_of(mask)


def tubing_json(g: Graph, tubing) -> list[list[str]]:
    return [tube_json(g, t) for t in tubing]


def parse_tube(g: Graph, data) -> int:
    if isinstance(data, str):
        data = [s for s in data.split(",") if s]
    mask = g.mask_of(data)
    from .graphs import is_tube

    if not is_tube(g, mask):
        raise GraphError(f"{data} does not induce a connected subgraph")
    return mask


def parse_tubing(g: Graph, data, kind: str = "primal"):
    """Tubing from JSON; "auto" gives a deterministic maximal (design) tubing."""
    if kind in DESIGN_KINDS:
        if data == "auto":
            return all_squares_tubing(g)
        tubing = tuple(sorted(design_tube_from_json(g, item) for item in data))
        if not is_design_tubing(g, tubing):
            raise GraphError("design tubes are not pairwise compatible")
        return tubing
    if data == "auto":
        return maximal_tubings(g)[0]
    tubing = canonical(parse_tube(g, item) for item in data)
    if not is_tubing(g, tubing):
        raise GraphError("tubes are not pairwise compatible")
    return tubing


def enumerate_payload(g: Graph, what: str, size: Optional[int]) -> dict:
    items = enumerate_nested(g, what, size)
    if what == "tubes":
        return {"count": len(items), "tubes": [tube_json(g, t) for t in items]}
    return {"count": len(items), "tubings": [tubing_json(g, t) for t in items]}


def degree_table(g: Graph) -> dict:
    ts = tubes_of(g)
    names = [",".join(tube_json(g, t)) for t in ts]
    matrix = [[degree(g, t, u) for u in ts] for t in ts]
    return {"tubes": names, "matrix": matrix}


def degree_table_tsv(g: Graph) -> str:
    data = degree_table(g)
    lines = ["\t".join([""] + data["tubes"])]
    for name, row in zip(data["tubes"], data["matrix"]):
        lines.append("\t".join([name] + [str(v) for v in row]))
    return "\n".join(lines)


def make_fan(g: Graph, initial, kind: str) -> Fan:
    if kind == "nested":
        return build_nested_fan(g)
    return build_fan(g, parse_tubing(g, initial, kind), kind)


def fan_payload(g: Graph, initial, kind: str) -> dict:
    return fan_to_json(make_fan(g, initial, kind))


def check_fan_payload(g: Graph, initial, kind: str) -> dict:
    fan = make_fan(g, initial, kind)
    report = verify_fan(fan)
    return report_to_json(report, fan)


def dependence_payload(g: Graph, initial, kind: str, tubing, tube) -> dict:
    fan = make_fan(g, initial, kind)
    cone = parse_tubing(g, tubing, kind)
    t = (
        design_tube_from_json(g, tube)
        if kind in DESIGN_KINDS
        else parse_tube(g, tube)
    )
    dep = flip_dependence(fan, cone, t)
    return {
        "coefficients": {
            key_label(fan, k): c for k, c in dep.as_dict().items()
        },
        "pivot": key_label(fan, dep.pivot),
        "pivot_zero": dep.pivot_zero,
        "local": dep.local,
    }


def _frac_json(x: Fraction):
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def polytope_payload(g: Graph, initial, kind: str, weights: str) -> dict:
    fan = make_fan(g, initial, kind)
    report = verify_fan(fan)
    if not report.ok:
        raise GraphError("fan verification failed; no polytope is attached")
    if weights == "lp":
        w = find_weights_lp(fan)
        if w is None:
            return {"status": "lp_infeasible", "fan_ok": True}
    elif weights == "heights":
        w = path_cycle_weights(g, fan.provenance.initial, kind)
    else:
        raise GraphError(f"unknown weight scheme {weights!r}")
    poly = realize_polytope(fan, w)
    ok = verify_normal_fan(poly, fan)
    return {
        "status": "ok" if ok else "normal_fan_mismatch",
        "weights": {key_label(fan, k): _frac_json(Fraction(v)) for k, v in w.items()},
        "h_rep": [
            {
                "normal": [_frac_json(Fraction(x)) for x in normal],
                "offset": _frac_json(offset),
                "tube": key_label(fan, key),
            }
            for key, normal, offset in poly.facets
        ],
        "v_rep": [
            {
                "point": [_frac_json(x) for x in point],
                "tubing": sorted(key_label(fan, k) for k in tag),
            }
            for point, tag in poly.vertices
        ],
    }


def hrep_text(payload: dict) -> str:
    lines = []
    for facet in payload["h_rep"]:
        lines.append(
            " ".join(str(x) for x in facet["normal"]) + " <= " + str(facet["offset"])
        )
    return "\n".join(lines)


def vrep_text(payload: dict) -> str:
    return "\n".join(
        " ".join(str(x) for x in v["point"]) for v in payload["v_rep"]
    )


def star_polytope_payload(n: int) -> dict:
    from .polytopes import star_fan

    poly = star_polytope(n)
    fan = star_fan(n)
    g = fan.provenance.graph
    return {
        "status": "ok" if verify_normal_fan(poly, fan) else "normal_fan_mismatch",
        "h_rep": [
            {
                "normal": [int(x) for x in normal],
                "offset": _frac_json(offset),
                "tube": ",".join(g.labels_of(key)),
            }
            for key, normal, offset in poly.facets
        ],
        "v_rep": [
            {
                "point": [_frac_json(x) for x in point],
                "tubing": sorted(",".join(g.labels_of(k)) for k in tag),
            }
            for point, tag in poly.vertices
        ],
    }


def counts_payload(g: Graph, family: Optional[str] = None) -> dict:
    brute = brute_counts(g)
    out = {"brute": brute}
    if family in ("path", "cycle", "star"):
        n = g.m - 1 if family != "star" else g.m - 1
        closed = closed_form_counts(family, n)
        out["closed_form"] = closed
        out["match"] = (
            brute["proper_tubes"] == closed["proper_tubes"]
            and brute["maximal_tubings"] == closed["maximal_tubings"]
            and brute["k_tubings"] == closed["k_tubings"]
        )
    elif family == "complete":
        out["complete_report"] = complete_count_report(g.m - 1)
        out["match"] = False
        out["note"] = (
            "closed formulas for the complete graph do not match its brute "
            "counts at this index; see complete_report"
        )
    return out


def model_payload(family: str, n: int) -> dict:
    from .graphs import make_family

    if family == "path":
        g = make_family("path", [n + 1])
        return {
            "rows": [
                {"diagonal": list(d), "tube": tube_json(g, polygon_tube(n, d))}
                for d in polygon_diagonals(n)
            ]
        }
    if family == "cycle":
        g = make_family("cycle", [n + 1])
        return {
            "rows": [
                {
                    "diagonals": [list(d) for d in pair],
                    "tube": tube_json(g, cycle_tube(n, pair)),
                }
                for pair in cycle_pairs(n)
            ]
        }
    if family == "complete":
        g = make_family("complete", [n + 1])
        return {
            "rows": [
                {
                    "tube": tube_json(g, t),
                    "phi": complete_lattice_path(n, t, "phi"),
                    "psi": complete_lattice_path(n, t, "psi"),
                }
                for t in tubes_of(g)
            ]
        }
    raise GraphError(f"no combinatorial model for family {family!r}")


def orbits_payload(g: Graph) -> dict:
    out = {
        "automorphisms": len(graph_automorphisms(g)),
        "maximal_tubings": len(maximal_tubings(g)),
        "orbit_count": tubing_orbit_count(g),
        "fan_classes": fan_class_count(g),
    }
    if is_path_graph(g):
        from .isos import path_dihedral_class_count

        out["path_dihedral_classes"] = path_dihedral_class_count(g)
    return out


def omega_payload(g: Graph, mapping: str, power: int, tubing=None, tube=None) -> dict:
    def apply_one(t: int) -> int:
        if mapping == "omega":
            return spider_omega(g, t)
        if mapping == "rot":
            return path_rotation(g.m - 1, power, t, g)
        raise GraphError(f"unknown map {mapping!r}")

    if tube is not None:
        t = parse_tube(g, tube)
        return {"tube": tube_json(g, apply_one(t))}
    ts = [parse_tube(g, item) for item in tubing]
    return {"tubing": tubing_json(g, canonical(apply_one(t) for t in ts))}


def conjecture_scan(
    vertices: int,
    samples: int,
    seed: int,
    kinds=("primal", "dual"),
) -> dict:
    """Random (graph, initial tubing) polytopality probes: LP feasibility of
    the weight system for each compatibility fan.  An infeasible LP on a
    verified fan would be a finding worth reporting, not a failure."""
    rng = random.Random(seed)
    rows = []
    invalid = 0
    infeasible = 0
    from .graphs import connected_components, graph_from_edges

    labels = [str(i + 1) for i in range(vertices)]
    done = 0
    while done < samples:
        edges = [
            (labels[i], labels[j])
            for i in range(vertices)
            for j in range(i + 1, vertices)
            if rng.random() < 0.5
        ]
        g = graph_from_edges(labels, edges)
        if len(connected_components(g)) != 1:
            continue
        done += 1
        init = random_maximal_tubing(g, rng)
        for kind in kinds:
            fan = build_fan(g, init, kind)
            report = verify_fan(fan)
            if not report.ok:
                invalid += 1
                status = "fan_invalid"
            else:
                w = find_weights_lp(fan)
                status = "feasible" if w is not None else "lp_infeasible"
                if w is None:
                    infeasible += 1
            rows.append(
                {
                    "edges": [list(e) for e in g.edges()],
                    "initial": tubing_json(g, init),
                    "kind": kind,
                    "status": status,
                }
            )
    return {
        "samples": len(rows),
        "fan_invalid": invalid,
        "lp_infeasible": infeasible,
        "rows": rows,
    }

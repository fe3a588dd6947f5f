"""Command-line front end.

A thin client over the library: every subcommand parses its inputs, calls
one orchestration helper, and prints JSON (or a small text table).  Exit
codes: 0 on success, 1 when a verification fails, 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import ops
from .graphs import EnumerationGuardError, GraphError
from .projection import PlotSpec, ProjectionError, fan_to_svg

USAGE_ERROR = 2
VERIFY_ERROR = 1


def _read_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _initial_arg(value: str):
    return "auto" if value == "auto" else _read_json(value)


def _emit(data, out: str | None = None):
    text = data if isinstance(data, str) else json.dumps(data, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nestfan",
        description="compatibility fans of graphical nested complexes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_graph(p):
        p.add_argument(
            "--graph",
            required=True,
            help="family shorthand like path:5 or a graph JSON file/string",
        )

    p = sub.add_parser("tubes", help="list the proper tubes")
    add_graph(p)
    p.add_argument("--size", type=int)

    p = sub.add_parser("tubings", help="list tubings")
    add_graph(p)
    p.add_argument("--size", type=int)
    p.add_argument("--maximal", action="store_true")

    p = sub.add_parser("degree", help="full compatibility degree table (TSV)")
    add_graph(p)

    for name in ("fan", "check-fan"):
        p = sub.add_parser(name, help=f"{name.replace('-', ' ')} for a graph")
        add_graph(p)
        p.add_argument("--initial", default="auto", help="tubing JSON file or 'auto'")
        p.add_argument(
            "--kind",
            default="primal",
            choices=["primal", "dual", "design_primal", "design_dual", "nested"],
        )
        p.add_argument("--out")

    p = sub.add_parser("dependence", help="flip dependence inside a fan")
    add_graph(p)
    p.add_argument("--initial", default="auto")
    p.add_argument("--kind", default="primal")
    p.add_argument("--tubing", required=True, help="tubing JSON file")
    p.add_argument("--tube", required=True, help="comma-separated vertex labels")

    p = sub.add_parser("polytope", help="realize a fan as a polytope")
    add_graph(p)
    p.add_argument("--initial", default="auto")
    p.add_argument(
        "--kind",
        default="primal",
        choices=["primal", "dual", "design_primal", "design_dual", "nested"],
    )
    p.add_argument("--weights", default="lp", choices=["lp", "heights"])
    p.add_argument("--format", default="json", choices=["json", "hrep", "vrep"])
    p.add_argument("--out")

    p = sub.add_parser("count", help="brute-force vs closed-form counts")
    add_graph(p)
    p.add_argument(
        "--family", choices=["path", "cycle", "star", "complete"], default=None
    )

    p = sub.add_parser("model", help="combinatorial model tables")
    p.add_argument("--family", required=True, choices=["path", "cycle", "complete"])
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("orbits", help="tubing orbit counts under automorphisms")
    add_graph(p)

    p = sub.add_parser("omega", help="apply the involution or the rotation")
    add_graph(p)
    p.add_argument("--map", dest="mapping", default="omega", choices=["omega", "rot"])
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--tubing", help="tubing JSON file")
    p.add_argument("--tube", help="comma-separated vertex labels")

    p = sub.add_parser("plot", help="stereographic SVG of a 3-dimensional fan")
    add_graph(p)
    p.add_argument("--initial", default="auto")
    p.add_argument("--kind", default="primal")
    p.add_argument("--out", required=True)
    p.add_argument("--no-labels", action="store_true")
    p.add_argument("--pole", default=None, help="x,y,z direction")

    p = sub.add_parser(
        "conjecture-scan",
        help="probe polytopality of random compatibility fans by exact LP",
    )
    p.add_argument("--vertices", type=int, default=5)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0

    try:
        return _dispatch(args)
    except (GraphError, ProjectionError, EnumerationGuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def _dispatch(args) -> int:
    cmd = args.command

    if cmd == "tubes":
        g = ops.load_graph(args.graph)
        _emit(ops.enumerate_payload(g, "tubes", args.size))
        return 0

    if cmd == "tubings":
        g = ops.load_graph(args.graph)
        what = "maximal_tubings" if args.maximal else "tubings"
        _emit(ops.enumerate_payload(g, what, args.size))
        return 0

    if cmd == "degree":
        g = ops.load_graph(args.graph)
        print(ops.degree_table_tsv(g))
        return 0

    if cmd == "fan":
        g = ops.load_graph(args.graph)
        _emit(ops.fan_payload(g, _initial_arg(args.initial), args.kind), args.out)
        return 0

    if cmd == "check-fan":
        g = ops.load_graph(args.graph)
        payload = ops.check_fan_payload(g, _initial_arg(args.initial), args.kind)
        _emit(payload, args.out)
        return 0 if payload["ok"] else VERIFY_ERROR

    if cmd == "dependence":
        g = ops.load_graph(args.graph)
        _emit(
            ops.dependence_payload(
                g,
                _initial_arg(args.initial),
                args.kind,
                _read_json(args.tubing),
                args.tube,
            )
        )
        return 0

    if cmd == "polytope":
        g = ops.load_graph(args.graph)
        payload = ops.polytope_payload(
            g, _initial_arg(args.initial), args.kind, args.weights
        )
        if payload.get("status") == "lp_infeasible":
            _emit(payload, args.out)
            print(
                "note: the fan verified but the weight LP is infeasible; "
                "this is a reportable finding",
                file=sys.stderr,
            )
            return 0
        if args.format == "hrep":
            _emit(ops.hrep_text(payload), args.out)
        elif args.format == "vrep":
            _emit(ops.vrep_text(payload), args.out)
        else:
            _emit(payload, args.out)
        return 0 if payload["status"] == "ok" else VERIFY_ERROR

    if cmd == "count":
        g = ops.load_graph(args.graph)
        family = args.family
        if family is None and args.graph.partition(":")[0] in (
            "path",
            "cycle",
            "star",
            "complete",
        ):
            family = args.graph.partition(":")[0]
        _emit(ops.counts_payload(g, family))
        return 0

    if cmd == "model":
        _emit(ops.model_payload(args.family, args.n))
        return 0

    if cmd == "orbits":
        g = ops.load_graph(args.graph)
        _emit(ops.orbits_payload(g))
        return 0

    if cmd == "omega":
        g = ops.load_graph(args.graph)
        if (args.tubing is None) == (args.tube is None):
            raise GraphError("pass exactly one of --tubing or --tube")
        tubing = _read_json(args.tubing) if args.tubing else None
        _emit(ops.omega_payload(g, args.mapping, args.power, tubing, args.tube))
        return 0

    if cmd == "plot":
        g = ops.load_graph(args.graph)
        fan = ops.make_fan(g, _initial_arg(args.initial), args.kind)
        spec = PlotSpec(labels=not args.no_labels)
        if args.pole:
            spec = PlotSpec(
                pole=tuple(float(x) for x in args.pole.split(",")),
                labels=not args.no_labels,
            )
        _emit(fan_to_svg(fan, spec), args.out)
        return 0

    if cmd == "conjecture-scan":
        report = _scan(args)
        _emit(report)
        if report["lp_infeasible"]:
            print(
                f"FINDING: {report['lp_infeasible']} verified fans with an "
                "infeasible weight LP",
                file=sys.stderr,
            )
        return VERIFY_ERROR if report["fan_invalid"] else 0

    raise GraphError(f"unknown command {cmd!r}")  # pragma: no cover


def _scan(args) -> dict:
    if args.jobs <= 1:
        return ops.conjecture_scan(args.vertices, args.samples, args.seed)
    from concurrent.futures import ProcessPoolExecutor

    per = [args.samples // args.jobs] * args.jobs
    for i in range(args.samples % args.jobs):
        per[i] += 1
    with ProcessPoolExecutor(max_workers=args.jobs) as pool:
        parts = list(
            pool.map(
                _scan_chunk,
                [(args.vertices, cnt, args.seed + k) for k, cnt in enumerate(per)],
            )
        )
    out = {"samples": 0, "fan_invalid": 0, "lp_infeasible": 0, "rows": []}
    for part in parts:
        for key in ("samples", "fan_invalid", "lp_infeasible"):
            out[key] += part[key]
        out["rows"].extend(part["rows"])
    return out


def _scan_chunk(job):
    vertices, samples, seed = job
    return ops.conjecture_scan(vertices, samples, seed)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

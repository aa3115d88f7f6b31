"""Command-line front end.

One executable with a verb per task: validity checks, canonical forms,
invariant tables, blow-ups and blow-downs, moment-map projections, the
census, feasibility reports, exceptional-class enumeration, blow-down
chains, and capacity thresholds.  Inputs are JSON documents given inline
or as file paths; output is a table, JSON, or SVG on standard output.

Exit codes: 0 success, 1 malformed input or options, 2 a well-formed
request whose preconditions fail (the diagnostic is printed verbatim).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction as Q
from pathlib import Path

from . import census as cs
from . import circle_graph as cg
from . import homology as hm
from . import polygon as pg
from . import render
from .errors import FormatError, PreconditionError
from .rationals import format_rational, parse_rational

DEFAULT_SEARCH_CEILING = 512
MAX_THREADS = 64


def thread_budget() -> int:
    """Thread cap from TORUS_CENSUS_THREADS, clamped to [1, 64].

    All computations here are single-threaded; the budget is accepted
    and clamped so wrapper scripts can set it uniformly across tools.
    """
    raw = os.environ.get("TORUS_CENSUS_THREADS", "1")
    try:
        requested = int(raw)
    except ValueError:
        raise FormatError(f"TORUS_CENSUS_THREADS must be an integer, got {raw!r}")
    return max(1, min(MAX_THREADS, requested))


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise FormatError(message)


def _load_document(source: str) -> dict:
    text = source
    if not source.lstrip().startswith("{"):
        path = Path(source)
        if not path.is_file():
            raise FormatError(f"no such file: {source}")
        text = path.read_text(encoding="utf-8")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise FormatError("top-level JSON value must be an object")
    return payload


def _parse_xi(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise FormatError(f"direction must be two integers a,b, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise FormatError(f"direction must be two integers a,b, got {text!r}") from exc


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _emit_json(payload: dict) -> None:
    _emit(json.dumps(payload, indent=2, sort_keys=True))


def _polygon_arg(args: argparse.Namespace) -> pg.RationalPolygon | None:
    if args.polygon is None:
        return None
    return pg.polygon_from_json(_load_document(args.polygon))


def _graph_arg(args: argparse.Namespace) -> cg.S1Graph | None:
    if args.graph is None:
        return None
    return cg.graph_from_json(_load_document(args.graph))


def _spec_arg(args: argparse.Namespace) -> cs.ManifoldSpec:
    if args.spec is None:
        raise FormatError("this verb needs --spec")
    return cs.spec_from_json(_load_document(args.spec))


def _one_subject(
    args: argparse.Namespace,
) -> pg.RationalPolygon | cg.S1Graph:
    polygon = _polygon_arg(args)
    graph = _graph_arg(args)
    if (polygon is None) == (graph is None):
        raise FormatError("give exactly one of --polygon or --graph")
    return polygon if polygon is not None else graph


def _emit_polygon(polygon: pg.RationalPolygon, fmt: str) -> None:
    if fmt == "json":
        _emit_json(pg.polygon_to_json(polygon))
    elif fmt == "svg":
        _emit(render.polygon_svg(polygon))
    else:
        _emit(render.polygon_table(polygon))


def _emit_graph(graph: cg.S1Graph, fmt: str) -> None:
    if fmt == "json":
        _emit_json(cg.graph_to_json(graph))
    elif fmt == "svg":
        _emit(render.graph_svg(graph))
    else:
        _emit(render.graph_text(graph))


def _require_not_svg(fmt: str, verb: str) -> None:
    if fmt == "svg":
        raise FormatError(f"--format svg is not available for {verb}")


# ---------------------------------------------------------------------------
# Verbs


def _run_check(args: argparse.Namespace) -> None:
    _require_not_svg(args.format, "check")
    subject = _one_subject(args)
    if isinstance(subject, pg.RationalPolygon):
        ok, diagnostics = pg.is_delzant(subject)
        label = "delzant"
    else:
        ok, diagnostics = cg.validate(subject)
        label = "valid circle-action graph"
    if args.format == "json":
        _emit_json({"ok": ok, "diagnostics": list(diagnostics)})
    else:
        _emit(render.check_table(ok, diagnostics, label))


def _run_canon(args: argparse.Namespace) -> None:
    subject = _one_subject(args)
    if isinstance(subject, pg.RationalPolygon):
        canonical, _ = pg.canonical_form(subject)
        _emit_polygon(canonical, args.format)
    else:
        _emit_graph(cg.canonical_form(subject), args.format)


def _run_invariants(args: argparse.Namespace) -> None:
    _require_not_svg(args.format, "invariants")
    subject = _one_subject(args)
    if isinstance(subject, pg.RationalPolygon):
        inv = pg.invariants(subject)
        if args.format == "json":
            _emit_json(
                {
                    "edge_count": inv.edge_count,
                    "b2": inv.b2,
                    "euclidean_area": format_rational(inv.euclidean_area),
                    "anticanonical_perimeter": format_rational(inv.perimeter),
                    "edge_areas": [format_rational(a) for a in inv.edge_areas],
                    "self_intersections": [
                        pg.self_intersection(subject, i)
                        for i in range(inv.edge_count)
                    ],
                }
            )
        else:
            _emit(render.polygon_table(subject))
    else:
        graph = subject
        cg._require_valid(graph)
        if args.format == "json":
            _emit_json(
                {
                    "components": len(graph.vertices),
                    "edges": len(graph.edges),
                    "min_moment": format_rational(graph.min_moment),
                    "max_moment": format_rational(graph.max_moment),
                    "extends_to_toric": cg.extends_to_toric(graph),
                }
            )
        else:
            _emit(render.graph_invariants_table(graph))


def _run_blowup(args: argparse.Namespace) -> None:
    if args.delta is None:
        raise FormatError("blowup needs --delta")
    delta = parse_rational(args.delta)
    subject = _one_subject(args)
    if args.vertex is None:
        raise FormatError("blowup needs --vertex")
    if isinstance(subject, pg.RationalPolygon):
        _emit_polygon(pg.blow_up(subject, args.vertex, delta), args.format)
    else:
        _emit_graph(cg.blow_up(subject, args.vertex, delta), args.format)


def _run_blowdown(args: argparse.Namespace) -> None:
    polygon = _polygon_arg(args)
    if polygon is None:
        raise FormatError("blowdown needs --polygon")
    if args.edge is None:
        raise FormatError("blowdown needs --edge")
    _emit_polygon(pg.blow_down(polygon, args.edge), args.format)


def _run_project(args: argparse.Namespace) -> None:
    polygon = _polygon_arg(args)
    if polygon is None:
        raise FormatError("project needs --polygon")
    if args.xi is None:
        raise FormatError("project needs --xi")
    _emit_graph(cg.graph_from_polygon(polygon, _parse_xi(args.xi)), args.format)


def _census_json(result: cs.CensusResult) -> dict:
    toric_prov = [
        {
            "base": pg.polygon_to_json(p.base),
            "steps": [
                {"delta": format_rational(s.delta), "site": s.site}
                for s in p.steps
            ],
        }
        for p in result.toric_provenance
    ]
    circle_prov = []
    for p in result.circle_provenance:
        entry: dict = {"origin": p.origin, "stage": p.stage}
        if p.degree is not None:
            entry["degree"] = p.degree
        if p.polygon is not None:
            entry["polygon"] = pg.polygon_to_json(p.polygon)
        if p.xi is not None:
            entry["xi"] = list(p.xi)
        entry["steps"] = [
            {"delta": format_rational(s.delta), "site": s.site} for s in p.steps
        ]
        circle_prov.append(entry)
    return {
        "spec": cs.spec_to_json(result.spec),
        "counts": {
            "toric": result.counts.toric_count,
            "maximal_circles": result.counts.maximal_circle_count,
            "total_maximal_tori": result.counts.total_maximal_tori,
        },
        "toric": [pg.polygon_to_json(p) for p in result.toric],
        "maximal_circles": [cg.graph_to_json(g) for g in result.maximal_circles],
        "toric_provenance": toric_prov,
        "circle_provenance": circle_prov,
        "warnings": list(result.warnings),
    }


def _run_census(args: argparse.Namespace) -> None:
    _require_not_svg(args.format, "census")
    result = cs.run_census(_spec_arg(args))
    if args.format == "json":
        _emit_json(_census_json(result))
    else:
        _emit(render.census_table(result))


def _feasibility_spec(args: argparse.Namespace) -> cs.ManifoldSpec:
    if args.spec is not None:
        return _spec_arg(args)
    if args.k is None or args.delta is None:
        raise FormatError("feasibility needs --spec, or --k and --delta")
    delta = parse_rational(args.delta)
    lam = parse_rational(args.lam)
    if args.k < 0:
        raise FormatError("blow-up count must be nonnegative")
    return cs.ManifoldSpec(
        base=cs.CP2, base_area=lam, capacities=(delta,) * args.k
    )


def _run_feasibility(args: argparse.Namespace) -> None:
    _require_not_svg(args.format, "feasibility")
    report = cs.feasibility_report(_feasibility_spec(args))
    if args.format == "json":
        _emit_json(
            {
                "blowups": report.blowups,
                "delta": format_rational(report.delta),
                "toric_formula": report.toric_formula,
                "circle_formula": report.circle_formula,
                "toric_nonempty": report.toric_nonempty,
                "maximal_circle_nonempty": report.maximal_circle_nonempty,
                "any_circle_nonempty": report.any_circle_nonempty,
                "toric_agrees": report.toric_agrees,
                "circle_agrees_existence": report.circle_agrees_existence,
                "circle_agrees_maximal": report.circle_agrees_maximal,
                "warnings": list(report.warnings),
            }
        )
    else:
        _emit(render.feasibility_table(report))


def _run_exceptional(args: argparse.Namespace) -> None:
    _require_not_svg(args.format, "exceptional")
    omega = cs.spec_to_symplectic(_spec_arg(args))
    minimal = hm.minimal_exceptional_classes(omega)
    bound = minimal.epsilon if args.bound is None else parse_rational(args.bound)
    candidates = hm.enumerate_exceptional_candidates(
        omega, bound, search_ceiling=args.ceiling
    )
    if args.format == "json":
        _emit_json(
            {
                "epsilon": format_rational(minimal.epsilon),
                "minimal_classes": [hm.class_to_json(c) for c in minimal.classes],
                "bound": format_rational(bound),
                "candidates": [
                    {
                        "class": hm.class_to_json(c),
                        "area": format_rational(hm.area(c, omega)),
                    }
                    for c in candidates
                ],
            }
        )
    else:
        _emit(render.exceptional_table(omega, minimal, bound, candidates))


def _chain_json(chain: hm.BlowdownChain) -> dict:
    return {
        "steps": [
            {
                "stage": step.stage,
                "class": hm.class_to_json(step.chosen),
                "area": format_rational(step.area),
            }
            for step in chain.steps
        ],
        "terminal": hm.symplectic_to_json(chain.terminal),
    }


def _run_chains(args: argparse.Namespace) -> None:
    _require_not_svg(args.format, "chains")
    omega = cs.spec_to_symplectic(_spec_arg(args))
    chains = hm.minimal_blowdown_chains(omega)
    canonical = hm.canonical_blowdown_chain(omega)
    if args.format == "json":
        _emit_json(
            {
                "count": len(chains),
                "chains": [_chain_json(c) for c in chains],
                "canonical": _chain_json(canonical),
            }
        )
    else:
        _emit(render.chains_table(chains, canonical))


def _run_threshold(args: argparse.Namespace) -> None:
    _require_not_svg(args.format, "threshold")
    omega = cs.spec_to_symplectic(_spec_arg(args))
    threshold = hm.min_capacity_threshold(omega)
    if args.format == "json":
        _emit_json(
            {
                "value": format_rational(threshold.value),
                "binding": [hm.class_to_json(c) for c in threshold.binding],
            }
        )
    else:
        _emit(render.threshold_table(threshold))


_HANDLERS = {
    "check": _run_check,
    "canon": _run_canon,
    "invariants": _run_invariants,
    "blowup": _run_blowup,
    "blowdown": _run_blowdown,
    "project": _run_project,
    "census": _run_census,
    "feasibility": _run_feasibility,
    "exceptional": _run_exceptional,
    "chains": _run_chains,
    "threshold": _run_threshold,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="torus-census",
        description=(
            "Exact-arithmetic censuses of toric and circle actions on "
            "blow-ups of rational and ruled symplectic four-manifolds."
        ),
        epilog=(
            "TORUS_CENSUS_THREADS caps worker threads (clamped to 1..64); "
            "the current engine runs every verb on a single thread."
        ),
    )
    subparsers = parser.add_subparsers(dest="verb", metavar="verb")
    subparsers.required = True

    def add(verb: str, help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(verb, help=help_text)
        sub.add_argument(
            "--format",
            choices=("table", "json", "svg"),
            default="table",
            help="output format (svg only for polygon or graph output)",
        )
        return sub

    for verb in ("check", "canon", "invariants"):
        sub = add(verb, f"{verb} a polygon or circle-action graph")
        sub.add_argument("--polygon", help="polygon JSON, inline or a file path")
        sub.add_argument("--graph", help="graph JSON, inline or a file path")

    sub = add("blowup", "equivariant blow-up at a vertex or fixed component")
    sub.add_argument("--polygon", help="polygon JSON, inline or a file path")
    sub.add_argument("--graph", help="graph JSON, inline or a file path")
    sub.add_argument("--vertex", type=int, help="vertex index or component id")
    sub.add_argument("--delta", help="blow-up capacity, a positive rational")

    sub = add("blowdown", "blow down an exceptional polygon edge")
    sub.add_argument("--polygon", help="polygon JSON, inline or a file path")
    sub.add_argument("--edge", type=int, help="index of the edge to collapse")

    sub = add("project", "project a polygon to a circle-action graph")
    sub.add_argument("--polygon", help="polygon JSON, inline or a file path")
    sub.add_argument("--xi", help="primitive integer direction, as a,b")

    sub = add("census", "count maximal toric and circle actions for a recipe")
    sub.add_argument("--spec", help="manifold recipe JSON, inline or a file path")

    sub = add("feasibility", "compare closed-form tests with the census")
    sub.add_argument("--spec", help="manifold recipe JSON, inline or a file path")
    sub.add_argument("--k", type=int, help="number of equal-capacity blow-ups")
    sub.add_argument("--delta", help="common blow-up capacity")
    sub.add_argument(
        "--lambda",
        dest="lam",
        default="1",
        help="line area of the unblown base (default 1)",
    )

    for verb, help_text in (
        ("exceptional", "enumerate exceptional homology classes by area"),
        ("chains", "enumerate minimal blow-down chains to a model surface"),
        ("threshold", "least capacity at which some exceptional area ties"),
    ):
        sub = add(verb, help_text)
        sub.add_argument("--spec", help="manifold recipe JSON, inline or a file path")
        if verb == "exceptional":
            sub.add_argument("--bound", help="area bound (default: minimal area)")
            sub.add_argument(
                "--ceiling",
                type=int,
                default=DEFAULT_SEARCH_CEILING,
                help="safety cap on lattice search coefficients",
            )

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        thread_budget()
        _HANDLERS[args.verb](args)
    except FormatError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

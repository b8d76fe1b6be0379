"""Command-line surface: graph generation, the subdivision pipeline,
certificate verification, and gadget inspection.

Every command is deterministic under explicit flags and seeds: JSON output
uses fixed key order, reals are rounded to 9 decimal places, and seeds
have no wall-clock fallback.  Exit codes: 0 success with certificate or
structure, 1 structured failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Iterable, Sequence

from .assemble import Overrides, PipelineOutcome, RunConfig, top_level
from .certify import SubdivisionCertificate, verify_subdivision
from .drc import DrcParams, drc_select
from .expander import ExpansionProfile, verify_expander
from .gadgets import (
    Adjuster,
    Expansion,
    Hub,
    Unit,
    adjuster_length_menu,
    build_hub,
    build_simple_adjuster,
    build_unit,
    validate_adjuster,
    validate_hub,
    validate_unit,
)
from .connect import PathWitness
from .generators import (
    complete_graph,
    cycle_graph,
    from_edge_list,
    gnp,
    hypercube,
    incidence_plane,
    kdd,
    to_edge_list,
)
from .graph import Graph
from .outcomes import (
    BuildFailure,
    EmptyGraphError,
    InvalidArgumentError,
    TooLargeError,
    ValidationReport,
)


def _round9(x: float) -> float:
    return round(float(x), 9)


def _print_json(obj: Any) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _fail_usage(message: str) -> int:
    sys.stderr.write(f"error: {message}\n")
    return 2


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _read_graph(path: str) -> Graph:
    return from_edge_list(_read_text(path))


def _parse_avoid(raw: str | None) -> tuple[int, ...]:
    if not raw:
        return ()
    try:
        return tuple(int(part) for part in raw.split(",") if part != "")
    except ValueError as exc:
        raise InvalidArgumentError(f"bad avoid list {raw!r}") from exc


# -- serialization ------------------------------------------------------------


def _report_dict(report: ValidationReport) -> dict:
    return {
        "passed": report.passed,
        "clauses": [
            {"name": c.name, "passed": c.passed, "witness": c.witness}
            for c in report.clauses
        ],
    }


def _hub_dict(hub: Hub) -> dict:
    return {
        "kind": "hub",
        "center": hub.center,
        "first_layer": list(hub.first_layer),
        "second_layers": [[z, list(layer)] for z, layer in hub.second_layers],
    }


def _hub_from_dict(data: dict) -> Hub:
    try:
        return Hub(
            int(data["center"]),
            tuple(int(z) for z in data["first_layer"]),
            tuple(
                (int(z), tuple(int(s) for s in layer))
                for z, layer in data["second_layers"]
            ),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidArgumentError(f"malformed hub record: {exc}") from exc


def _unit_dict(unit: Unit) -> dict:
    return {
        "kind": "unit",
        "core": unit.core,
        "hubs": [_hub_dict(hub) for hub in unit.hubs],
        "spokes": [list(spoke.vertices) for spoke in unit.spokes],
        "spoke_cap": unit.spoke_cap,
        "exterior_size": len(unit.exterior()),
        "interior_size": len(unit.interior()),
    }


def _unit_from_dict(data: dict) -> Unit:
    try:
        return Unit(
            int(data["core"]),
            tuple(_hub_from_dict(h) for h in data["hubs"]),
            tuple(
                PathWitness(tuple(int(v) for v in spoke))
                for spoke in data["spokes"]
            ),
            int(data["spoke_cap"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidArgumentError(f"malformed unit record: {exc}") from exc


def _expansion_dict(f: Expansion) -> dict:
    return {
        "anchor": f.anchor,
        "vertices": sorted(f.vertices),
        "radius": f.radius,
    }


def _expansion_from_dict(data: dict) -> Expansion:
    try:
        return Expansion(
            int(data["anchor"]),
            frozenset(int(v) for v in data["vertices"]),
            int(data["radius"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidArgumentError(f"malformed expansion record: {exc}") from exc


def _adjuster_dict(adj: Adjuster, menu: Iterable[int]) -> dict:
    return {
        "kind": "adjuster",
        "core1": adj.core1,
        "core2": adj.core2,
        "end1": _expansion_dict(adj.end1),
        "end2": _expansion_dict(adj.end2),
        "center": sorted(adj.center),
        "base_length": adj.base_length,
        "steps": adj.steps,
        "m": adj.m,
        "menu": sorted(menu),
    }


def _adjuster_from_dict(data: dict) -> Adjuster:
    try:
        return Adjuster(
            int(data["core1"]),
            int(data["core2"]),
            _expansion_from_dict(data["end1"]),
            _expansion_from_dict(data["end2"]),
            frozenset(int(v) for v in data["center"]),
            int(data["base_length"]),
            int(data["steps"]),
            int(data["m"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidArgumentError(f"malformed adjuster record: {exc}") from exc


# -- commands ------------------------------------------------------------------


_FAMILY_ARITY = {
    "gnp": 2,
    "kdd": 2,
    "hypercube": 1,
    "cycle": 1,
    "incidence_plane": 1,
    "complete": 1,
}


def cmd_gen(args: argparse.Namespace) -> int:
    family = args.family.replace("-", "_")
    if family not in _FAMILY_ARITY:
        return _fail_usage(f"unknown family {args.family!r}")
    expected = _FAMILY_ARITY[family]
    if len(args.params) != expected:
        return _fail_usage(
            f"family {family} takes {expected} parameter(s), got {len(args.params)}"
        )
    try:
        if family == "gnp":
            if args.seed is None:
                return _fail_usage("gnp is randomized; --seed is required")
            g = gnp(int(args.params[0]), float(args.params[1]), args.seed)
        elif family == "kdd":
            g = kdd(int(args.params[0]), int(args.params[1]))
        elif family == "hypercube":
            g = hypercube(int(args.params[0]))
        elif family == "cycle":
            g = cycle_graph(int(args.params[0]))
        elif family == "incidence_plane":
            g = incidence_plane(int(args.params[0]))
        else:
            g = complete_graph(int(args.params[0]))
    except (InvalidArgumentError, ValueError) as exc:
        return _fail_usage(str(exc))
    sys.stdout.write(to_edge_list(g))
    return 0


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    overrides = Overrides(
        m=args.override_m,
        big_d=args.override_D,
        ell=args.override_ell,
        c=args.override_c,
        target_k=args.target_k,
        sparse_threshold=args.sparse_threshold,
        exhaustive_cap=args.exhaustive_cap,
        node_budget=args.node_budget,
    )
    return RunConfig(
        mode=args.mode,
        kappa_rule=args.kappa,
        epsilon1=args.epsilon1,
        epsilon2=args.epsilon2,
        seed=args.seed,
        overrides=overrides,
    )


def _outcome_failure_dict(outcome: PipelineOutcome) -> dict:
    failure = outcome.failure
    return {
        "kind": outcome.kind,
        "route": outcome.trace.route,
        "reason": failure.reason if failure is not None else "",
        "detail": failure.detail if failure is not None else "",
        "trace": list(outcome.trace.entries),
    }


def cmd_find(args: argparse.Namespace) -> int:
    try:
        g = _read_graph(args.graph)
    except (InvalidArgumentError, OSError) as exc:
        return _fail_usage(str(exc))
    try:
        cfg = _config_from_args(args)
    except InvalidArgumentError as exc:
        return _fail_usage(str(exc))
    outcome = top_level(g, cfg)
    if args.trace:
        for entry in outcome.trace.entries:
            sys.stderr.write(f"trace: {entry}\n")
    if outcome.certificate is not None and outcome.kind in (
        "certificate",
        "dense_fallback",
    ):
        report = verify_subdivision(g, outcome.certificate)
        if not report.passed:
            sys.stderr.write("error: emitted certificate failed verification\n")
            return 1
        _print_json(outcome.certificate.to_json_dict())
        return 0
    _print_json(_outcome_failure_dict(outcome))
    return 1


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        g = _read_graph(args.graph)
        payload = json.loads(_read_text(args.certificate))
        cert = SubdivisionCertificate.from_json_dict(payload)
    except (InvalidArgumentError, OSError, json.JSONDecodeError) as exc:
        return _fail_usage(str(exc))
    report = verify_subdivision(g, cert)
    for clause in report.clauses:
        status = "ok" if clause.passed else "FAIL"
        suffix = f" ({clause.witness})" if clause.witness else ""
        sys.stderr.write(f"{status}: {clause.name}{suffix}\n")
    return 0 if report.passed else 1


def cmd_expander(args: argparse.Namespace) -> int:
    try:
        g = _read_graph(args.graph)
        profile = ExpansionProfile(args.epsilon1, args.k)
        if args.mode == "sampled" and args.seed is None:
            return _fail_usage("sampled mode is randomized; --seed is required")
        verdict = verify_expander(
            g,
            profile,
            mode=args.mode,
            trials=args.trials,
            seed=args.seed if args.seed is not None else 0,
            cap=args.exhaustive_cap,
        )
    except (InvalidArgumentError, EmptyGraphError, TooLargeError, OSError) as exc:
        return _fail_usage(str(exc))
    _print_json(
        {
            "status": verdict.status,
            "sets_checked": verdict.sets_checked,
            "witness": sorted(verdict.witness) if verdict.witness else None,
            "flags": {
                "epsilon1": _round9(args.epsilon1),
                "k": _round9(args.k),
                "mode": args.mode,
                "trials": args.trials,
                "seed": args.seed,
                "exhaustive_cap": args.exhaustive_cap,
            },
        }
    )
    return 0 if verdict.status != "refuted" else 1


def _gadget_flags(args: argparse.Namespace) -> dict:
    flags = {
        "action": args.action,
        "gadget": args.kind,
        "avoid": sorted(_parse_avoid(args.avoid)),
        "c4": bool(args.c4),
    }
    for name in ("h0", "h1", "h2", "h3", "size", "m"):
        value = getattr(args, name, None)
        if value is not None:
            flags[name] = value
    return flags


def cmd_gadget(args: argparse.Namespace) -> int:
    path = args.graph if args.graph is not None else (args.input_path or "-")
    try:
        g = _read_graph(path)
        avoid = _parse_avoid(args.avoid)
    except (InvalidArgumentError, OSError) as exc:
        return _fail_usage(str(exc))
    flags = _gadget_flags(args)
    try:
        if args.action == "build":
            return _gadget_build(g, args, avoid, flags)
        return _gadget_check(g, args, flags)
    except (InvalidArgumentError, TooLargeError) as exc:
        return _fail_usage(str(exc))


def _gadget_build(
    g: Graph, args: argparse.Namespace, avoid: tuple[int, ...], flags: dict
) -> int:
    result: Any
    if args.kind == "hub":
        if args.h1 is None or args.h2 is None:
            return _fail_usage("hub build needs --h1 and --h2")
        result = build_hub(g, avoid, args.h1, args.h2, c4_mode=args.c4)
        if isinstance(result, Hub):
            body = _hub_dict(result)
            report = validate_hub(g, result)
        else:
            return _emit_build_failure(result, flags)
    elif args.kind == "unit":
        if None in (args.h0, args.h1, args.h2, args.h3):
            return _fail_usage("unit build needs --h0, --h1, --h2 and --h3")
        result = build_unit(g, avoid, args.h0, args.h1, args.h2, args.h3)
        if isinstance(result, Unit):
            body = _unit_dict(result)
            report = validate_unit(g, result)
        else:
            return _emit_build_failure(result, flags)
    elif args.kind == "adjuster":
        if args.size is None or args.m is None:
            return _fail_usage("adjuster build needs --size and --m")
        result = build_simple_adjuster(g, avoid, args.size, args.m, c4_mode=args.c4)
        if isinstance(result, Adjuster):
            menu = _resolved_menu(g, result)
            body = _adjuster_dict(result, menu)
            report = validate_adjuster(g, result)
        else:
            return _emit_build_failure(result, flags)
    else:
        return _fail_usage(f"unknown gadget kind {args.kind!r}")
    body["report"] = _report_dict(report)
    body["flags"] = flags
    _print_json(body)
    return 0 if report.passed else 1


def _resolved_menu(g: Graph, adj: Adjuster) -> tuple[int, ...]:
    """Realizable menu when the center is small enough to enumerate;
    otherwise the claimed arithmetic progression."""
    if len(adj.center) + 2 <= 24:
        realizable = adjuster_length_menu(g, adj)
        return tuple(sorted(set(adj.menu()) & realizable))
    return adj.menu()


def _emit_build_failure(failure: BuildFailure, flags: dict) -> int:
    _print_json(
        {
            "failure": failure.reason,
            "detail": failure.detail,
            "flags": flags,
        }
    )
    return 1


def _gadget_check(g: Graph, args: argparse.Namespace, flags: dict) -> int:
    if args.record is None:
        return _fail_usage("check needs --record FILE with the gadget JSON")
    try:
        data = json.loads(_read_text(args.record))
    except (OSError, json.JSONDecodeError) as exc:
        return _fail_usage(str(exc))
    if args.kind == "hub":
        report = validate_hub(g, _hub_from_dict(data))
    elif args.kind == "unit":
        report = validate_unit(g, _unit_from_dict(data))
    elif args.kind == "adjuster":
        report = validate_adjuster(g, _adjuster_from_dict(data))
    else:
        return _fail_usage(f"unknown gadget kind {args.kind!r}")
    body = _report_dict(report)
    body["flags"] = flags
    _print_json(body)
    return 0 if report.passed else 1


def cmd_drc(args: argparse.Namespace) -> int:
    try:
        g = _read_graph(args.graph)
    except (InvalidArgumentError, OSError) as exc:
        return _fail_usage(str(exc))
    if args.n1 is not None:
        if not 0 < args.n1 < g.n:
            return _fail_usage(f"--n1 must split 0..{g.n - 1}")
        side1 = frozenset(range(args.n1))
        side2 = frozenset(range(args.n1, g.n))
    else:
        coloring = g.two_coloring()
        if coloring is None:
            return _fail_usage("host is not bipartite; pass --n1 to split sides")
        side1 = frozenset(v for v in g.vertices() if coloring[v] == 0)
        side2 = frozenset(v for v in g.vertices() if coloring[v] == 1)
    flags = {
        "t": args.t,
        "r": args.r,
        "c": args.c,
        "a": args.a,
        "seed": args.seed,
        "n1": args.n1,
        "max_retries": args.max_retries,
    }
    try:
        params = DrcParams(args.t, args.r, args.c, args.a)
        result = drc_select(
            g, (side1, side2), params, args.seed, max_retries=args.max_retries
        )
    except (InvalidArgumentError, EmptyGraphError) as exc:
        return _fail_usage(str(exc))
    if isinstance(result, BuildFailure):
        _print_json(
            {"failure": result.reason, "detail": result.detail, "flags": flags}
        )
        return 1
    _print_json({"a0": sorted(result), "size": len(result), "flags": flags})
    return 0


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="balsub",
        description="Balanced clique subdivisions with machine-checkable "
        "certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="emit a graph family as an edge list")
    p_gen.add_argument(
        "family",
        help="gnp | kdd | hypercube | cycle | incidence_plane | complete",
    )
    p_gen.add_argument("params", nargs="*", help="family parameters")
    p_gen.add_argument("--seed", type=int, default=None)
    p_gen.set_defaults(func=cmd_gen)

    p_find = sub.add_parser("find", help="run the subdivision pipeline")
    p_find.add_argument("graph", nargs="?", default="-")
    p_find.add_argument("--mode", choices=("paper", "desk"), default="desk")
    p_find.add_argument("--epsilon1", type=float, default=1.0)
    p_find.add_argument("--epsilon2", type=float, default=None)
    p_find.add_argument("--kappa", choices=("sqrt", "linear"), default="sqrt")
    p_find.add_argument("--seed", type=int, default=0)
    p_find.add_argument("--override-m", type=int, default=None)
    p_find.add_argument("--override-ell", type=int, default=None)
    p_find.add_argument("--override-D", type=int, default=None)
    p_find.add_argument("--override-c", type=float, default=None)
    p_find.add_argument("--target-k", type=int, default=None)
    p_find.add_argument("--sparse-threshold", type=float, default=None)
    p_find.add_argument("--exhaustive-cap", type=int, default=None)
    p_find.add_argument("--node-budget", type=int, default=200_000)
    p_find.add_argument("--trace", action="store_true")
    p_find.set_defaults(func=cmd_find)

    p_verify = sub.add_parser("verify", help="check a certificate against a graph")
    p_verify.add_argument("graph")
    p_verify.add_argument("certificate")
    p_verify.set_defaults(func=cmd_verify)

    p_exp = sub.add_parser("expander", help="verify the expansion property")
    p_exp.add_argument("graph", nargs="?", default="-")
    p_exp.add_argument("--epsilon1", type=float, default=1.0)
    p_exp.add_argument("--k", type=float, required=True)
    p_exp.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p_exp.add_argument("--trials", type=int, default=200)
    p_exp.add_argument("--seed", type=int, default=None)
    p_exp.add_argument("--exhaustive-cap", type=int, default=22)
    p_exp.set_defaults(func=cmd_expander)

    p_gad = sub.add_parser("gadget", help="build or check a structural gadget")
    p_gad.add_argument("action", choices=("build", "check"))
    p_gad.add_argument("kind", choices=("hub", "unit", "adjuster"))
    p_gad.add_argument("graph", nargs="?", default=None)
    p_gad.add_argument(
        "--input",
        dest="input_path",
        default=None,
        help="graph file (alternative to the positional; default stdin)",
    )
    p_gad.add_argument("--h0", type=int, default=None)
    p_gad.add_argument("--h1", type=int, default=None)
    p_gad.add_argument("--h2", type=int, default=None)
    p_gad.add_argument("--h3", type=int, default=None)
    p_gad.add_argument("--size", type=int, default=None)
    p_gad.add_argument("--m", type=int, default=None)
    p_gad.add_argument("--avoid", type=str, default=None)
    p_gad.add_argument("--c4", action="store_true")
    p_gad.add_argument("--record", type=str, default=None)
    p_gad.set_defaults(func=cmd_gadget)

    p_drc = sub.add_parser(
        "drc", help="robust common-neighborhood selection on a bipartite host"
    )
    p_drc.add_argument("graph", nargs="?", default="-")
    p_drc.add_argument("--t", type=int, required=True)
    p_drc.add_argument("--r", type=int, required=True)
    p_drc.add_argument("--c", type=int, required=True)
    p_drc.add_argument("--a", type=int, required=True)
    p_drc.add_argument("--seed", type=int, required=True)
    p_drc.add_argument("--n1", type=int, default=None)
    p_drc.add_argument("--max-retries", type=int, default=64)
    p_drc.set_defaults(func=cmd_drc)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

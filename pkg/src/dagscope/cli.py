"""Command-line interface.

Exit codes: 0 success (for ``dsep``: separated), 1 d-connected, 2 usage
errors, 3 unreadable or unparseable input, 4 semantic errors (missing
roles, unknown variables, invalid queries).  Diagnostics go to stderr;
results go to stdout.  ``--json`` switches every command to a stable
JSON document described in the README.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import modelcode, render
from .errors import (
    CycleError,
    DagError,
    InvalidQuery,
    MissingRoles,
    ModelSyntaxError,
    MultipleRoles,
    NameCollision,
    OverlappingRoles,
    SelfLoopError,
    TooLarge,
    UndeclaredVariable,
    UnknownVariable,
)
from .graph import Dag
from .identification import (
    EffectKind,
    find_instruments,
    list_minimal_adjustment_sets,
)
from .implications import testable_implications
from .oracle import LinearSem, simulate
from .paths import classify_path, d_separated, enumerate_paths, is_path_open
from .transforms import correlation_graph, moral_graph

_PARSE_ERRORS = (ModelSyntaxError, UndeclaredVariable, NameCollision, CycleError, SelfLoopError)
_SEMANTIC_ERRORS = (
    MissingRoles,
    MultipleRoles,
    OverlappingRoles,
    InvalidQuery,
    UnknownVariable,
    TooLarge,
)


def _read_graph(path: str) -> Dag:
    if path == "-":
        return modelcode.parse(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as fh:
        return modelcode.parse(fh.read())


def _emit(payload: dict, as_json: bool, text_lines: list[str]) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _names_arg(raw: str | None) -> list[str]:
    if not raw:
        return []
    return [modelcode.decode_name(tok.strip()) for tok in raw.split(",") if tok.strip()]


def _fmt_set(names) -> str:
    if not names:
        return "{}"
    return ", ".join(modelcode.encode_name(n) for n in sorted(names))


def cmd_validate(args) -> int:
    g = _read_graph(args.file)
    _emit(
        {"command": "validate", "valid": True, "variables": len(g), "edges": len(g.edges)},
        args.json,
        [f"OK: {len(g)} variables, {len(g.edges)} edges"],
    )
    return 0


def cmd_paths(args) -> int:
    g = _read_graph(args.file)
    if not g.exposures or not g.outcomes:
        raise MissingRoles("paths needs an exposure and an outcome")
    z = frozenset(g.adjusted)
    rows = []
    for e in g.exposures:
        for o in g.outcomes:
            for path in enumerate_paths(g, [e], [o]):
                if len(rows) >= args.limit:
                    break
                rows.append(
                    {
                        "vertices": list(path.vertices),
                        "directions": [
                            "forward" if f else "backward" for f in path.forwards
                        ],
                        "class": classify_path(g, path).value,
                        "open": is_path_open(g, path, z),
                        "text": str(path),
                    }
                )
    lines = [
        "{}: {} {}".format(r["class"], r["text"], "open" if r["open"] else "closed")
        for r in rows
    ]
    _emit({"command": "paths", "paths": rows}, args.json, lines)
    return 0


def cmd_dsep(args) -> int:
    g = _read_graph(args.file)
    x, y, z = _names_arg(args.x), _names_arg(args.y), _names_arg(args.given)
    separated = d_separated(g, x, y, z)
    _emit(
        {"command": "dsep", "x": sorted(x), "y": sorted(y), "given": sorted(z), "separated": separated},
        args.json,
        ["d-separated" if separated else "d-connected"],
    )
    return 0 if separated else 1


def cmd_adjust(args) -> int:
    g = _read_graph(args.file)
    effect = EffectKind(args.effect)
    report = list_minimal_adjustment_sets(g, effect)
    payload = {
        "command": "adjust",
        "effect": effect.value,
        "feasible": report.feasible,
        "sets": [sorted(s) for s in report.sets],
    }
    if not report.feasible:
        _emit(payload, args.json, ["NO SUFFICIENT ADJUSTMENT SET"])
    else:
        _emit(payload, args.json, [_fmt_set(s) for s in report.sets])
    return 0


def cmd_instruments(args) -> int:
    g = _read_graph(args.file)
    found = find_instruments(g)
    lines = []
    for result in found:
        name = modelcode.encode_name(result.instrument)
        if result.conditioning_set:
            lines.append(f"{name} | {_fmt_set(result.conditioning_set)}")
        else:
            lines.append(name)
    payload = {
        "command": "instruments",
        "instruments": [
            {"instrument": r.instrument, "conditioningSet": sorted(r.conditioning_set)}
            for r in found
        ],
    }
    _emit(payload, args.json, lines)
    return 0


def cmd_implications(args) -> int:
    g = _read_graph(args.file)
    statements = testable_implications(g)
    lines = []
    for s in statements:
        head = f"{modelcode.encode_name(s.x)} _||_ {modelcode.encode_name(s.y)}"
        if s.conditioned:
            head += " | " + _fmt_set(s.conditioned)
        lines.append(head)
    payload = {
        "command": "implications",
        "implications": [
            {"x": s.x, "y": s.y, "given": sorted(s.conditioned)} for s in statements
        ],
    }
    _emit(payload, args.json, lines)
    return 0


def cmd_transform(args) -> int:
    g = _read_graph(args.file)
    if args.kind == "moral":
        derived = moral_graph(g, restrict_to_relevant=args.restrict)
    else:
        derived = correlation_graph(g)
    payload = {
        "command": "transform",
        "kind": args.kind,
        "vertices": list(derived.vertices),
        "lines": [list(pair) for pair in derived.sorted_lines()],
    }
    _emit(payload, args.json, [render.undirected_to_dot(derived).rstrip("\n")])
    return 0


def cmd_atomic(args) -> int:
    from .paths import atomic_direct_effects

    g = _read_graph(args.file)
    edges = sorted(atomic_direct_effects(g))
    lines = [
        f"{modelcode.encode_name(u)} -> {modelcode.encode_name(v)}" for u, v in edges
    ]
    _emit({"command": "atomic", "edges": [list(e) for e in edges]}, args.json, lines)
    return 0


def cmd_export(args) -> int:
    g = _read_graph(args.file)
    if args.format == "dot":
        content = render.to_dot(g)
    elif args.format == "svg":
        content = render.to_svg(g, style=args.style)
    else:
        content = json.dumps(render.dag_to_json(g), sort_keys=True) + "\n"
    if args.json:
        print(json.dumps({"command": "export", "format": args.format, "content": content}, sort_keys=True))
    else:
        sys.stdout.write(content)
    return 0


def cmd_simulate(args) -> int:
    g = _read_graph(args.file)
    sem = LinearSem.random(g, seed=args.seed)
    dataset = simulate(g, sem, args.n)
    if args.json:
        print(
            json.dumps(
                {
                    "command": "simulate",
                    "columns": list(dataset.columns),
                    "rows": dataset.data.tolist(),
                },
                sort_keys=True,
            )
        )
    else:
        print(",".join(dataset.columns))
        for row in dataset.data:
            print(",".join(repr(float(v)) for v in row))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    parser = argparse.ArgumentParser(prog="dagscope", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file", help="model code file, or - for stdin")
        p.set_defaults(handler=handler)
        return p

    add("validate", cmd_validate, "parse a model and report basic counts")
    p = add("paths", cmd_paths, "list exposure-outcome paths")
    p.add_argument("--limit", type=int, default=100, help="maximum number of paths")
    p = add("dsep", cmd_dsep, "test d-separation (exit 0 separated, 1 connected)")
    p.add_argument("--x", required=True, help="comma-separated first set")
    p.add_argument("--y", required=True, help="comma-separated second set")
    p.add_argument("--given", default="", help="comma-separated conditioning set")
    p = add("adjust", cmd_adjust, "list minimal sufficient adjustment sets")
    p.add_argument("--effect", choices=["total", "direct"], default="total")
    add("instruments", cmd_instruments, "list instrumental variables")
    add("implications", cmd_implications, "list testable independence statements")
    p = add("transform", cmd_transform, "derive the moral or correlation graph")
    p.add_argument("--kind", choices=["moral", "correlation"], required=True)
    p.add_argument("--restrict", action="store_true", help="reduce to relevant ancestors first")
    add("atomic", cmd_atomic, "list edges with no parallel directed route")
    p = add("export", cmd_export, "write the graph as dot, svg, or json")
    p.add_argument("--format", choices=["dot", "svg", "json"], default="dot")
    p.add_argument("--style", choices=["classic", "sem"], default="classic")
    p = add("simulate", cmd_simulate, "draw samples from a random linear model")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _PARSE_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except _SEMANTIC_ERRORS as err:
        print(f"error: {err}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())

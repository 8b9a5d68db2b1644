"""Command-line front door: verify, certify, bound, gen, search, sweep, export.

Every command prints a JSON run report to stdout (the sweep streams JSON
lines); diagnostics go to stderr.  Exit codes: 0 all requested properties
hold, 1 a property or verdict failed, 2 the input was unusable.  Identical
inputs produce byte-identical reports in single-worker mode.
"""

from __future__ import annotations

import argparse
import json
import sys

from .families import (
    FamilyFormatError,
    IntersectionSpec,
    NotOrderableError,
    OrderingWitness,
    SetFamily,
    bound_general,
    bound_ordered,
    check_ordered_indexing,
    gen_sharp_mixed,
    gen_sharp_no_apex,
    is_l_intersecting,
    load_family,
    make_ordered,
    save_family,
)
from .polycert import NotLIntersectingError, certify
from .search import (
    BoundViolationError,
    SearchCapError,
    build_graph,
    export_dimacs,
    max_ordered_family,
    sweep_verify,
)

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_INPUT = 2


def _emit(report: dict) -> None:
    print(json.dumps(report, indent=2))


def _diag(message: str) -> None:
    print(f"lintersect: {message}", file=sys.stderr)


def _parse_l(text: str) -> IntersectionSpec:
    values = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            values.append(int(tok))
        except ValueError:
            raise ValueError(f"intersection size {tok!r} is not an integer") from None
    if len(values) != len(set(values)):
        _diag(f"duplicate values in -L {text!r} ignored")
    if any(v < 0 for v in values):
        raise ValueError("intersection sizes must be non-negative")
    return IntersectionSpec.from_values(values)


def _load(path: str) -> SetFamily:
    return load_family(path)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_verify(args) -> int:
    family = _load(args.file)
    spec = _parse_l(args.L)
    check = is_l_intersecting(family, spec)
    given = check_ordered_indexing(family)
    outcome = {
        "l_intersecting": check.ok,
        "violation": None if check.ok else
            {"i": check.violation[0], "j": check.violation[1], "size": check.violation[2]},
        "ordered_as_given": isinstance(given, OrderingWitness),
        "given_order_failure": None if isinstance(given, OrderingWitness) else
            {"condition": given.condition, "index": given.index},
    }
    try:
        _, witness = make_ordered(family)
        outcome["orderable"] = True
        outcome["r"] = witness.r
        outcome["not_orderable_reason"] = None
    except NotOrderableError as e:
        outcome["orderable"] = False
        outcome["r"] = None
        outcome["not_orderable_reason"] = str(e)
    _emit({
        "command": "verify",
        "inputs": {"file": args.file, "l_values": list(spec.values),
                   "n": family.n, "m": len(family)},
        "outcome": outcome,
    })
    return EXIT_OK if check.ok and outcome["orderable"] else EXIT_PROPERTY


def _cmd_certify(args) -> int:
    family = _load(args.file)
    spec = _parse_l(args.L)
    inputs = {"file": args.file, "l_values": list(spec.values),
              "n": family.n, "m": len(family)}
    try:
        ordered, _ = make_ordered(family)
    except NotOrderableError as e:
        _emit({"command": "certify", "inputs": inputs,
               "outcome": {"error": "not-orderable", "reason": str(e)}})
        return EXIT_PROPERTY
    try:
        report = certify(ordered, spec)
    except NotLIntersectingError as e:
        _emit({"command": "certify", "inputs": inputs,
               "outcome": {"error": "not-l-intersecting", "reason": str(e)}})
        return EXIT_PROPERTY
    _emit({"command": "certify", "inputs": inputs,
           "outcome": report.to_json_dict(full=args.full)})
    return EXIT_OK if report.verdict else EXIT_PROPERTY


def _cmd_bound(args) -> int:
    which = {"fw": "general"}.get(args.which, args.which)
    outcome = {}
    if which in ("general", "both"):
        outcome["general"] = bound_general(args.n, args.s)
    if which in ("ordered", "both"):
        outcome["ordered"] = bound_ordered(args.n, args.s)
    _emit({"command": "bound",
           "inputs": {"n": args.n, "s": args.s, "which": which},
           "outcome": outcome})
    return EXIT_OK


def _cmd_gen(args) -> int:
    generator = gen_sharp_no_apex if args.kind == "no-apex" else gen_sharp_mixed
    family, spec = generator(args.n, args.s)
    outcome = {"kind": args.kind, "size": len(family),
               "l_values": list(spec.values)}
    if args.file:
        save_family(family, args.file)
        outcome["file"] = args.file
    else:
        outcome["family"] = {"n": family.n, "sets": family.to_element_lists()}
    _emit({"command": "gen",
           "inputs": {"kind": args.kind, "n": args.n, "s": args.s},
           "outcome": outcome})
    return EXIT_OK


def _cmd_search(args) -> int:
    spec = _parse_l(args.L)
    workers = 1 if args.deterministic else args.workers
    result = max_ordered_family(
        args.n, spec, max_card=args.max_card,
        node_budget=args.node_budget, workers=workers)
    if result.truncated:
        _diag("node budget exhausted; best_size is only a lower bound")
    _emit({"command": "search",
           "inputs": {"n": args.n, "l_values": list(spec.values),
                      "max_card": args.max_card, "workers": workers,
                      "node_budget": args.node_budget},
           "outcome": result.to_json_dict()})
    return EXIT_OK if result.bound_respected else EXIT_PROPERTY


def _cmd_sweep(args) -> int:
    sizes = sorted({int(tok) for tok in args.l_size.split(",") if tok.strip()})
    if any(size < 0 for size in sizes):
        raise ValueError("L sizes must be non-negative")
    workers = 1 if args.deterministic else args.workers
    try:
        report = sweep_verify(args.n, l_sizes=sizes,
                              node_budget=args.node_budget, workers=workers)
    except BoundViolationError as e:
        _diag(str(e))
        return EXIT_PROPERTY
    sys.stdout.write(report.to_jsonl())
    return EXIT_OK


def _cmd_export_dimacs(args) -> int:
    spec = _parse_l(args.L)
    graph = build_graph(args.n, spec, args.max_card)
    text = export_dimacs(graph)
    if args.file:
        with open(args.file, "w", encoding="utf-8") as fh:
            fh.write(text)
        _emit({"command": "export-dimacs",
               "inputs": {"n": args.n, "l_values": list(spec.values),
                          "max_card": args.max_card},
               "outcome": {"file": args.file,
                           "vertices": len(graph.vertices),
                           "edges": graph.edge_count()}})
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lintersect",
        description="Exact checks, certificates, and exhaustive search for "
                    "ordered L-intersecting set families.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_l(p):
        p.add_argument("-L", required=True, metavar="SIZES",
                       help="allowed intersection sizes, comma separated")

    def add_search_knobs(p):
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--node-budget", type=int, default=10 ** 8)
        p.add_argument("--deterministic", action="store_true",
                       help="force a single worker")

    p = sub.add_parser("verify", help="check L-intersecting and orderable")
    p.add_argument("--file", required=True)
    add_l(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("certify", help="build the polynomial certificate and rank-check it")
    p.add_argument("--file", required=True)
    add_l(p)
    p.add_argument("--full", action="store_true",
                   help="include the evaluation matrices in the report")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("bound", help="print the family-size bounds")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-s", type=int, required=True)
    p.add_argument("--which", choices=["general", "ordered", "both", "fw"],
                   default="both")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("gen", help="generate an extremal family meeting the bound")
    p.add_argument("--kind", choices=["no-apex", "mixed"], required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-s", type=int, required=True)
    p.add_argument("--file", help="write the family here instead of inlining it")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("search", help="exact maximum orderable family")
    p.add_argument("-n", type=int, required=True)
    add_l(p)
    p.add_argument("--max-card", type=int, default=None)
    add_search_knobs(p)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("sweep", help="verify the bound over all L of given sizes")
    p.add_argument("-n", type=int, required=True, help="largest ground-set size")
    p.add_argument("--l-size", required=True, metavar="SIZES",
                   help="sizes of L to sweep, comma separated")
    add_search_knobs(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("export-dimacs", help="write the compatibility graph")
    p.add_argument("-n", type=int, required=True)
    add_l(p)
    p.add_argument("--max-card", type=int, default=None)
    p.add_argument("--file")
    p.set_defaults(func=_cmd_export_dimacs)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FamilyFormatError, SearchCapError, ValueError, OSError) as e:
        _diag(str(e))
        return EXIT_INPUT


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()

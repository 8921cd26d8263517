"""Command-line front end.

Reads presentations and path-circular instances as JSON, runs the library
operations, and emits deterministic text, JSON, DOT, and figure files.

Exit codes: 0 success, 2 unparsable input, 3 violated precondition or size
limit (the witness goes to stderr), 4 failed internal verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .contraction import (
    contract_presentation,
    is_contraction_transversal,
    minimal_presenting_graph,
)
from .core import (
    MAX_GROUND,
    ParseError,
    PreconditionError,
    Presentation,
    SizeLimitError,
    TransversalMatroid,
    VerificationError,
)
from .cotransversal import alpha_table, is_cotransversal, maximal_presentation
from .pathcircular import (
    PathCircularInstance,
    SimpleGraph,
    bicircular,
    contract_path,
    delete_path,
    multipath,
    validate,
)

__all__ = ["main", "entrypoint"]


def _read_json(path: str) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from None


def _load_presentation(path: str) -> Presentation:
    return Presentation.from_json_dict(_read_json(path))


def _load_instance(path: str) -> PathCircularInstance:
    return PathCircularInstance.from_json_dict(_read_json(path))


def _parse_subset(matroid: TransversalMatroid, raw: str | None):
    if raw is None:
        return matroid.ground.full()
    labels = [part for part in raw.split(",") if part]
    return matroid.ground.subset(labels)


def _emit_graph_files(graph, dot: str | None, figure: str | None) -> None:
    if dot:
        Path(dot).write_text(graph.to_dot())
    if figure:
        from .figures import save_presenting_graph

        save_presenting_graph(graph, figure)


def _emit_instance_files(instance, dot: str | None, figure: str | None) -> None:
    if dot:
        Path(dot).write_text(instance.to_dot())
    if figure:
        from .figures import save_instance

        save_instance(instance, figure)


def _cmd_rank(args) -> int:
    matroid = TransversalMatroid(_load_presentation(args.input))
    print(matroid.rank(_parse_subset(matroid, args.subset)))
    return 0


def _cmd_dual_rank(args) -> int:
    matroid = TransversalMatroid(_load_presentation(args.input))
    print(matroid.dual_rank(_parse_subset(matroid, args.subset)))
    return 0


def _cmd_closure(args) -> int:
    matroid = TransversalMatroid(_load_presentation(args.input))
    closed = matroid.closure(_parse_subset(matroid, args.subset))
    print(json.dumps(list(closed)))
    return 0


def _cmd_maximal(args) -> int:
    matroid = TransversalMatroid(_load_presentation(args.input))
    print(maximal_presentation(matroid, args.max_ground).dumps())
    return 0


def _cmd_alpha(args) -> int:
    matroid = TransversalMatroid(_load_presentation(args.input))
    print(alpha_table(matroid, max_ground=args.max_ground).dumps())
    return 0


def _cmd_is_cotransversal(args) -> int:
    matroid = TransversalMatroid(_load_presentation(args.input))
    ok, witness = is_cotransversal(matroid, args.max_ground)
    if ok:
        print("COTRANSVERSAL")
    else:
        print(f"NOT COTRANSVERSAL (alpha is negative on {{{','.join(witness)}}})")
    return 0


def _cmd_contract_check(args) -> int:
    matroid = TransversalMatroid(_load_presentation(args.input))
    verdict = is_contraction_transversal(matroid, args.element, args.max_ground)
    if verdict.kind == "loop":
        print("TRANSVERSAL (pivot is a loop; contraction equals deletion)")
    elif verdict.kind == "coloop":
        print("TRANSVERSAL (pivot is a coloop; contraction equals deletion)")
    elif verdict.transversal:
        print("TRANSVERSAL (minimal presenting graph is a tree)")
    else:
        print("NOT TRANSVERSAL (minimal presenting graph has a cycle)")
    if verdict.graph is not None:
        _emit_graph_files(verdict.graph, args.dot, args.figure)
    elif args.dot or args.figure:
        print("no presenting graph for a degenerate pivot", file=sys.stderr)
    return 0


def _cmd_contract(args) -> int:
    matroid = TransversalMatroid(_load_presentation(args.input))
    result = contract_presentation(matroid, args.element, args.max_ground)
    print(result.dumps())
    print("VERIFIED")
    return 0


def _cmd_minimal_graph(args) -> int:
    matroid = TransversalMatroid(_load_presentation(args.input))
    graph = minimal_presenting_graph(matroid, args.element, args.max_ground)
    print(f"vertices: {list(graph.vertices)}")
    print(f"edges: {[list(e) for e in graph.sorted_edges()]}")
    print(f"tree: {graph.is_tree()}")
    _emit_graph_files(graph, args.dot, args.figure)
    return 0


def _cmd_pc_validate(args) -> int:
    instance = _load_instance(args.input)
    ok, violations = validate(instance)
    if ok:
        print("VALID")
    else:
        print("INVALID")
        for violation in violations:
            print(f"  {violation}")
    _emit_instance_files(instance, args.dot, args.figure)
    return 0


def _cmd_pc_build(args) -> int:
    if args.kind == "bicircular":
        if not args.input:
            raise PreconditionError("bicircular needs a graph JSON file")
        data = _read_json(args.input)
        if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
            raise ParseError('graph JSON needs "vertices" and "edges"')
        graph = SimpleGraph(data["vertices"], [tuple(e) for e in data["edges"]])
        instance = bicircular(graph)
    else:
        if args.cycle is None:
            raise PreconditionError("multipath needs --cycle N")
        intervals = []
        for raw in args.interval or []:
            try:
                a, b = raw.split(":")
                intervals.append((int(a), int(b)))
            except ValueError:
                raise ParseError(f"interval {raw!r} is not of the form A:B") from None
        instance = multipath(args.cycle, intervals)
    print(instance.dumps())
    _emit_instance_files(instance, args.dot, args.figure)
    return 0


def _cmd_pc_delete(args) -> int:
    instance = _load_instance(args.input)
    result = delete_path(instance, instance.index_of(args.element))
    print(result.dumps())
    _emit_instance_files(result, args.dot, args.figure)
    return 0


def _cmd_pc_contract(args) -> int:
    instance = _load_instance(args.input)
    result = contract_path(instance, instance.index_of(args.element), args.max_ground)
    print(result.dumps())
    _emit_instance_files(result, args.dot, args.figure)
    return 0


def _cmd_selftest(args) -> int:
    from .harness import selftest

    results = selftest(args.seed, args.cases)
    print(json.dumps([r.to_json_dict() for r in results], indent=2))
    return 0 if all(r.failures == 0 for r in results) else 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="transversal",
        description="Transversal matroid toolkit: contraction tests and path-circular minors.",
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    def command(name, handler, help_text, **kwargs):
        cmd = sub.add_parser(name, help=help_text)
        cmd.set_defaults(handler=handler)
        cmd.add_argument(
            "--max-ground",
            type=int,
            default=MAX_GROUND,
            help="ceiling for exhaustive subset sweeps",
        )
        if kwargs.get("input", True):
            cmd.add_argument("input", help="input JSON file")
        if kwargs.get("subset"):
            cmd.add_argument("--subset", help="comma-separated element labels (default: all)")
        if kwargs.get("element"):
            cmd.add_argument("--element", required=True, help="element label")
        if kwargs.get("graphical"):
            cmd.add_argument("--dot", help="write a DOT file here")
            cmd.add_argument("--figure", help="render a figure file here (png/pdf/svg)")
        return cmd

    command("rank", _cmd_rank, "rank of a subset", subset=True)
    command("dual-rank", _cmd_dual_rank, "rank of a subset in the dual", subset=True)
    command("closure", _cmd_closure, "closure of a subset", subset=True)
    command("maximal", _cmd_maximal, "maximal presentation")
    command("alpha", _cmd_alpha, "alpha table of the cyclic flats")
    command("is-cotransversal", _cmd_is_cotransversal, "alpha nonnegativity test")
    command(
        "contract-check",
        _cmd_contract_check,
        "decide whether contracting an element stays transversal",
        element=True,
        graphical=True,
    )
    command("contract", _cmd_contract, "synthesize a presentation of the contraction", element=True)
    command(
        "minimal-graph",
        _cmd_minimal_graph,
        "minimal presenting graph of a pivot element",
        element=True,
        graphical=True,
    )
    command("pc-validate", _cmd_pc_validate, "check the path-circular conditions", graphical=True)
    build = command(
        "pc-build",
        _cmd_pc_build,
        "construct a bicircular or multipath instance",
        input=False,
        graphical=True,
    )
    build.add_argument("kind", choices=["bicircular", "multipath"])
    build.add_argument("input", nargs="?", help="graph JSON file (bicircular)")
    build.add_argument("--cycle", type=int, help="cycle length (multipath)")
    build.add_argument(
        "--interval",
        action="append",
        help="cyclic arc A:B, may repeat (multipath)",
    )
    command("pc-delete", _cmd_pc_delete, "delete a path", element=True, graphical=True)
    command("pc-contract", _cmd_pc_contract, "contract a path", element=True, graphical=True)
    selftest_cmd = command("selftest", _cmd_selftest, "run the certification suites", input=False)
    selftest_cmd.add_argument("--seed", type=int, default=1)
    selftest_cmd.add_argument("--cases", type=int, default=100)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PreconditionError, SizeLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except VerificationError as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return 4


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

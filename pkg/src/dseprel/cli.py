"""Command-line front end.

Subcommands: ``query``, ``relations``, ``crosscheck`` and ``witness``.
Graph files use the edge-list format of :mod:`dseprel.graph`.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from .crosscheck import run_crosscheck
from .dsep import RELATION_NAMES, build_bundle
from .graph import Graph, GraphFormatError, parse_edge_list
from .moral import moral_relation
from .reachability import d_connected_reach
from .relation import Relation, VertexSubset
from .upath import (
    completeness_bound,
    exists_active_path_bounded,
    format_path,
    is_active,
    path_from_records,
    path_to_records,
)

EXIT_SEPARATED, EXIT_CONNECTED, EXIT_ERROR, EXIT_DISAGREE = 0, 1, 2, 3
METHODS = ("relational", "reachability", "enumeration")


class CliError(Exception):
    pass


@dataclass
class QueryReport:
    x: str
    y: str
    given: list[str]
    verdicts: dict[str, bool]  # True means separated
    witness: list[dict] | None
    agree: bool

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> QueryReport:
        return cls(**json.loads(text))

    def to_text(self, g: Graph | None = None) -> str:
        given = ", ".join(self.given) or "(none)"
        lines = [f"{self.x} vs {self.y} given {given}"]
        for method, sep in self.verdicts.items():
            lines.append(f"  {method}: {'separated' if sep else 'connected'}")
        if not self.agree:
            lines.append("  methods disagree")
        if self.witness is not None:
            if g is not None:
                lines.append("  witness: " + format_path(path_from_records(self.witness, g), g.names))
            else:
                lines.append(f"  witness: {self.witness}")
        return "\n".join(lines)


def load_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return parse_edge_list(text)
    except GraphFormatError as exc:
        raise CliError(f"{path}: {exc}") from exc


def parse_names(g: Graph, csv: str) -> VertexSubset:
    names = [s.strip() for s in csv.split(",") if s.strip()]
    return g.subset(names)


def vertex(g: Graph, name: str) -> int:
    try:
        return g.index(name)
    except KeyError as exc:
        raise CliError(f"unknown vertex {name!r}") from exc


def run_query(
    g: Graph,
    x: str,
    y: str,
    given: VertexSubset,
    methods: list[str],
    max_len: int | None = None,
) -> QueryReport:
    xi, yi = vertex(g, x), vertex(g, y)
    bundle = build_bundle(g, given)
    verdicts: dict[str, bool] = {}
    for method in methods:
        if method == "relational":
            verdicts[method] = bundle.separated(xi, yi)
        elif method == "reachability":
            verdicts[method] = not d_connected_reach(g, xi, yi, given)
        elif method == "enumeration":
            bound = completeness_bound(g) if max_len is None else max_len
            verdicts[method] = not exists_active_path_bounded(g, xi, yi, given, bound)
        else:
            raise CliError(f"unknown method {method!r}")
    path = bundle.witness(xi, yi)
    return QueryReport(
        x=x,
        y=y,
        given=g.subset_names(given),
        verdicts=verdicts,
        witness=None if path is None else path_to_records(path, g.names),
        agree=len(set(verdicts.values())) <= 1,
    )


def cmd_query(args: argparse.Namespace) -> int:
    g = load_graph(args.graph_file)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if not methods:
        raise CliError("no methods requested")
    for m in methods:
        if m not in METHODS:
            raise CliError(f"unknown method {m!r}; choose from {', '.join(METHODS)}")
    if args.max_len is not None and args.max_len < 0:
        raise CliError("--max-len must be non-negative")
    report = run_query(g, args.x, args.y, _given(g, args.given), methods, args.max_len)
    print(report.to_json() if args.json else report.to_text(g))
    if not report.agree:
        return EXIT_DISAGREE
    return EXIT_SEPARATED if report.witness is None else EXIT_CONNECTED


def relation_by_name(g: Graph, given: VertexSubset, which: str) -> Relation:
    if which == "moral":
        return moral_relation(g)
    return build_bundle(g, given).relation(which)


def format_matrix(rel: Relation, names: tuple[str, ...]) -> str:
    width = max(len(n) for n in names)
    rows = [" " * width + " " + " ".join(n.rjust(width) for n in names)]
    for i, name in enumerate(names):
        cells = " ".join(str(int(rel.matrix[i, j])).rjust(width) for j in range(len(names)))
        rows.append(f"{name.ljust(width)} {cells}")
    return "\n".join(rows)


def cmd_relations(args: argparse.Namespace) -> int:
    g = load_graph(args.graph_file)
    rel = relation_by_name(g, _given(g, args.given), args.which)
    if args.json:
        payload = {
            "relation": args.which,
            "vertices": list(g.names),
            "matrix": rel.matrix.astype(int).tolist(),
        }
        print(json.dumps(payload))
    else:
        print(format_matrix(rel, g.names))
    return 0


def cmd_crosscheck(args: argparse.Namespace) -> int:
    try:
        summary = run_crosscheck(
            args.vertices,
            args.edge_prob,
            args.trials,
            args.seed,
            max_vertices_exhaustive=args.max_vertices_exhaustive,
            enumeration=args.enumeration,
        )
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if args.json:
        print(json.dumps(summary.to_dict(), indent=2))
    else:
        sys.stdout.write(summary.to_text())
    return 0 if summary.disagreements == 0 else 1


def cmd_witness(args: argparse.Namespace) -> int:
    g = load_graph(args.graph_file)
    given = _given(g, args.given)
    path = build_bundle(g, given).witness(vertex(g, args.x), vertex(g, args.y))
    if path is None:
        print("separated")
        return EXIT_SEPARATED
    if not is_active(path, g, given):
        raise CliError("internal error: constructed witness is not active")
    print(format_path(path, g.names))
    return EXIT_CONNECTED


def _given(g: Graph, csv: str) -> VertexSubset:
    try:
        return parse_names(g, csv)
    except KeyError as exc:
        raise CliError(str(exc.args[0]) if exc.args else "unknown vertex") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dseprel", description="Conditional d-separation on directed graphs with cycles and loops."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("query", help="decide whether two vertices are d-separated")
    q.add_argument("graph_file")
    q.add_argument("--x", required=True)
    q.add_argument("--y", required=True)
    q.add_argument("--given", default="", help="comma-separated conditioning set")
    q.add_argument("--methods", default="relational,reachability", help=f"subset of {','.join(METHODS)}")
    q.add_argument("--max-len", type=int, default=None, help="path bound for enumeration (default 2|V|+2)")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_query)

    r = sub.add_parser("relations", help="print a derived relation as a 0/1 matrix")
    r.add_argument("graph_file")
    r.add_argument("--given", default="")
    r.add_argument("--which", required=True, choices=RELATION_NAMES + ("moral",))
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_relations)

    c = sub.add_parser("crosscheck", help="compare the decision procedures on random graphs")
    c.add_argument("--vertices", type=int, required=True)
    c.add_argument("--edge-prob", type=float, default=0.3)
    c.add_argument("--trials", type=int, required=True)
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--max-vertices-exhaustive", type=int, default=None)
    c.add_argument(
        "--enumeration",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="include bounded path enumeration (default: on for at most 6 vertices)",
    )
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_crosscheck)

    w = sub.add_parser("witness", help="print an active path between two vertices")
    w.add_argument("graph_file")
    w.add_argument("--x", required=True)
    w.add_argument("--y", required=True)
    w.add_argument("--given", default="")
    w.set_defaults(func=cmd_witness)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

    awgraph analyze  --family cycle --size 8 --vertex 0
    awgraph spectrum --family crown --size 5
    awgraph modules  --input graph.txt --format-in edgelist --vertex all
    awgraph qracah   --family hadamard --size 8 --q-branch all

Reports go to stdout, one JSON document per line (or a text rendering with
``--format text``). Diagnostics go to stderr. Exit codes: 0 success,
1 input error, 2 not distance-regular, 3 no Q-polynomial ordering,
4 not q-Racah, 5 non-thin module, 6 residual failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .errors import AWGraphError, GraphInputError
from .graph import FAMILIES, Graph, generate_family, load_graph
from .pipeline import STAGES, Config

__all__ = ["main", "build_parser", "render_text", "run"]


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; argparse's default code 2 is taken
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(GraphInputError.exit_code, f"{self.prog}: error: {message}\n")


def _vertex(text: str):
    if text == "all":
        return "all"
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a vertex index or 'all', got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("vertex index must be nonnegative")
    return v


def _positive(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not x > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="awgraph", description="Askey-Wilson structure of Q-polynomial distance-regular graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "spectrum": "distance data, eigenvalues, Krein parameters and Q-polynomial orderings",
        "qracah": "fit both eigenvalue sequences to the q-Racah form",
        "modules": "decompose the standard module into irreducible T-modules",
        "analyze": "full pipeline: build and certify the Askey-Wilson triple",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text, description=text)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--family", choices=FAMILIES)
        src.add_argument("--input", metavar="PATH", help="graph file, or '-' for stdin")
        p.add_argument("--size", type=int, help="family parameter (required with --family)")
        p.add_argument("--format-in", choices=("edgelist", "dense"), default="edgelist")
        p.add_argument("--vertex", type=_vertex, default=0, help="base vertex index or 'all' (default 0)")
        p.add_argument("--tol", type=_positive, default=None, help="relative tolerance (default 1e-8 or $AWGRAPH_TOL)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--q-branch", choices=("canonical", "all"), default="canonical")
    return parser


def _load(args) -> Graph:
    if args.family:
        if args.size is None:
            raise GraphInputError("--size is required with --family")
        try:
            return generate_family(args.family, args.size)
        except ValueError as exc:
            raise GraphInputError(str(exc)) from exc
    if args.input == "-":
        return load_graph(sys.stdin.read(), args.format_in, name="stdin")
    path = Path(args.input)
    try:
        text = path.read_text()
    except OSError as exc:
        raise GraphInputError(f"cannot read {path}: {exc.strerror}") from exc
    return load_graph(text, args.format_in, name=path.name)


def _fmt_value(v) -> str:
    if isinstance(v, dict) and set(v) == {"re", "im"}:
        re, im = v["re"], v["im"]
        if im == 0:
            return f"{re:.10g}"
        if re == 0:
            return f"{im:.10g}i"
        return f"{re:.10g}{im:+.10g}i"
    if isinstance(v, list):
        return "[" + ", ".join(_fmt_value(x) for x in v) + "]"
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def render_text(report: dict) -> str:
    """Human-readable rendering of one report; JSON stays the contract."""
    lines = []
    head = [f"{report.get('graph')}", f"n={report.get('n')}", f"D={report.get('D')}"]
    if report.get("vertex") is not None:
        head.append(f"vertex={report['vertex']}")
    if report.get("ordering") is not None:
        head.append(f"ordering={_fmt_value(report['ordering'])}")
    head.append(f"status={report.get('status')}")
    lines.append("  ".join(head))
    skip = {"graph", "n", "D", "vertex", "ordering", "status"}
    for key, val in report.items():
        if key in skip or val is None:
            continue
        if key in ("types", "modules") and isinstance(val, list):
            lines.append(f"  {key}:")
            for row in val:
                lines.append("    " + "  ".join(f"{k}={_fmt_value(x)}" for k, x in row.items()))
        elif isinstance(val, dict) and not {"re", "im"} <= set(val):
            lines.append(f"  {key}: " + "  ".join(f"{k}={_fmt_value(x)}" for k, x in val.items()))
        else:
            lines.append(f"  {key}: {_fmt_value(val)}")
    return "\n".join(lines)


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    """Parse ``argv``, run the requested stage, write reports; returns the exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)
    handler = logging.StreamHandler(err)
    handler.setFormatter(logging.Formatter("awgraph: %(message)s"))
    logger = logging.getLogger("awgraph")
    logger.addHandler(handler)
    try:
        return _run(args, out, err)
    finally:
        logger.removeHandler(handler)


def _run(args, out, err) -> int:
    try:
        cfg = Config.from_env(
            tol=args.tol, seed=args.seed, vertex=args.vertex, format=args.format, q_branch=args.q_branch
        )
    except ValueError as exc:
        print(f"awgraph: {exc}", file=err)
        return GraphInputError.exit_code
    try:
        graph = _load(args)
        if cfg.vertex != "all" and cfg.vertex >= graph.n:
            raise GraphInputError(f"vertex {cfg.vertex} out of range 0..{graph.n - 1}")
    except AWGraphError as exc:
        print(f"awgraph: {exc}", file=err)
        return exc.exit_code
    reports, code = STAGES[args.command](graph, cfg)
    for r in reports:
        if cfg.format == "json":
            out.write(json.dumps(r, separators=(",", ":")) + "\n")
        else:
            out.write(render_text(r) + "\n")
    if code:
        statuses = sorted({r.get("status") for r in reports})
        print(f"awgraph: {args.command} failed ({', '.join(map(str, statuses))})", file=err)
    return code


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()

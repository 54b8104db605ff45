"""Command line frontend: query files in, deterministic reports out.

Exit codes: 0 when every query was evaluated (verdicts may still say
unknown), 1 on validation failures (bad file, bad table data, semantically
broken queries), 2 when the engine detected an inconsistency.
"""
from __future__ import annotations

import argparse
import sys

from .engine import QueryFailure, evaluate_batch
from .queryfile import QueryFileError, parse_query_file
from .report import render_json, render_text
from .tables import TableError, load_default_tables, load_tables_from_path


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coincide",
        description=(
            "Decides looseness and coincidence questions for pairs of maps "
            "from spheres into manifolds, with citation-bearing proof traces."
        ),
    )
    parser.add_argument(
        "--input",
        "-i",
        default="-",
        help="query file (JSON); '-' reads standard input",
    )
    parser.add_argument(
        "--format",
        choices=("text", "json"),
        default=None,
        help="report format (overrides the query file's options.format)",
    )
    parser.add_argument(
        "--trace",
        action="store_true",
        default=None,
        help="include full proof traces in the report",
    )
    parser.add_argument(
        "--tables",
        default=None,
        help="override the bundled homotopy table file",
    )
    parser.add_argument(
        "--batch-parallel",
        action="store_true",
        help="evaluate queries of a batch in parallel",
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.input == "-":
            raw = sys.stdin.buffer.read()
        else:
            with open(args.input, "rb") as handle:
                raw = handle.read()
    except OSError as exc:
        print(f"coincide: cannot read input: {exc}", file=sys.stderr)
        return 1
    try:
        query_file = parse_query_file(raw)
    except QueryFileError as exc:
        print(f"coincide: {exc}", file=sys.stderr)
        return 1
    try:
        tables = (
            load_tables_from_path(args.tables)
            if args.tables
            else load_default_tables()
        )
    except (OSError, TableError) as exc:
        print(f"coincide: table data rejected: {exc}", file=sys.stderr)
        return 1
    results = evaluate_batch(
        query_file.queries, tables, parallel=args.batch_parallel
    )
    include_trace = query_file.trace if args.trace is None else args.trace
    fmt = args.format or query_file.format
    if fmt == "json":
        sys.stdout.write(render_json(results, include_trace))
    else:
        sys.stdout.write(render_text(results, include_trace))
    if any(
        isinstance(r, QueryFailure) and r.kind == "inconsistency" for r in results
    ):
        return 2
    if any(isinstance(r, QueryFailure) for r in results):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Operator command line: init, serve, export, query.

The data directory comes from ``--dir`` (or init's positional argument);
the ``SHAWN_DATA_DIR`` environment variable overrides it.  Exit codes are
documented in ``docs/cli.md``.
"""

from __future__ import annotations

import argparse
import os
import sys

from .fixture import seed_demo
from .inference import MalformedQuery, conjunctive_query, parse_clause_expression
from .rdf_export import export, policy_from_store
from .service import DEFAULT_BASE_URI, create_app, open_wiki
from .store import PageStore, StorageFailure

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MALFORMED_QUERY = 2


def _data_dir(value: str) -> str:
    return os.environ.get("SHAWN_DATA_DIR") or value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shawn", description="semantic wiki engine"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_init = sub.add_parser("init", help="create a wiki directory with the demo pages")
    p_init.add_argument("dir")

    p_serve = sub.add_parser("serve", help="run the HTTP server")
    p_serve.add_argument("--dir", default="data")
    p_serve.add_argument("--port", type=int, default=8080)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--readonly", action="store_true", help="disable saving")
    p_serve.add_argument("--base-uri", default=None, help="base URI for minted RDF URIs")
    p_serve.add_argument("--static", default=None, help="directory of web client assets")

    p_export = sub.add_parser("export", help="print the RDF export to stdout")
    p_export.add_argument("--dir", default="data")
    p_export.add_argument("--format", choices=("ntriples", "turtle"), default="ntriples")
    p_export.add_argument("--inferred", action="store_true")
    p_export.add_argument("--base-uri", default=DEFAULT_BASE_URI)

    p_query = sub.add_parser("query", help="run a conjunctive query")
    p_query.add_argument("--dir", default="data")
    p_query.add_argument("expression", help="clauses, e.g. 'LivesIn = [[Leipzig]]'")

    return parser


def cmd_init(args) -> int:
    try:
        store = open_wiki(args.dir)
        seed_demo(store)
    except StorageFailure as exc:
        print(f"shawn: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(f"initialized wiki with {len(store.list_pages())} pages in {args.dir}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    directory = _data_dir(args.dir)
    base_uri = args.base_uri or f"http://{args.host}:{args.port}/wiki/"
    static = args.static
    if static is None and os.path.isdir("frontend/dist"):
        static = "frontend/dist"
    try:
        store = open_wiki(directory, base_uri)
    except StorageFailure as exc:
        print(f"shawn: {exc}", file=sys.stderr)
        return EXIT_ERROR
    app = create_app(store, base_uri=base_uri, readonly=args.readonly, static_dir=static)
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except (OSError, SystemExit) as exc:
        print(f"shawn: cannot serve: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def cmd_export(args) -> int:
    try:
        store = PageStore(_data_dir(args.dir))
        policy = policy_from_store(store, args.base_uri)
        document = export(store, policy, args.format, include_inferred=args.inferred)
    except StorageFailure as exc:
        print(f"shawn: {exc}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(document.body)
    return EXIT_OK


def cmd_query(args) -> int:
    try:
        store = PageStore(_data_dir(args.dir))
    except StorageFailure as exc:
        print(f"shawn: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        clauses = parse_clause_expression(args.expression)
        matches = conjunctive_query(store, clauses)
    except MalformedQuery as exc:
        print(f"shawn: malformed query: {exc}", file=sys.stderr)
        return EXIT_MALFORMED_QUERY
    for name in sorted(matches):
        print(name)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "init": cmd_init,
        "serve": cmd_serve,
        "export": cmd_export,
        "query": cmd_query,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())

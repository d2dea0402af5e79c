"""Command-line front door: index, search, suggest, serve."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from codescout import wire
from codescout.project import Config, Project, load_config


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="codescout", description="Local code search with query recommendations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="key = value config file")
        p.add_argument("--root", help="project root (overrides config)")

    p_index = sub.add_parser("index", help="build the full index and save the cache")
    p_index.add_argument("root", nargs="?", help="project root")
    p_index.add_argument("--config", help="key = value config file")

    p_search = sub.add_parser("search", help="query the index")
    common(p_search)
    p_search.add_argument("query")
    p_search.add_argument("-k", type=int, default=10, help="max results")
    p_search.add_argument("--json", action="store_true", help="machine-readable output")

    p_suggest = sub.add_parser("suggest", help="query recommendations")
    common(p_suggest)
    mode = p_suggest.add_mutually_exclusive_group(required=True)
    mode.add_argument("--pre", metavar="PARTIAL", help="completions while typing")
    mode.add_argument("--post", metavar="QUERY", help="replacements after a failed query")
    p_suggest.add_argument("-k", type=int, default=10, help="max per source / per token")
    p_suggest.add_argument("--json", action="store_true", help="machine-readable output")

    p_serve = sub.add_parser("serve", help="run the local HTTP service")
    common(p_serve)
    p_serve.add_argument("--port", type=int, help="listen port (overrides config)")
    p_serve.add_argument("--no-watch", action="store_true", help="disable the file watcher")
    return parser


def _resolve_config(args: argparse.Namespace) -> Config:
    config = load_config(args.config) if getattr(args, "config", None) else Config()
    root = getattr(args, "root", None)
    if root:
        config.root = Path(root)
    if getattr(args, "port", None):
        config.port = args.port
    return config


def _open_project(config: Config) -> Project:
    project = Project.open(config)
    project.save_cache()
    return project


def _cmd_index(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    started = time.perf_counter()
    project = Project.open(config, force_full=True)
    cache_path = project.save_cache()
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    snapshot = project.index.snapshot
    print(
        f"indexed {snapshot.doc_count} entities, {len(snapshot.entity_freq)} terms "
        f"in {elapsed_ms:.0f} ms (generation {snapshot.generation})"
    )
    print(f"cache: {cache_path}")
    return 0


def _cmd_search(args: argparse.Namespace) -> int:
    project = _open_project(_resolve_config(args))
    snapshot = project.index.snapshot
    results = snapshot.search(args.query, args.k)
    if args.json:
        print(json.dumps(wire.search_payload(snapshot, results)))
        return 0
    if not results:
        print("no results (try: codescout suggest --post ...)")
        return 0
    width = max(len(r.entity.name) or 1 for r in results)
    for r in results:
        location = f"{r.entity.file}:{r.entity.line_start}-{r.entity.line_end}"
        print(f"{r.score:8.3f}  {r.entity.kind:<8}  {r.entity.name or '-':<{width}}  {location}")
    return 0


def _cmd_suggest(args: argparse.Namespace) -> int:
    project = _open_project(_resolve_config(args))
    recommender = project.recommender()
    snapshot = recommender.snapshot
    if args.pre is not None:
        bundle = recommender.presearch(args.pre, args.k)
        if args.json:
            print(json.dumps(wire.presearch_payload(snapshot, bundle)))
            return 0
        for rec in bundle.vdo:
            print(f"vdo         {rec.text}")
        for rec in bundle.identifiers:
            print(f"identifier  {rec.text}")
        for term, count, bucket in bundle.cloud:
            print(f"cloud       {term} (count {count}, bucket {bucket})")
        if not (bundle.vdo or bundle.identifiers or bundle.cloud):
            print("no completions")
        return 0

    if snapshot.search(args.post, 1):
        print(f"query {args.post!r} has results; no replacements needed")
        if args.json:
            print(json.dumps(wire.postsearch_payload(snapshot, [])))
        return 0
    recommendations = recommender.postsearch(args.post, args.k)
    if args.json:
        print(json.dumps(wire.postsearch_payload(snapshot, recommendations)))
        return 0
    if not recommendations:
        print("no replacements found")
        return 0
    for rec in recommendations:
        print(f"{rec.source:<18} {rec.text}  (for {rec.replaces!r})")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from codescout.service import serve

    config = _resolve_config(args)
    serve(config, watch=not args.no_watch)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "index": _cmd_index,
        "search": _cmd_search,
        "suggest": _cmd_suggest,
        "serve": _cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except (OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command line interface: signature inspection, planning, and the service."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .errors import FootplanError
from .formats import (
    canonical_json,
    load_path_doc,
    load_query_doc,
    load_refpaths_doc,
    load_world_doc,
)
from .signature import path_signature, reduce_word, render_word
from .world import build_world


def _cmd_signature(args) -> int:
    world = build_world(load_world_doc(args.world))
    polyline = load_path_doc(args.path)
    word = path_signature(polyline, world)
    print(render_word(word))
    print(render_word(reduce_word(word, world)))
    return 0


def _cmd_plan(args) -> int:
    from .pipeline import plan_query

    world = build_world(load_world_doc(args.world))
    query = load_query_doc(args.query)
    references = load_refpaths_doc(args.refpaths, world) if args.refpaths else []
    artifacts = plan_query(world, query, references)
    payload = canonical_json(artifacts.record)
    if args.out:
        Path(args.out).write_text(payload)
    else:
        sys.stdout.write(payload)
    if args.report_dir:
        from .report import write_report
        for path in write_report(world, artifacts, args.report_dir):
            print(f"wrote {path}", file=sys.stderr)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(load_world_doc(args.world))
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="footplan",
        description="Footstep planning with homotopy-class-guided heuristics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sig = sub.add_parser("signature", help="print a polyline's crossing word "
                                             "and its reduced form")
    p_sig.add_argument("world", help="world JSON file")
    p_sig.add_argument("path", help="path JSON file with a 'polyline' field")
    p_sig.set_defaults(func=_cmd_signature)

    p_plan = sub.add_parser("plan", help="plan a footstep path")
    p_plan.add_argument("world")
    p_plan.add_argument("query")
    p_plan.add_argument("--refpaths", help="reference paths JSON file")
    p_plan.add_argument("--out", help="write the plan record here instead of stdout")
    p_plan.add_argument("--report-dir",
                        help="write heatmap CSVs and PNG figures to this directory")
    p_plan.set_defaults(func=_cmd_plan)

    p_serve = sub.add_parser("serve", help="run the HTTP/JSON planning service")
    p_serve.add_argument("world")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int,
                         default=int(os.environ.get("FOOTPLAN_PORT", "8080")))
    p_serve.set_defaults(func=_cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FootplanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

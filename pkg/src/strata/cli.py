"""Command-line front end.

The CLI is a thin client of the HTTP service: it reads files, builds
request payloads and routes them through the FastAPI app -- in process
by default (no server needed), or against a running server given
``--server``/``$STRATA_SERVER``.  Results go to stdout, every diagnostic
to stderr.

Exit codes: 0 success, 1 validation failure, 2 parse/read failure,
3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import os
import sys
from pathlib import Path

import httpx

from .workspace import resolve_path

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2
EXIT_CONSISTENCY = 3

_KIND_EXIT = {
    "parse": EXIT_PARSE,
    "structure": EXIT_PARSE,
    "validation": EXIT_VALIDATION,
    "consistency": EXIT_CONSISTENCY,
}


def _call(server: str | None, method: str, path: str, payload: dict | None = None):
    async def run():
        if server:
            client = httpx.AsyncClient(base_url=server, timeout=60.0)
        else:
            from .service import app

            client = httpx.AsyncClient(
                transport=httpx.ASGITransport(app=app), base_url="http://strata.local"
            )
        async with client:
            response = await client.request(method, path, json=payload)
            return response.status_code, response.json()

    return asyncio.run(run())


def _read_text(path: str) -> str:
    try:
        return resolve_path(path).read_text()
    except OSError as exc:
        _fail(f"cannot read {path}: {exc}", EXIT_PARSE)


def _classify_data(path: str, text: str, bundle: dict, surfaces: list[str]) -> None:
    if path.endswith(".strata"):
        surfaces.append(text)
        return
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        _fail(f"{path}: not valid JSON ({exc})", EXIT_PARSE)
    if not isinstance(doc, dict):
        _fail(f"{path}: expected a JSON object", EXIT_PARSE)
    if "fusion" in doc or "S" in doc:
        bundle["categories"].append(doc)
    elif "W" in doc:
        bundle["walls"].append(doc)
    elif "n" in doc:
        bundle["algebras"].append(doc)
    else:
        _fail(f"{path}: cannot classify (no category/wall/algebra keys)", EXIT_PARSE)


def _fail(message: str, code: int):
    print(message, file=sys.stderr)
    raise SystemExit(code)


def _report_problems(problems: list[dict]) -> int:
    worst = EXIT_OK
    for p in problems:
        where = ""
        if p.get("line") is not None:
            where = f" at {p['line']}:{p['col']}"
        print(f"{p['kind']}{where}: {p['message']}", file=sys.stderr)
        worst = max(worst, _KIND_EXIT.get(p["kind"], EXIT_VALIDATION))
    return worst


def cmd_catalog(args) -> int:
    status, body = _call(args.server, "GET", "/catalog")
    if status != 200:
        _fail(f"catalog request failed ({status})", EXIT_CONSISTENCY)
    if args.json:
        print(json.dumps(body, indent=1, sort_keys=True))
        return EXIT_OK
    print("categories:")
    for c in body["categories"]:
        print(f"  {c['name']:<12} rank {c['rank']:<3} D = {c['total_dim']:.6g}")
    print("walls:")
    for w in body["walls"]:
        print(f"  {w['name']:<16} {w['from_cat']} -> {w['to_cat']}")
    print("algebras:")
    for a in body["algebras"]:
        print(f"  {a['name']:<8} over {a['category']}: {' + '.join(a['support'])}")
    return EXIT_OK


def cmd_validate(args) -> int:
    bundle = {"categories": [], "walls": [], "algebras": []}
    surfaces: list[str] = []
    for path in args.files:
        _classify_data(path, _read_text(path), bundle, surfaces)
    status, body = _call(
        args.server, "POST", "/validate", {"data": bundle, "surfaces": surfaces}
    )
    if status != 200:
        _fail(f"validate request failed ({status})", EXIT_CONSISTENCY)
    if body["valid"]:
        print("ok", file=sys.stderr)
        return EXIT_OK
    return _report_problems(body["problems"])


def cmd_gsd(args) -> int:
    surface = _read_text(args.surface)
    bundle = {"categories": [], "walls": [], "algebras": []}
    extra_surfaces: list[str] = []
    for path in args.data or []:
        _classify_data(path, _read_text(path), bundle, extra_surfaces)
    if extra_surfaces:
        _fail("--data takes JSON data files, not surface files", EXIT_PARSE)
    payload = {
        "surface": surface,
        "data": bundle,
        "method": args.method,
        "order": args.order,
        "trace": args.trace,
    }
    status, body = _call(args.server, "POST", "/gsd", payload)
    if status == 200:
        for line in body.get("trace", []):
            print(line, file=sys.stderr)
        if args.json:
            print(json.dumps({"gsd": body["value"], "genus": body["genus"]}))
        else:
            print(body["value"])
        return EXIT_OK
    if status == 400 and "kind" in body:
        code = _report_problems(body["problems"])
        return code or _KIND_EXIT[body["kind"]]
    _fail(f"gsd request failed ({status}): {body}", EXIT_CONSISTENCY)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strata",
        description="exact ground-state degeneracy of decorated surfaces",
    )
    parser.add_argument(
        "--server",
        default=os.environ.get("STRATA_SERVER"),
        help="URL of a running strata service (default: run in process)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list built-in categories, walls and algebras")
    p.add_argument("--json", action="store_true", help="machine-readable listing")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("validate", help="validate data files and surface files")
    p.add_argument("files", nargs="+", help=".json data files and .strata surface files")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("gsd", help="compute the ground-state degeneracy of a surface")
    p.add_argument("surface", help="surface description file (.strata)")
    p.add_argument("--data", action="append", metavar="FILE", help="extra data file (repeatable)")
    p.add_argument("--method", choices=["exact", "verlinde", "both"], default="exact")
    p.add_argument("--order", choices=["input", "greedy"], default="greedy")
    p.add_argument("--trace", action="store_true", help="print the reduction trace to stderr")
    p.add_argument("--json", action="store_true", help="print a JSON result object")
    p.set_defaults(func=cmd_gsd)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except httpx.HTTPError as exc:
        print(f"service unreachable: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())

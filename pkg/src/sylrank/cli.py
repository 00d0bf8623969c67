"""Command-line client for the sylrank service layer.

The CLI does no computation of its own: each verb builds the same request
model the HTTP endpoints accept and hands it to the shared handlers (or, with
``--server``, posts it to a running service).  Output is the canonical JSON
document on stdout; exit status is 0 on success, 1 when a verification suite
reports violations, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from pydantic import ValidationError

from .errors import SylrankError
from .report import SCHEMA, canonical_json
from .service.handlers import VERBS, dispatch

_DEFAULT_SAMPLES = {
    "check-axioms": 500,
    "check-properties": 200,
    "check-length": 200,
    "sofic-vs-vn": 100,
}


def _env_seed() -> int:
    raw = os.environ.get("SYLRANK_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sylrank",
        description="Exact Sylvester rank functions: computations and verification suites",
    )
    parser.add_argument("--server", help="base URL of a running sylrank service; "
                                         "default is in-process execution")
    parser.add_argument("--format", choices=("json", "tsv"), default="json")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(verb, *flags):
        p = sub.add_parser(verb)
        for name, kwargs in flags:
            p.add_argument(name, **kwargs)
        return p

    ring = ("--ring", {"required": True, "help": "ring grammar, e.g. Z, Q, Fp(5), Zmod(4)"})
    ring_opt = ("--ring", {"help": "ring grammar (optional when the function fixes it)"})
    fn = ("--fn", {"required": True, "help": "rank function grammar"})
    seed = ("--seed", {"type": int, "default": None, "help": "default from SYLRANK_SEED"})

    add("rank", ring, fn,
        ("--matrix", {}), ("--matrix-file", {}))
    add("dim", ring, fn,
        ("--module", {}), ("--module-file", {}))
    add("bidim", ring, fn,
        ("--module", {}), ("--module-file", {}),
        ("--sub", {}), ("--sub-file", {}))
    add("maprank", ring, fn,
        ("--domain", {"required": True}), ("--codomain", {"required": True}),
        ("--map", {"required": True}))
    add("check-axioms",
        ("--facet", {"required": True, "choices": ("matrix", "module", "map")}),
        fn, ring_opt, ("--samples", {"type": int, "default": 500}), seed)
    add("check-properties", ring, fn,
        ("--properties", {"default": "additivity,submodularity,hom_monotone,"
                                     "stability,composition,triangular,monotone"}),
        ("--samples", {"type": int, "default": 200}), seed)
    add("check-length", ring, fn,
        ("--samples", {"type": int, "default": 200}), seed)
    add("pullback", ring,
        ("--hom", {"required": True, "help": "mod(<n>) | incQ | aug | regemb"}),
        fn, ("--matrix", {}), ("--matrix-file", {}))
    add("pushforward",
        ("--epi", {"required": True, "help": "Z->Zmod(<n>) or aug:<field>[<group>]"}),
        fn, ("--matrix", {}), ("--matrix-file", {}))
    add("epi-range",
        ("--epi", {"required": True}), fn)
    add("limit-dim",
        ("--system", {"required": True, "help": "e.g. Z;mul:2;T=8"}),
        fn, ("--stable-window", {"type": int, "default": 3}))
    add("ore-test", fn,
        ("--m", {"type": int, "required": True}),
        ("--horizon", {"type": int, "default": 8}))
    add("sofic-dim",
        ("--field", {"required": True}), ("--group", {"required": True}),
        ("--module", {}), ("--module-file", {}),
        ("--sub", {}), ("--sub-file", {}))
    add("sofic-vs-vn",
        ("--field", {"required": True}), ("--group", {"required": True}),
        ("--samples", {"type": int, "default": 100}), seed)
    return parser


def _request_payload(verb: str, args: argparse.Namespace) -> dict:
    model_cls, _ = VERBS[verb]
    payload = {}
    for field in model_cls.model_fields:
        value = getattr(args, field, None)
        if field == "seed" and value is None:
            value = _env_seed()
        if value is not None:
            payload[field] = value
    return payload


def _to_tsv(payload: dict) -> str:
    lines = []
    for key in sorted(payload):
        value = payload[key]
        if key == "clauses":
            for clause in value:
                lines.append(f"clause\t{clause['clause']}\t{clause['samples']}\t{clause['status']}")
        elif isinstance(value, list):
            lines.append(f"{key}\t{','.join(str(v) for v in value)}")
        else:
            lines.append(f"{key}\t{value}")
    return "\n".join(lines)


def _emit(payload: dict, fmt: str):
    if fmt == "tsv":
        sys.stdout.write(_to_tsv(payload) + "\n")
    else:
        sys.stdout.write(canonical_json(payload) + "\n")


def _remote(server: str, verb: str, payload: dict, fmt: str) -> int:
    import httpx

    path = "/v1/" + verb.replace("check-", "check/")
    response = httpx.post(server.rstrip("/") + path, json=payload, timeout=600.0)
    try:
        doc = response.json()
    except ValueError:
        sys.stderr.write(f"sylrank: bad response from server ({response.status_code})\n")
        return 2
    if response.status_code != 200:
        sys.stderr.write(canonical_json(doc) + "\n")
        return 2
    _emit(doc, fmt)
    return 0 if doc.get("ok", True) else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    verb = args.verb
    try:
        payload = _request_payload(verb, args)
        if args.server:
            return _remote(args.server, verb, payload, args.format)
        outcome = dispatch(verb, payload)
    except (SylrankError, ValidationError) as exc:
        sys.stderr.write(canonical_json({"schema": SCHEMA, "error": str(exc)}) + "\n")
        return 2
    _emit(outcome.payload, args.format)
    return 1 if outcome.failed else 0


def console_main():
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()

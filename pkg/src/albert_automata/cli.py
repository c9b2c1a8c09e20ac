"""Command-line front end: ``run``, ``demo`` and ``godel``.

Exit codes: 0 when every assertion passes, 1 when one fails, 2 on usage,
I/O, parse or runtime errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .automaton import albert_chain, external_chain
from .errors import AutomatonError
from .godel import decode, encode
from .protocol import ParseError, ScenarioRuntimeError, execute, parse
from .report import dumps_report

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def report_document(command: str, scenario: str, seed, chains, seconds: float | None = None) -> dict:
    """The JSON document printed by ``--json``; its key set never varies."""
    assertions = []
    for ch in chains:
        for a in ch.assertions:
            d = a.to_dict()
            d["name"] = f"{ch.kind}: {a.name}"
            assertions.append(d)
    statuses = [ch.status for ch in chains]
    status = "fail" if "fail" in statuses else ("degenerate" if "degenerate" in statuses else "pass")
    return {
        "version": __version__,
        "command": command,
        "scenario": scenario,
        "seed": seed,
        "status": status,
        "assertions": assertions,
        "chains": [ch.to_dict() for ch in chains],
        "timing": None if seconds is None else {"seconds": seconds},
    }


def _emit(doc: dict, chains, as_json: bool, title: str) -> int:
    if as_json:
        sys.stdout.write(dumps_report(doc))
    else:
        print(f"# {doc['command']} {title}")
        for ch in chains:
            print(ch.to_text())
        print(f"overall: {doc['status']}")
    return EXIT_OK if doc["status"] != "fail" else EXIT_FAIL


def _error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_ERROR


def cmd_run(args) -> int:
    try:
        with open(args.path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        return _error(f"cannot read {args.path}: {exc.strerror or exc}")
    t0 = time.perf_counter()
    try:
        scenario = parse(text)
        report = execute(scenario)
    except ParseError as exc:
        return _error(f"{args.path}: {exc}")
    except ScenarioRuntimeError as exc:
        return _error(f"{args.path}: {exc}")
    seconds = time.perf_counter() - t0 if args.timing else None
    doc = report_document("run", text, report.seed, [report], seconds)
    return _emit(doc, [report], args.json, args.path)


def _demo_chains(d: int, seed: int, external: bool):
    ch = albert_chain(d, seed=seed)
    return [ch, external_chain(ch)] if external else [ch]


def cmd_demo(args) -> int:
    if not 2 <= args.dim <= 6:
        return _error(f"--dim must be between 2 and 6, got {args.dim}")
    if args.repeat < 1:
        return _error("--repeat must be positive")
    seeds = [args.seed + k for k in range(args.repeat)]
    t0 = time.perf_counter()
    try:
        with ThreadPoolExecutor() as pool:
            runs = list(pool.map(lambda s: _demo_chains(args.dim, s, args.external), seeds))
    except AutomatonError as exc:
        return _error(str(exc))
    chains = [ch for run in runs for ch in run]
    seconds = time.perf_counter() - t0 if args.timing else None
    echo = f"demo --dim {args.dim} --seed {args.seed} --repeat {args.repeat}" + (" --external" if args.external else "")
    doc = report_document("demo", echo, args.seed, chains, seconds)
    return _emit(doc, chains, args.json, echo)


def cmd_godel(args) -> int:
    try:
        if args.action == "encode":
            print(encode(args.value))
        else:
            if not args.value.isdigit():
                return _error(f"not a natural number: {args.value!r}")
            print(decode(int(args.value)))
    except AutomatonError as exc:
        return _error(str(exc))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="albert-automata", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a scenario file")
    run.add_argument("path")
    fmt = run.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report")
    fmt.add_argument("--text", dest="json", action="store_false", help="human-readable report (default)")
    run.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-identity)")
    run.set_defaults(func=cmd_run)

    demo = sub.add_parser("demo", help="run the built-in two-stage chain")
    demo.add_argument("--dim", type=int, default=2)
    demo.add_argument("--seed", type=int, default=42)
    demo.add_argument("--external", action="store_true", help="also run the external automaton")
    demo.add_argument("--repeat", type=int, default=1, help="independent runs with seeds seed..seed+N-1")
    demo.add_argument("--json", action="store_true")
    demo.add_argument("--timing", action="store_true")
    demo.set_defaults(func=cmd_demo)

    g = sub.add_parser("godel", help="encode or decode Gödel numbers")
    g.add_argument("action", choices=["encode", "decode"])
    g.add_argument("value", help='space-separated tokens ("p ( w )") or a number')
    g.set_defaults(func=cmd_godel)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

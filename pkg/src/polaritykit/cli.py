"""Command-line front end: ``polaritykit <command> ...``.

Exit status is 0 when every requested check passes, 1 when some check fails
and 2 when the input cannot be read, parsed or validated.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import _bits
from .canonical import canonical_frame
from .errors import PolarityKitError
from .formats import parse_frame_doc, parse_lattice_doc, serialize_frame_doc, serialize_lattice_doc
from .generate import random_lattice, random_polarity
from .lattice import LatticeExpansion
from .polarity import all_stable_sets, dm_completion_check, is_separated
from .report import Check, group, render_json
from .sorts import DUAL, ONE
from .suites import SUITES, frame_suite, lattice_suite, represent_report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8") if path != "-" else sys.stdin.read()


def _is_lattice_doc(text: str) -> bool:
    for raw in text.splitlines():
        body = raw.split("#", 1)[0].split()
        if body:
            return body[0] in ("lattice", "elements", "order", "operator")
    return False


def _emit(args, root: Check, text_prefix: str = "", extra: dict | None = None) -> int:
    if args.format == "json":
        print(render_json(args.command, getattr(args, "input", ""), root, extra))
    else:
        if text_prefix:
            print(text_prefix, end="")
        print(root.to_text())
    return EXIT_OK if root.passed else EXIT_FAIL


def cmd_complete(args) -> int:
    P, _ = parse_frame_doc(_read(args.input))
    lines, extra = [], {}
    for sort, label in ((ONE, "x"), (DUAL, "y")):
        sets = all_stable_sets(P, sort).sets
        extra[f"stable_sets_{label}"] = [_bits.fmt(m, label) for m in sets]
        lines.append(f"stable sets over {label.upper()} ({len(sets)}):")
        lines += ["  " + _bits.fmt(m, label) for m in sets]
    checks = [Check("separated", is_separated(P))]
    if is_separated(P):
        checks.append(dm_completion_check(P))
    return _emit(args, group("complete", checks), "\n".join(lines) + "\n", extra)


def cmd_canonical(args) -> int:
    E = parse_lattice_doc(_read(args.input))
    CF = canonical_frame(E)
    doc = serialize_frame_doc(CF.polarity, CF.relations)
    if args.output:
        Path(args.output).write_text(doc, encoding="utf-8")
        root = Check("canonical_frame", True, {
            "filters": len(CF.filters), "ideals": len(CF.ideals), "relations": len(CF.relations),
            "output": args.output,
        })
        return _emit(args, root)
    if args.format == "json":
        root = Check("canonical_frame", True, {"filters": len(CF.filters), "ideals": len(CF.ideals)})
        print(render_json("canonical", args.input, root, {"frame": doc}))
    else:
        sys.stdout.write(doc)
    return EXIT_OK


def cmd_check(args) -> int:
    text = _read(args.input)
    if _is_lattice_doc(text):
        root = lattice_suite(parse_lattice_doc(text), args.suite)
    else:
        P, relations = parse_frame_doc(text)
        root = frame_suite(P, relations, args.suite)
    return _emit(args, root)


def cmd_represent(args) -> int:
    E = parse_lattice_doc(_read(args.input))
    root = represent_report(E)
    verdict = "isomorphic" if root.passed else "not isomorphic"
    return _emit(args, root, f"representation: {verdict}\n", {"verdict": verdict})


def cmd_random(args) -> int:
    if args.kind == "polarity":
        P = random_polarity(args.seed, args.nx, args.ny, args.density)
        doc = serialize_frame_doc(P)
    else:
        L = random_lattice(args.seed, args.size)
        doc = serialize_lattice_doc(LatticeExpansion(L, (), f"random-{args.seed}"))
    if args.format == "json":
        print(json.dumps({"schema": 1, "command": "random", "kind": args.kind, "seed": args.seed,
                          "document": doc}, sort_keys=True, indent=2))
    else:
        sys.stdout.write(doc)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polaritykit", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("complete", parents=[common], help="stable set lattices and completion check of a frame")
    p.add_argument("input")
    p.set_defaults(run=cmd_complete)

    p = sub.add_parser("canonical", parents=[common], help="build the canonical frame of a lattice document")
    p.add_argument("input")
    p.add_argument("-o", "--output", help="write the frame document here instead of standard output")
    p.set_defaults(run=cmd_canonical)

    p = sub.add_parser("check", parents=[common], help="run a check suite on a frame or lattice document")
    p.add_argument("input")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("represent", parents=[common], help="verify the representation of a lattice expansion")
    p.add_argument("input")
    p.set_defaults(run=cmd_represent)

    p = sub.add_parser("random", parents=[common], help="emit a seeded random polarity or lattice")
    p.add_argument("--kind", choices=("polarity", "lattice"), required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--nx", type=int, default=3)
    p.add_argument("--ny", type=int, default=3)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--size", type=int, default=5)
    p.set_defaults(run=cmd_random)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (PolarityKitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

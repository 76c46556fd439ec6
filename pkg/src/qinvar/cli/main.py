"""Command-line entry point."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..errors import DocumentError, InvalidRational, QinvarError
from .document import SCHEMA_VERSION, parse_document, schema_text
from .report import render, run
from .tasks import DEFAULT_MAX_DEGREE, Options
from ..automorphisms import DEFAULT_GROUP_CAP

EXIT_OK, EXIT_TASK, EXIT_PARSE, EXIT_INTERNAL = 0, 1, 2, 3

DOC_TASKS = ("trace", "hdet", "molien", "stanley", "verdict", "oracle")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--check-oracle", type=int, metavar="N", default=None,
                   help="append brute-force/Reynolds agreement sections to depth N")
    p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE, metavar="N",
                   help="series/oracle depth (default %(default)s)")
    p.add_argument("--group-cap", type=int, default=DEFAULT_GROUP_CAP, metavar="N",
                   help="largest group closure allowed (default %(default)s)")
    p.add_argument("--format", choices=["md", "json", "csv"], default="md")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    p.add_argument("-o", "--output", type=Path, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qinvar",
        description="Invariant rings of skew polynomial, Weyl and enveloping algebras: "
                    "trace series, homological determinants, Molien series and verdicts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run every task of a workspace document")
    p.add_argument("file", type=Path)
    _add_common(p)

    p = sub.add_parser("validate", help="parse and validate a document, printing its canonical form")
    p.add_argument("file", type=Path)

    sub.add_parser("schema", help="print the workspace JSON schema")

    for op in DOC_TASKS:
        p = sub.add_parser(op, help=f"run a single {op} task against a document's declarations")
        p.add_argument("file", type=Path)
        p.add_argument("--algebra")
        p.add_argument("--automorphism")
        p.add_argument("--group")
        _add_common(p)

    p = sub.add_parser("weyl", help="verdict for a group of Weyl algebra automorphisms")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--map", action="append", required=True, metavar="JSON",
                   help='generator images, e.g. \'{"x1": {"y1": "1"}, "y1": {"x1": "-1"}}\'')
    p.add_argument("--no-close", action="store_true", help="treat the maps as the whole group")
    _add_common(p)

    p = sub.add_parser("qweyl", help="verdict for a group of quantum Weyl automorphisms")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--p", action="append", default=[], metavar="I,J=VALUE")
    p.add_argument("--map", action="append", default=[], metavar="JSON")
    _add_common(p)

    p = sub.add_parser("lie-det", help="determinant of a diagram automorphism")
    p.add_argument("--type", required=True, choices=list("ABCDEFG"))
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--tau", required=True, help="1-based images of the simple roots (e.g. 3,2,4,1) or a name")
    _add_common(p)

    p = sub.add_parser("u-verdict", help="verdict for invariants of an enveloping algebra")
    p.add_argument("--type", required=True, choices=list("ABCDEFG"))
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--tau", action="append", default=[], help="diagram automorphism generator")
    p.add_argument("--inner", action="append", default=[], metavar="JSON",
                   help='exp(ad x) generator, x as {"label": coefficient}')
    _add_common(p)
    return parser


def _tau_arg(text: str):
    if "," in text or text.isdigit():
        return [int(x) for x in text.split(",")]
    return text


def _single_task_doc(args) -> str:
    """Wrap a per-task subcommand into a one-task document."""
    if args.command in DOC_TASKS:
        data = json.loads(args.file.read_text(encoding="utf-8"))
        task = {"op": args.command}
        for key in ("algebra", "automorphism", "group"):
            if getattr(args, key):
                task[key] = getattr(args, key)
        data["tasks"] = [task]
        return json.dumps(data)
    data = {"schema": SCHEMA_VERSION}
    if args.command == "weyl":
        gens = [json.loads(m) for m in args.map]
        data["tasks"] = [{"op": "weyl", "n": args.n, "generators": gens, "close": not args.no_close}]
    elif args.command == "qweyl":
        p = {}
        for item in args.p:
            key, _, val = item.partition("=")
            p[key] = val
        data["algebras"] = {"A": {"kind": "qweyl", "n": args.n, "q": args.q, "p": p}}
        names = [f"x{i + 1}" for i in range(args.n)] + [f"y{i + 1}" for i in range(args.n)]
        autos = {}
        for k, m in enumerate(args.map):
            img = json.loads(m)
            autos[f"g{k + 1}"] = {"algebra": "A", "images": {nm: img.get(nm, {nm: "1"}) for nm in names}}
        data["automorphisms"] = autos
        data["tasks"] = [{"op": "qweyl", "algebra": "A", "generators": list(autos)}]
    elif args.command == "lie-det":
        data["tasks"] = [{"op": "lie-det", "type": args.type, "rank": args.rank, "tau": _tau_arg(args.tau)}]
    elif args.command == "u-verdict":
        gens = [{"tau": _tau_arg(t)} for t in args.tau] + [{"inner": json.loads(x)} for x in args.inner]
        data["tasks"] = [{"op": "u-verdict", "type": args.type, "rank": args.rank, "generators": gens}]
    return json.dumps(data)


def _diagnostics(err: QinvarError) -> list[str]:
    diags = getattr(err, "diagnostics", None) or [err]
    return [f"{type(d).__name__}: {d}" for d in diags]


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "schema":
        sys.stdout.write(schema_text())
        return EXIT_OK
    try:
        if args.command in ("run", "validate"):
            text = args.file.read_text(encoding="utf-8")
        else:
            text = _single_task_doc(args)
        doc = parse_document(text)
    except (DocumentError, InvalidRational, QinvarError, json.JSONDecodeError, OSError) as e:
        if isinstance(e, QinvarError):
            for line in _diagnostics(e):
                print(line, file=sys.stderr)
        else:
            print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_PARSE
    if args.command == "validate":
        from .document import dump_document

        sys.stdout.write(dump_document(doc))
        return EXIT_OK
    opts = Options(args.check_oracle, args.max_degree, args.group_cap, args.seed)
    report = run(doc, opts)
    out = render(report, args.format)
    if args.output:
        args.output.write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return report.exit_code


if __name__ == "__main__":
    raise SystemExit(main())

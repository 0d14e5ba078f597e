"""Command-line interface: ``taufan enumerate|fan|category|check|render <file>``.

Exit codes: 0 success, 1 unreadable or invalid algebra file, 2 cap exceeded,
3 a verification or theory check failed, 4 SVG requested for rank other than
two, 64 bad command-line usage.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .algebra import build_algebra
from .categories import build_categories
from .checks import run_checks
from .errors import CapExceeded, PresentationError, SVGUnsupportedRank, TaufanError, TheoryViolation
from .formats import category_to_dot, dumps, document, fan_document, fan_to_svg, load_algebra_file, pairs_document, table_to_json
from .modules import DEFAULT_SEED
from .tautilt import DEFAULT_CAP, PairCatalog
from .wallchamber import build_classes, walls_for_render

EXIT_OK, EXIT_PARSE, EXIT_CAP, EXIT_CHECK, EXIT_RANK, EXIT_USAGE = 0, 1, 2, 3, 4, 64
CATEGORIES = ("tf", "geom", "pairs", "pairquot", "tcm")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="taufan", description="Support tau-tilting pairs, g-vector fans and the categories built from them.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("file", help="algebra file (JSON)")
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum number of support tau-tilting pairs (default %(default)s)")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for the Fitting decomposition trials")
        sp.add_argument("--checked", action="store_true", help="re-verify rigidity during enumeration and cross-check the order against cone geometry")
        return sp

    common(sub.add_parser("enumerate", help="list all basic tau-rigid pairs")).add_argument("--json", action="store_true", help="emit JSON (default)")
    fan = common(sub.add_parser("fan", help="g-vector fan as JSON or SVG"))
    fan.add_argument("--json", action="store_true", help="emit JSON (default when --svg is absent)")
    fan.add_argument("--svg", metavar="PATH", help="write the rank-two fan picture to PATH")
    cat = common(sub.add_parser("category", help="one of the finite categories"))
    cat.add_argument("--which", choices=CATEGORIES, default="geom")
    fmt = cat.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    fmt.add_argument("--json", action="store_true", help="emit JSON (default)")
    chk = common(sub.add_parser("check", help="run the full verification suite"))
    chk.add_argument("--json", action="store_true", help="emit the report as JSON")
    ren = common(sub.add_parser("render", help="write fan and category figures to a directory"))
    ren.add_argument("--out", metavar="DIR", default=".", help="output directory (default: current directory)")
    ren.add_argument("--svg", metavar="PATH", help="fan picture path (default DIR/fan.svg)")
    return p


def _catalog(args) -> PairCatalog:
    A = build_algebra(load_algebra_file(args.file))
    return PairCatalog(A, args.cap, args.seed, checked=args.checked)


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_enumerate(args) -> int:
    sys.stdout.write(dumps(pairs_document(_catalog(args))))
    return EXIT_OK


def cmd_fan(args) -> int:
    cat = _catalog(args)
    classes = build_classes(cat)
    walls = walls_for_render(classes)
    if args.svg:
        svg = fan_to_svg(classes, walls)
        _write(args.svg, svg)
    if args.json or not args.svg:
        sys.stdout.write(dumps(fan_document(classes, walls)))
    return EXIT_OK


def cmd_category(args) -> int:
    bundle = build_categories(_catalog(args), checked=args.checked)
    table = bundle.by_name(args.which)
    if args.dot:
        poset = None if args.which in ("tf", "pairs") else bundle.pairs
        sys.stdout.write(category_to_dot(table, poset))
    else:
        sys.stdout.write(dumps(document("category", bundle.catalog.algebra, {"category": table_to_json(table)})))
    return EXIT_OK


def cmd_check(args) -> int:
    A = build_algebra(load_algebra_file(args.file))
    report = run_checks(A, args.cap, args.seed)
    if args.json:
        sys.stdout.write(dumps(document("check", A, report.to_json())))
    else:
        for line in report.lines:
            sys.stdout.write(f"{'PASS' if line.passed else 'FAIL'}  {line.name}  ({line.seconds:.2f}s)\n")
        sys.stdout.write("counts: " + ", ".join(f"{k}={v}" for k, v in report.counts.items()) + "\n")
    bad = report.first_failure
    if bad is not None:
        sys.stderr.write(f"taufan: check failed: {bad.name}\n{json.dumps(bad.detail, default=str, indent=2)}\n")
        return EXIT_CHECK
    return EXIT_OK


def cmd_render(args) -> int:
    bundle = build_categories(_catalog(args), checked=args.checked)
    classes = bundle.classes
    walls = walls_for_render(classes)
    outputs = {"fan.json": dumps(fan_document(classes, walls))}
    if classes[0].n == 2:
        outputs[os.path.relpath(args.svg, args.out) if args.svg else "fan.svg"] = fan_to_svg(classes, walls)
    for which in CATEGORIES:
        poset = None if which in ("tf", "pairs") else bundle.pairs
        outputs[f"{which}.dot"] = category_to_dot(bundle.by_name(which), poset)
        outputs[f"{which}.json"] = dumps(document("category", bundle.catalog.algebra, {"category": table_to_json(bundle.by_name(which))}))
    os.makedirs(args.out, exist_ok=True)
    for name, text in outputs.items():
        _write(os.path.join(args.out, name), text)
        sys.stderr.write(f"wrote {os.path.join(args.out, name)}\n")
    return EXIT_OK


COMMANDS = {"enumerate": cmd_enumerate, "fan": cmd_fan, "category": cmd_category, "check": cmd_check, "render": cmd_render}


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    if args.cap < 1:
        sys.stderr.write("taufan: --cap must be at least 1\n")
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except PresentationError as exc:
        sys.stderr.write(f"taufan: {type(exc).__name__}: {exc}\n")
        return EXIT_PARSE
    except CapExceeded as exc:
        sys.stderr.write(f"taufan: CapExceeded: {exc}\n")
        return EXIT_CAP
    except SVGUnsupportedRank as exc:
        sys.stderr.write(f"taufan: SVGUnsupportedRank: {exc}\n")
        return EXIT_RANK
    except TheoryViolation as exc:
        sys.stderr.write(f"taufan: {type(exc).__name__}: {exc}\n{json.dumps(exc.details, default=str, indent=2)}\n")
        return EXIT_CHECK
    except TaufanError as exc:
        sys.stderr.write(f"taufan: {type(exc).__name__}: {exc}\n")
        return EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())

"""
Command line front end.

    fanosod analyze FILE
    fanosod verify-paper [--seed N] [--only GROUP] [--section FILE] [--inject-degenerate]
    fanosod cohomology FILE CLASS

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from fanosod import checks, cohomology, description, geometry as geo, report
from fanosod.generality import SectionPhi
from fanosod.picard import PicardError, parse_class

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str) -> description.Description:
    try:
        return description.load(path)
    except FileNotFoundError as exc:
        raise InputError(str(exc)) from None
    except description.DescriptionError as exc:
        raise InputError(f"{path}: parse error at {exc}") from None


def cmd_analyze(args) -> int:
    desc = _load(args.file)
    a = report.analyze(desc.target, desc.target_name)
    out = report.render_machine(a) if args.format == "machine" else report.render_text(a)
    sys.stdout.write(out)
    return EXIT_OK


def cmd_cohomology(args) -> int:
    desc = _load(args.file)
    v = desc.target
    try:
        L = parse_class(args.cls, geo.lattice(v))
    except PicardError as exc:
        raise InputError(f"bad divisor class {args.cls!r}: {exc}") from None
    try:
        vec = cohomology.line_bundle_cohomology(v, L)
    except geo.Unsupported as exc:
        raise InputError(f"unsupported shape {desc.target_name!r}: {exc}") from None
    sys.stdout.write(report.render_cohomology(vec, args.format))
    return EXIT_OK


def cmd_verify_paper(args) -> int:
    section = None
    if args.section:
        try:
            section = SectionPhi.from_text(Path(args.section).read_text(encoding="utf-8"))
        except (OSError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot read section {args.section}: {exc}") from None
    opts = checks.Options(seed=args.seed, section=section, inject_degenerate=args.inject_degenerate)
    outcomes = checks.run(opts, args.only)
    width = max(len(o.check.name) for o in outcomes)
    for o in outcomes:
        status = "PASS" if o.passed else "FAIL"
        if args.format == "machine":
            key = o.check.name.replace(" ", "_")
            print(f"{o.check.group}.c{o.check.criterion}.{key}={status}")
        else:
            print(f"{status}  {o.check.group:<10}  #{o.check.criterion:<2}  {o.check.name:<{width}}  {o.detail}")
    failed = [o for o in outcomes if not o.passed]
    if failed:
        print(f"first failing check: {failed[0].check.name}", file=sys.stderr)
        return EXIT_FAIL
    if args.format != "machine":
        print(f"all {len(outcomes)} checks passed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="fanosod",
        parents=[common],
        description="Hodge diamonds, canonical classes, Koszul cohomology and K0 of constructed varieties.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="report on a variety description file")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify-paper", parents=[common], help="replay both Enriques constructions")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--only", choices=checks.GROUPS)
    p.add_argument("--section", help="3 x 12 section matrix file to test instead of the seeded one")
    p.add_argument("--inject-degenerate", action="store_true",
                   help="replace the section by one whose first conic triple has common zeros")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("cohomology", parents=[common], help="line bundle cohomology on a variety")
    p.add_argument("file")
    p.add_argument("cls", metavar="CLASS")
    p.set_defaults(func=cmd_cohomology)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "format"):
        args.format = "text"
    try:
        return args.func(args)
    except InputError as exc:
        print(f"fanosod: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

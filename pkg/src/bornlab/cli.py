"""Command line interface.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 input or
parse error (bad file, bad rational, Jacobi violation, unknown entry, ...).
"""

from __future__ import annotations

import argparse
import sys

from . import catalog
from .errors import BornlabError
from .model import CHECK_ORDER, parse_model, render_report, run_checks
from .structures import CirclePoint, integrability_report, verify_born_identities


def _cmd_check(args) -> int:
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    only = args.checks.split(",") if args.checks else None
    try:
        model = parse_model(text)
        report = run_checks(model, only=only)
    except BornlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render_report(report, args.format))
    return 0 if report.overall == "pass" else 1


def _cmd_catalog_list(args) -> int:
    width = max(len(name) for name, _ in catalog.list_entries())
    for name, summary in catalog.list_entries():
        print(f"{name.ljust(width)}  {summary}")
    return 0


def _cmd_catalog_show(args) -> int:
    try:
        entry = catalog.get_entry(args.name)
    except BornlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"name: {entry.name}")
    print(f"summary: {entry.summary}")
    if entry.model is not None:
        print(f"dim: {entry.model.algebra.n}")
        print("structures: " + "; ".join(d.label() for d in entry.model.structures))
        tensors = (
            sorted(entry.model.forms)
            + sorted(entry.model.metrics)
            + sorted(entry.model.endos)
            + sorted(entry.model.subspaces)
        )
        print("tensors: " + ", ".join(tensors))
    print("provenance: " + entry.provenance)
    outcomes = catalog.verify_entry(entry)
    failed = False
    if outcomes:
        print("expectations:")
        for o in outcomes:
            mark = "ok" if o.ok else "MISMATCH"
            print(
                f"  {o.expectation.kind}:{o.expectation.target}"
                f"  expected={o.expectation.expected} actual={o.actual}  {mark}"
            )
            failed = failed or not o.ok
    return 1 if failed else 0


def _cmd_catalog_export(args) -> int:
    try:
        sys.stdout.write(catalog.export_entry(args.name))
    except BornlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def _cmd_family(args) -> int:
    try:
        entry = catalog.get_entry(args.name)
        point = CirclePoint.theta_pi() if args.theta_pi else CirclePoint.from_t(args.t)
        member = catalog.family_member(entry, point)
    except (BornlabError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    identities = verify_born_identities(member)
    integ = integrability_report(member)
    print(f"family member of {args.name} at {point.label()}"
          f" (cos = {point.cos}, sin = {point.sin})")
    print(f"  born identities: {'PASS' if identities.ok else 'FAIL'}"
          f" ({len(identities.items)} checks)")
    print(f"  integrable: {'PASS' if integ.integrable else 'FAIL'}")
    ok = identities.ok and integ.integrable
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="bornlab",
        description="Exact verification of Born, Kunneth and hypersymplectic structures on Lie algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="run checks against a model file")
    p_check.add_argument("file")
    p_check.add_argument("--format", choices=("text", "json"), default="text")
    p_check.add_argument("--checks", help="comma-separated subset of: " + ",".join(CHECK_ORDER))
    p_check.set_defaults(func=_cmd_check)

    p_cat = sub.add_parser("catalog", help="browse the built-in examples")
    cat_sub = p_cat.add_subparsers(dest="catalog_command", required=True)
    p_list = cat_sub.add_parser("list", help="list entries")
    p_list.set_defaults(func=_cmd_catalog_list)
    p_show = cat_sub.add_parser("show", help="entry details and expectation outcomes")
    p_show.add_argument("name")
    p_show.set_defaults(func=_cmd_catalog_show)
    p_export = cat_sub.add_parser("export", help="emit an entry as a model file")
    p_export.add_argument("name")
    p_export.set_defaults(func=_cmd_catalog_export)

    p_family = sub.add_parser("family", help="build a circle-family Born structure")
    p_family.add_argument("name")
    group = p_family.add_mutually_exclusive_group(required=True)
    group.add_argument("--t", help="rational circle parameter, e.g. 1/2")
    group.add_argument("--theta-pi", action="store_true", help="the point theta = pi")
    p_family.set_defaults(func=_cmd_family)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands: test (random contract testing), complete (brute-force
soundness/completeness), adequacy (bounded observational adequacy),
export-boogie (theory files), report (combined JSON report).

Exit codes: 0 clean, 1 contract violations or untagged incompleteness
found, 2 usage errors or refused enumerations.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import boogie_export, containers
from .autotest import TestBudget, run_campaign
from .checkers import (
    AdequacyVerdict, EnumerationConfig, EnumerationRefused,
    check_observational_adequacy, classify_library, report_to_json,
)
from .contracts import REGISTRY


def _seed_default() -> int:
    try:
        return int(os.environ.get("MBC_SEED", "0"))
    except ValueError:
        return 0


def _resolve_targets(args) -> list:
    if getattr(args, "all", False):
        return list(containers.CONTAINER_NAMES)
    if not args.target:
        raise SystemExit2("no target given; use --target NAME or --all")
    for t in args.target:
        if t not in REGISTRY:
            raise SystemExit2(f"unknown target {t!r}; known: "
                              + ", ".join(sorted(REGISTRY)))
    return list(args.target)


class SystemExit2(Exception):
    """Usage-level error reported with exit code 2."""


def _emit(args, text: str):
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def cmd_test(args) -> int:
    targets = _resolve_targets(args)
    faults = containers.FaultSwitch()
    for name in args.inject or []:
        if not hasattr(faults, name):
            raise SystemExit2(f"unknown fault switch {name!r}")
        setattr(faults, name, True)
    budget = TestBudget(max_calls=args.calls, seed=args.seed)
    result = run_campaign(targets, budget, faults=faults, mode=args.mode,
                          workers=args.workers)
    _emit(args, result.to_json_lines())
    return 1 if result.violations else 0


def _enum_config(args) -> EnumerationConfig:
    return EnumerationConfig(universe=args.universe, max_size=args.max_size,
                             depth=getattr(args, "depth", 3))


def cmd_complete(args) -> int:
    targets = _resolve_targets(args)
    cfg = _enum_config(args)
    try:
        report = classify_library(cfg, names=targets)
    except EnumerationRefused as e:
        sys.stderr.write(f"refused: {e}\n")
        return 2
    _emit(args, report_to_json(report) + "\n")
    return 1 if report["summary"]["errors"] else 0


def cmd_adequacy(args) -> int:
    targets = _resolve_targets(args)
    cfg = _enum_config(args)
    verdicts = []
    try:
        for name in targets:
            verdicts.append(check_observational_adequacy(name, cfg).to_dict())
    except EnumerationRefused as e:
        sys.stderr.write(f"refused: {e}\n")
        return 2
    _emit(args, json.dumps(verdicts, ensure_ascii=False, sort_keys=True,
                           indent=2) + "\n")
    return 0 if all(v["adequate"] for v in verdicts) else 1


def cmd_export_boogie(args) -> int:
    text = boogie_export.export_all_text()
    boogie_export.grammar_check(text)
    _emit(args, text)
    return 0


def cmd_report(args) -> int:
    targets = _resolve_targets(args)
    cfg = _enum_config(args)
    budget = TestBudget(max_calls=args.calls, seed=args.seed)
    try:
        completeness = classify_library(cfg, names=targets)
        adequacy = [check_observational_adequacy(n, cfg).to_dict()
                    for n in targets]
    except EnumerationRefused as e:
        sys.stderr.write(f"refused: {e}\n")
        return 2
    campaign = run_campaign(targets, budget)
    combined = {
        "completeness": completeness,
        "adequacy": adequacy,
        "testing": {"stats": campaign.stats,
                    "reports": [json.loads(r.to_json())
                                for r in campaign.reports]},
    }
    _emit(args, json.dumps(combined, ensure_ascii=False, sort_keys=True,
                           indent=2) + "\n")
    bad = (campaign.violations or completeness["summary"]["errors"]
           or not all(v["adequate"] for v in adequacy))
    return 1 if bad else 0


def _add_target_flags(p):
    p.add_argument("--target", action="append", metavar="NAME",
                   help="container type (repeatable)")
    p.add_argument("--all", action="store_true",
                   help="all registered container types")
    p.add_argument("--out", metavar="PATH", help="write output to a file")


def _add_enum_flags(p):
    p.add_argument("--universe", type=int, default=2,
                   help="element universe size (default 2)")
    p.add_argument("--max-size", type=int, default=3, dest="max_size",
                   help="max structure size (default 3)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mbc", description="Model-based contract tools.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test", help="random contract testing")
    _add_target_flags(p)
    p.add_argument("--calls", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=_seed_default())
    p.add_argument("--inject", action="append", metavar="FAULT",
                   help="enable a named fault switch (repeatable)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--mode", choices=["model", "classic"], default="model")
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("complete", help="soundness/completeness checks")
    _add_target_flags(p)
    _add_enum_flags(p)
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("adequacy", help="bounded observational adequacy")
    _add_target_flags(p)
    _add_enum_flags(p)
    p.add_argument("--depth", type=int, default=3)
    p.set_defaults(func=cmd_adequacy)

    p = sub.add_parser("export-boogie", help="write the Boogie theories")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_export_boogie)

    p = sub.add_parser("report", help="combined JSON report")
    _add_target_flags(p)
    _add_enum_flags(p)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--calls", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=_seed_default())
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors already; normalize others.
        return 2 if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except SystemExit2 as e:
        sys.stderr.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

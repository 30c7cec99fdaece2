"""Command line interface.

Subcommands: check, classify, order, closure, enumerate,
verify-implications, fixtures.  Exit status is 0 when every requested
check comes out as expected, 1 when some property fails or a claim is
refuted, and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import docio, enumeration, fixtures as fixtures_mod
from .axioms import TRANSIT_AXIOMS, check_axiom, classify_all
from .docio import (
    DocumentError,
    Report,
    SystemDocument,
    TransitDocument,
    parse_document,
    verdict_to_dict,
)
from .model import ModelError, SetSystem, TransitFunction, transit_sets
from .pyramidal import NotATSystemError, classify_ladder, find_compatible_order
from .systems import SYSTEM_PREDICATES, check_system, union_closure

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class CliError(Exception):
    """Input or usage problem; maps to exit status 2."""


def _load(path: str, complete_singletons: bool):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    try:
        doc = parse_document(text, json_mode=path.endswith(".json"))
    except (DocumentError, ModelError, json.JSONDecodeError, KeyError,
            ValueError) as exc:
        raise CliError(f"cannot parse {path}: {exc}") from exc
    if isinstance(doc, TransitDocument):
        try:
            return doc, doc.to_transit_function(), None
        except (DocumentError, ModelError) as exc:
            raise CliError(f"invalid transit function in {path}: {exc}") from exc
    try:
        system = doc.to_set_system(complete_singletons=complete_singletons)
    except ModelError as exc:
        raise CliError(f"invalid set system in {path}: {exc}") from exc
    return doc, None, system


def _emit(report: Report, as_json: bool) -> None:
    if as_json:
        print(report.to_json())
    else:
        print(report.render_text(), end="")


def _cmd_check(args) -> int:
    _, R, system = _load(args.file, args.complete_singletons)
    checks = []
    if R is not None:
        gs = R.groundset
        tags = args.axiom or list(TRANSIT_AXIOMS)
        for tag in tags:
            if tag not in TRANSIT_AXIOMS:
                raise CliError(f"unknown transit axiom {tag!r}")
            checks.append(verdict_to_dict(check_axiom(R, tag), gs))
    else:
        gs = system.groundset
        tags = args.axiom or list(SYSTEM_PREDICATES)
        for tag in tags:
            if tag in SYSTEM_PREDICATES:
                checks.append(verdict_to_dict(check_system(system, tag), gs))
            elif tag in TRANSIT_AXIOMS:
                from .model import canonical_transit_function
                try:
                    Rc = canonical_transit_function(system)
                except ModelError as exc:
                    raise CliError(str(exc)) from exc
                checks.append(verdict_to_dict(check_axiom(Rc, tag), gs))
            else:
                raise CliError(f"unknown predicate or axiom {tag!r}")
    report = Report(subject=args.file, checks=tuple(checks))
    _emit(report, args.json)
    return EXIT_OK if report.all_hold() else EXIT_FAIL


def _cmd_classify(args) -> int:
    _, R, system = _load(args.file, args.complete_singletons)
    if system is None:
        system = transit_sets(R)
    try:
        ladder = classify_ladder(system)
    except NotATSystemError as exc:
        raise CliError(str(exc)) from exc
    order = (tuple(ladder.order.label_sequence)
             if ladder.order is not None else None)
    report = Report(subject=args.file, checks=(),
                    ladder=dict(ladder.classes), order=order)
    _emit(report, args.json)
    return EXIT_OK


def _cmd_order(args) -> int:
    _, R, system = _load(args.file, args.complete_singletons)
    if system is None:
        system = transit_sets(R)
    res = find_compatible_order(system)
    gs = system.groundset
    if res.pre_pyramidal:
        report = Report(subject=args.file, checks=(),
                        order=tuple(res.order.label_sequence))
    else:
        obstruction = tuple(c.labels for c in res.obstruction)
        report = Report(subject=args.file, checks=(), obstruction=obstruction)
    _emit(report, args.json)
    return EXIT_OK if res.pre_pyramidal else EXIT_FAIL


def _cmd_closure(args) -> int:
    _, R, system = _load(args.file, args.complete_singletons)
    if system is None:
        system = transit_sets(R)
    closed = union_closure(system)
    doc = SystemDocument.from_set_system(closed)
    if args.json:
        print(json.dumps(doc.to_json_dict(), sort_keys=True))
    else:
        print(doc.to_text(), end="")
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    try:
        spec = enumeration.EnumerationSpec(
            args.n, tuple(args.filter or ()), args.require_full)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if args.n >= 5 and not args.long_run:
        raise CliError("n = 5 enumeration needs --long-run")
    count = 0
    for system in enumeration.enumerate_systems(spec):
        count += 1
        if not args.count_only:
            doc = SystemDocument.from_set_system(system)
            if args.json:
                print(json.dumps(doc.to_json_dict(), sort_keys=True))
            else:
                sets = " | ".join(" ".join(s) for s in doc.sets)
                print(sets)
    if args.count_only:
        print(count)
    return EXIT_OK


def _load_claims(path: str) -> tuple[enumeration.ImplicationClaim, ...]:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read claims file {path}: {exc}") from exc
    claims = []
    try:
        for row in data:
            claims.append(enumeration.ImplicationClaim(
                tuple(row["hypothesis"]), row["conclusion"],
                row.get("expected", "implies"),
                row.get("domain", "monotone"),
                row.get("stored_fixture")))
    except (KeyError, TypeError) as exc:
        raise CliError(f"malformed claims file {path}: {exc}") from exc
    return tuple(claims)


def _cmd_verify_implications(args) -> int:
    if args.n >= 5 and not args.long_run:
        raise CliError("n = 5 sweeps need --long-run")
    claims = (_load_claims(args.claims) if args.claims
              else enumeration.implication_battery())
    all_ok = True
    rows = []
    for claim in claims:
        try:
            rep = enumeration.verify_implication(claim, args.n,
                                                 long_run=args.long_run)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
        ok = rep.status in ("confirmed", "report")
        all_ok &= ok
        rows.append({"claim": claim.label(), "status": rep.status,
                     "instances_checked": rep.instances_checked,
                     "counterexample": rep.counterexample_doc})
        if not args.json:
            print(f"{claim.label():45s}  {rep.status}"
                  f"  ({rep.instances_checked} instances)")
    if args.json:
        print(json.dumps({"schema_version": docio.SCHEMA_VERSION,
                          "n": args.n, "claims": rows}, sort_keys=True))
    return EXIT_OK if all_ok else EXIT_FAIL


def _cmd_fixtures(args) -> int:
    all_ok = True
    rows = []
    for fixture, results, ok in fixtures_mod.run_all():
        all_ok &= ok
        if args.json:
            rows.append({"name": fixture.name, "ok": ok,
                         "results": {k: {"expected": e, "actual": a}
                                     for k, (e, a) in results.items()}})
        else:
            mark = "ok" if ok else "MISMATCH"
            print(f"{fixture.name}: {mark}")
            for key, (exp, act) in results.items():
                flag = "" if exp == act else "   <-- expected "
                tail = f"{flag}{exp}" if exp != act else ""
                print(f"  {key}: {act}{tail}")
    if args.json:
        print(json.dumps({"schema_version": docio.SCHEMA_VERSION,
                          "fixtures": rows}, sort_keys=True))
    return EXIT_OK if all_ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="transitclust",
        description="Transit-function axioms, clustering-system predicates, "
                    "and interval-order recognition.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_file=True):
        if with_file:
            p.add_argument("file", help="system or transit document "
                                        "(.txt grammar or .json)")
            p.add_argument("--complete-singletons", action="store_true",
                           help="add missing singletons to a parsed system")
        p.add_argument("--json", action="store_true",
                       help="machine-readable output")

    p = sub.add_parser("check", help="evaluate axioms or predicates")
    add_common(p)
    p.add_argument("--axiom", action="append", metavar="TAG",
                   help="check only this tag (repeatable)")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("classify", help="full classification ladder")
    add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("order", help="compatible order or obstruction")
    add_common(p)
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("closure", help="union closure of a system")
    add_common(p)
    p.set_defaults(func=_cmd_closure)

    p = sub.add_parser("enumerate", help="enumerate systems over n elements")
    add_common(p, with_file=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--filter", action="append", metavar="PREDICATE")
    p.add_argument("--require-full", action="store_true",
                   help="keep only systems containing the full ground set")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--long-run", action="store_true",
                   help="allow the 2^26-candidate sweep at n = 5")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("verify-implications",
                       help="sweep the implication battery")
    add_common(p, with_file=False)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--claims", metavar="FILE",
                   help="JSON claims file instead of the built-in battery")
    p.add_argument("--long-run", action="store_true")
    p.set_defaults(func=_cmd_verify_implications)

    p = sub.add_parser("fixtures", help="run built-in examples")
    add_common(p, with_file=False)
    p.set_defaults(func=_cmd_fixtures)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

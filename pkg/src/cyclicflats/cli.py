"""Command-line interface.

Every command prints one JSON report (or plain text with ``--text``).
Exit codes: 0 when the report passes, 1 when a check fails or a search
gives up, 2 for unreadable input or bad arguments.
"""

from __future__ import annotations

import argparse
import json
import sys

from .amalgam import AmalgamProblem, BudgetExceeded, DEFAULT_BUDGET, has_amalgam
from .axioms import check_z_axioms
from .checks import CHECKS, run_check
from .formats import (FormatError, dump, matrix_from_json, matroid_from_json, matroid_to_json,
                      presentation_from_json)
from .kernel import InvalidPresentation, Matroid, MatroidError
from .linear import column_matroid
from .modcuts import extend, forced_closure
from .properties import bundle_counterexample, intersection_property_holds
from .report import Report

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)


class _ArgError(Exception):
    pass


def _labels(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def _flat_list(m: Matroid, text: str):
    # "a,b;c,d" is two flats; an empty item is the empty set
    return [m.subset(_labels(part)) for part in text.split(";")]


def _load_matroid(path: str) -> Matroid:
    try:
        return matroid_from_json(path)
    except InvalidPresentation as exc:
        raise FormatError(str(exc)) from None


def cmd_check_axioms(args) -> Report:
    p = presentation_from_json(args.file)
    rep = Report("check-axioms")
    violations = check_z_axioms(p)
    rep.add("axiom violations", [], [v.to_json() for v in violations])
    rep.result = "valid" if not violations else "invalid"
    return rep


def cmd_rank(args) -> Report:
    m = _load_matroid(args.file)
    x = m.subset(_labels(args.set))
    rep = Report("rank", result=m.rank_of(x))
    rep.witnesses["set"] = x.labels()
    return rep


def cmd_closure(args) -> Report:
    m = _load_matroid(args.file)
    x = m.subset(_labels(args.set))
    rep = Report("closure", result=m.closure(x).labels())
    rep.witnesses["set"] = x.labels()
    return rep


def cmd_flats(args) -> Report:
    m = _load_matroid(args.file)
    if args.rank is None:
        flats = [{"set": m.elements(f).labels(), "rank": m.rank_mask(f)} for f in m.flat_masks()]
    else:
        flats = [{"set": f.labels(), "rank": args.rank} for f in m.flats(args.rank)]
    return Report("flats", result=flats)


def cmd_circuits(args) -> Report:
    m = _load_matroid(args.file)
    return Report("circuits", result=[c.labels() for c in m.circuits()])


def cmd_modular_cut_min(args) -> Report:
    m = _load_matroid(args.file)
    cut = forced_closure(m, _flat_list(m, args.flats), trace=True)
    rep = Report("modular-cut-min", result=cut.to_json())
    rep.witnesses["forcing_steps"] = [s.to_json() for s in cut.trace]
    return rep


def cmd_extend(args) -> Report:
    m = _load_matroid(args.file)
    cut = forced_closure(m, _flat_list(m, args.flats))
    ext = extend(m, cut, args.label)
    return _matroid_output("extend", ext, args.output)


def cmd_from_matrix(args) -> Report:
    a = matrix_from_json(args.file)
    return _matroid_output("from-matrix", column_matroid(a), args.output)


def _matroid_output(command: str, m: Matroid, path) -> Report:
    data = matroid_to_json(m)
    rep = Report(command)
    if path:
        dump(data, path)
        rep.result = {"written": str(path), "size": m.size, "rank": m.rank}
    else:
        rep.result = data
    return rep


def cmd_bundle(args) -> Report:
    m = _load_matroid(args.file)
    q = bundle_counterexample(m)
    rep = Report("bundle")
    rep.add("bundle condition holds", True, q is None)
    if q is not None:
        rep.witnesses["quadruple"] = q.to_json()
    return rep


def cmd_ip(args) -> Report:
    m = _load_matroid(args.file)
    res = intersection_property_holds(m)
    rep = Report("ip")
    rep.add("intersection property holds", True, res.holds)
    rep.witnesses.update(res.to_json())
    return rep


def cmd_amalgam(args) -> Report:
    n1, n2 = _load_matroid(args.file1), _load_matroid(args.file2)
    rep = Report("amalgam")
    try:
        found = has_amalgam(AmalgamProblem(n1, n2), budget=args.budget)
    except BudgetExceeded as exc:
        rep.error = str(exc)
        rep.witnesses["explored"] = exc.explored
        return rep
    rep.add("amalgam exists", True, found is not None)
    if found is not None:
        rep.result = matroid_to_json(found)
    return rep


def cmd_paper_verify(args) -> list[Report]:
    names = args.check or list(CHECKS)
    return [run_check(name) for name in names]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cyclicflats", description="Matroids presented by cyclic flats.")
    parser.add_argument("--text", action="store_true", help="plain text instead of JSON")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text, *, file=True):
        p = sub.add_parser(name, help=help_text)
        if file:
            p.add_argument("file")
        p.set_defaults(func=func)
        return p

    add("check-axioms", cmd_check_axioms, "validate a cyclic-flat presentation")
    for name, func in (("rank", cmd_rank), ("closure", cmd_closure)):
        add(name, func, f"{name} of a set").add_argument("--set", required=True,
                                                        help="comma-separated labels")
    add("flats", cmd_flats, "list flats").add_argument("--rank", type=int)
    add("circuits", cmd_circuits, "list circuits")
    add("modular-cut-min", cmd_modular_cut_min, "least modular cut containing flats").add_argument(
        "--flats", required=True, help="flats separated by ';', labels by ','")
    p = add("extend", cmd_extend, "extend by the least modular cut containing flats")
    p.add_argument("--flats", required=True)
    p.add_argument("--label", required=True)
    p.add_argument("-o", "--output")
    add("from-matrix", cmd_from_matrix, "column matroid of an exact matrix").add_argument("-o", "--output")
    add("bundle", cmd_bundle, "check the bundle condition (rank 4)")
    add("ip", cmd_ip, "check the intersection property")
    p = add("amalgam", cmd_amalgam, "search for an amalgam of two matroids", file=False)
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p = add("paper-verify", cmd_paper_verify, "run the built-in verification suite", file=False)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true")
    group.add_argument("--check", action="append", choices=list(CHECKS))
    return parser


def _emit(reports: list[Report], text: bool, out) -> None:
    if text:
        print("\n".join(r.to_text() for r in reports), file=out)
    elif len(reports) == 1:
        print(json.dumps(reports[0].to_json(), indent=2, ensure_ascii=False), file=out)
    else:
        status = "pass" if all(r.ok for r in reports) else "fail"
        body = {"command": "paper-verify", "status": status, "reports": [r.to_json() for r in reports]}
        print(json.dumps(body, indent=2, ensure_ascii=False), file=out)


def _usage(message: str, text: bool) -> int:
    if text:
        print(f"error: {message}", file=sys.stderr)
    else:
        print(json.dumps({"status": "error", "error": message}), file=sys.stderr)
    return EXIT_USAGE


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    text = "--text" in argv
    try:
        args = build_parser().parse_args(argv)
    except _ArgError as exc:
        return _usage(str(exc), text)
    try:
        result = args.func(args)
    except (FormatError, MatroidError, ValueError) as exc:
        # BudgetExceeded and check failures are handled inside the commands
        return _usage(f"{type(exc).__name__}: {exc}", text)
    reports = result if isinstance(result, list) else [result]
    _emit(reports, args.text, sys.stdout)
    return EXIT_PASS if all(r.ok for r in reports) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

"""``isomon`` command-line front end.

Exit codes: 0 all checks pass, 1 refuted, 2 inconclusive (limits hit),
3 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Optional, Sequence

from . import partial_injection as pi
from .errors import IoFailure, IsomonError, LimitExceeded
from .forms import build_forms, check_bijection
from .monoid_families import closure, domain_census, generating_set
from .presentations import (
    ALPHABET_OF_KIND,
    KINDS,
    build_presentation,
    check_relations,
    evaluate,
    format_word,
    parse_word,
    standard_assignment,
)
from .report import TOOL_VERSION, Check, VerificationReport, emit_report, write_report
from .rewrite.completion import CompletionLimits, parse_precedence
from .rewrite.rules import RewriteRule, apply_at
from .rewrite.search import DEFAULT_MAX_DEPTH, DEFAULT_MAX_STATES, Searcher, SearchLimits
from .verifier.guess_prove import resolve_jobs
from .verifier.pipeline import chain, extend, full_report, kb_report, prove
from .verifier.strata import check_case_three

EXIT_USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with 2
        raise UsageError(message)


def parse_n(text: str) -> list[int]:
    """``"5"`` -> [5]; ``"3..6"`` -> [3, 4, 5, 6]."""
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not m:
        raise argparse.ArgumentTypeError(f"bad n or n-range {text!r} (use N or A..B)")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    if lo < 3:
        raise argparse.ArgumentTypeError("n must be at least 3")
    return list(range(lo, hi + 1))


def _common(p: argparse.ArgumentParser, *, n_required: bool = True) -> None:
    p.add_argument("--n", type=parse_n, required=n_required, help="ground-set size N, or a range A..B")
    p.add_argument("--json", nargs="?", const="-", metavar="PATH",
                   help="write the JSON report to PATH (standard output if PATH is omitted)")
    p.add_argument("--no-timings", action="store_true", help="omit timing fields from JSON output")


def _limits(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES, help="search state budget per query")
    p.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH, help="search depth budget per query")
    p.add_argument("--max-word-length", type=int, default=None,
                   help="cap on intermediate word length (default: longest endpoint + max(4, n))")


def _jobs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: $ISOMON_JOBS or 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="isomon", description="Partial-isometry monoid workbench.")
    parser.add_argument("--version", action="version", version=f"isomon {TOOL_VERSION}")
    sub = parser.add_subparsers(dest="verb", metavar="VERB", parser_class=_Parser)

    p = sub.add_parser("enumerate", help="list the elements of ODP_n or DP_n")
    p.add_argument("--family", choices=["odp", "dp"], required=True)
    p.add_argument("--n", type=parse_n, required=True, help="ground-set size N")
    p.add_argument("--out", help="write elements to this file instead of standard output")

    p = sub.add_parser("census", help="ODP_n elements with a given domain")
    p.add_argument("--n", type=parse_n, required=True, help="ground-set size N")
    p.add_argument("--domain", required=True, help="comma-separated domain points, e.g. 3,5,6")

    p = sub.add_parser("verify-relations", help="check a relation family under the standard assignment")
    p.add_argument("--kind", choices=KINDS, required=True)
    _common(p)

    p = sub.add_parser("forms", help="list the normal-form words W")
    p.add_argument("--stratum", type=int, default=None, help="only words of rank K")
    p.add_argument("--check-bijection", action="store_true", help="verify evaluation is a bijection onto ODP_n")
    _common(p)

    p = sub.add_parser("derive", help="search for a derivation between two words")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--from", dest="src", required=True, help="start word, e.g. 'x3 x4 x3'")
    p.add_argument("--to", dest="dst", required=True, help="end word ('1' is the empty word)")
    _common(p)
    _limits(p)

    p = sub.add_parser("kb", help="Knuth-Bendix completion and irreducible-word count")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--precedence", default=None, help="letter order, e.g. 'x1<x2<x3<h'")
    p.add_argument("--max-rules", type=int, default=CompletionLimits().max_rules)
    p.add_argument("--max-rounds", type=int, default=CompletionLimits().max_rounds)
    p.add_argument("--rules", action="store_true", help="print the completed rule set")
    _common(p)

    p = sub.add_parser("prove", help="Guess-and-Prove for <A|R> or <B|Rbar>")
    p.add_argument("--kind", choices=["R", "Rbar"], required=True)
    p.add_argument("--drop", action="append", default=[], metavar="TAG",
                   help="remove a relation before proving (repeatable)")
    p.add_argument("--table", action="store_true", help="include the closure table in JSON output")
    _common(p)
    _limits(p)
    _jobs(p)

    p = sub.add_parser("extend", help="build <B|Rbar> and Wbar from <A|R> and prove it")
    p.add_argument("--table", action="store_true", help="include the closure table in JSON output")
    _common(p)
    _limits(p)
    _jobs(p)

    p = sub.add_parser("chain", help="Rbar -> U equivalences and U -> V elimination")
    _common(p)
    _limits(p)

    p = sub.add_parser("report", help="run every check over an n-range")
    _common(p)
    _limits(p)
    _jobs(p)
    return parser


def _search_limits(args) -> SearchLimits:
    try:
        return SearchLimits(args.max_word_length, args.max_states, args.max_depth)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _single_n(args) -> int:
    if len(args.n) != 1:
        raise UsageError(f"{args.verb} takes a single n, not a range")
    return args.n[0]


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _finish(args, report: VerificationReport, extras: Optional[dict] = None, text: bool = True) -> int:
    if text and args.json != "-":
        _out(report.to_text())
    if args.json:
        write_report(emit_report(report, "json", timings=not args.no_timings, extras=extras), args.json)
    return report.exit_code


def _combine(name: str, reports: list[VerificationReport], kind: Optional[str], ns: list[int]) -> VerificationReport:
    if len(reports) == 1:
        return reports[0]
    out = VerificationReport(name, n=f"{ns[0]}..{ns[-1]}", kind=kind)
    for n, r in zip(ns, reports):
        out.merge(r, prefix=f"n={n} ")
    return out


def cmd_enumerate(args) -> int:
    n = _single_n(args)
    kind = "A" if args.family == "odp" else "B"
    M = closure(generating_set(kind, n), family=args.family.upper())
    lines = "".join(pi.render(a) + "\n" for a in M.sorted())
    if args.out:
        write_report(lines.encode("utf-8"), args.out)
    else:
        sys.stdout.write(lines)
    return 0


def cmd_census(args) -> int:
    n = _single_n(args)
    try:
        X = [int(t) for t in args.domain.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad domain {args.domain!r}") from None
    c = domain_census(n, X)
    record = {
        "n": n,
        "domain": sorted(set(X)),
        "coextensive_count": c.coextensive_count,
        "extensive_count": c.extensive_count,
        "total": c.total,
        "elements": [pi.render(a) for a in c.elements],
    }
    _out(json.dumps(record, indent=2, sort_keys=True))
    return 0


def cmd_verify_relations(args) -> int:
    reports = []
    for n in args.n:
        p = build_presentation(args.kind, n)
        reports.append(check_relations(p, standard_assignment(ALPHABET_OF_KIND[args.kind], n)))
    return _finish(args, _combine("relations", reports, args.kind, args.n))


def cmd_forms(args) -> int:
    reports = []
    for n in args.n:
        c = build_forms(n)
        if args.json != "-":
            for e in c.entries:
                if args.stratum is None or e.rank == args.stratum:
                    _out(f"{format_word(e.word)}\t{e.label}")
        if args.check_bijection:
            reports.append(check_bijection(c))
        else:
            r = VerificationReport("forms", n=n, kind="W")
            r.add(Check("catalog built", True, {"words": len(c)}))
            reports.append(r)
    report = _combine("forms", reports, "W", args.n)
    return _finish(args, report, text=args.check_bijection)


def cmd_derive(args) -> int:
    n = _single_n(args)
    p = build_presentation(args.kind, n)
    a, b = parse_word(args.src), parse_word(args.dst)
    limits = _search_limits(args)
    for w in (a, b):
        bad = set(w) - set(p.alphabet)
        if bad:
            raise UsageError(f"letter {sorted(bad)[0]!r} is not in the {args.kind} alphabet")
    assignment = standard_assignment("B", n)
    report = VerificationReport("derive", n=n, kind=args.kind, limits=limits.to_dict())
    extras = {}
    try:
        d = Searcher(p.relations, p.alphabet, n=n).derive(a, b, limits, assignment=assignment)
    except LimitExceeded as exc:
        report.add(Check(f"{format_word(a)} = {format_word(b)}", "inconclusive", {"reason": str(exc)}))
        return _finish(args, report)
    if d is None:
        # soundness lets evaluation rule a derivation out, never a search miss
        status = "fail" if evaluate(a, assignment) != evaluate(b, assignment) else "inconclusive"
        report.add(Check(f"{format_word(a)} = {format_word(b)}", status,
                         {"reason": "no derivation within the length bound"}))
        return _finish(args, report)
    report.add(Check(f"{format_word(a)} = {format_word(b)}", True, {"steps": len(d), "max_length": d.max_length}))
    extras["derivation"] = d.to_dict()
    if args.json != "-":
        w = d.start
        _out(format_word(w))
        by_tag = p.by_tag()
        for s in d.steps:
            w = apply_at(w, RewriteRule.from_relation(by_tag[s.origin], s.orientation), s.position)
            _out(f"  -> {format_word(w)}    [{s.origin} {s.orientation} @{s.position}]")
    return _finish(args, report, extras, text=False)


def cmd_kb(args) -> int:
    reports, extras = [], {}
    limits = CompletionLimits(args.max_rules, args.max_rounds)
    prec = parse_precedence(args.precedence) if args.precedence else None
    for n in args.n:
        try:
            report, s = kb_report(args.kind, n, prec, limits)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        reports.append(report)
        if s is not None:
            if args.rules and args.json != "-":
                for r in s.rules:
                    _out(str(r))
            extras.setdefault("rules", {})[str(n)] = [str(r) for r in s.rules]
            if args.json != "-":
                count = report.checks[-1].witness["irreducible"]
                _out(f"n={n}: {len(s)} rules, {count} irreducible words")
    return _finish(args, _combine("kb", reports, args.kind, args.n), extras)


def _prove_like(args, run) -> int:
    limits = _search_limits(args)
    jobs = resolve_jobs(args.jobs)
    reports, extras, codes = [], {}, []
    for n in args.n:
        gp, report = run(n, limits, jobs)
        reports.append(report)
        codes.append(gp.exit_code)
        if args.json != "-":
            _out(f"n={n}: verdict {gp.verdict}" + (
                f"; failing pairs: {', '.join(f'({format_word(w)}, {x})' for w, x in gp.failing_pairs)}"
                if gp.failing_pairs else ""))
        if getattr(args, "table", False):
            extras.setdefault("closure_table", {})[str(n)] = [e.to_dict() for e in gp.closure_table.values()]
        extras.setdefault("verdict", {})[str(n)] = gp.verdict
    report = _combine("prove", reports, reports[0].kind, args.n)
    code = _finish(args, report, extras)
    # a refuted verdict wins over an inconclusive one
    return 1 if 1 in codes else 2 if 2 in codes else code


def cmd_prove(args) -> int:
    def run(n, limits, jobs):
        gp, c = prove(args.kind, n, limits, jobs=jobs, drop=args.drop)
        report = gp.report
        if c is not None and not args.drop:
            report.merge(check_case_three(gp, c), prefix="case III: ")
        return gp, report

    return _prove_like(args, run)


def cmd_extend(args) -> int:
    def run(n, limits, jobs):
        gp, _ = extend(n, limits, jobs=jobs)
        return gp, gp.report

    return _prove_like(args, run)


def cmd_chain(args) -> int:
    limits = _search_limits(args)
    reports = [chain(n, limits) for n in args.n]
    return _finish(args, _combine("chain", reports, "U->V", args.n))


def cmd_report(args) -> int:
    limits = _search_limits(args)
    report = full_report(args.n, limits, jobs=resolve_jobs(args.jobs))
    return _finish(args, report)


COMMANDS = {
    "enumerate": cmd_enumerate,
    "census": cmd_census,
    "verify-relations": cmd_verify_relations,
    "forms": cmd_forms,
    "derive": cmd_derive,
    "kb": cmd_kb,
    "prove": cmd_prove,
    "extend": cmd_extend,
    "chain": cmd_chain,
    "report": cmd_report,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.verb is None:
            raise UsageError("missing verb; see isomon --help")
        return COMMANDS[args.verb](args)
    except UsageError as exc:
        sys.stderr.write(f"isomon: error: {exc}\n")
        return EXIT_USAGE
    except LimitExceeded as exc:
        sys.stderr.write(f"isomon: inconclusive: {exc}\n")
        return 2
    except (IsomonError, IoFailure) as exc:
        sys.stderr.write(f"isomon: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

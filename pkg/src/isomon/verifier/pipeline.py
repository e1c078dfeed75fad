"""End-to-end pipelines used by the CLI and the aggregate report."""

from __future__ import annotations

import time
from typing import Iterable, Optional, Sequence

from .. import partial_injection as pi
from ..errors import LimitExceeded, MismatchAgainstV
from ..forms import build_extension_forms, build_forms, check_bijection, check_extension_forms, forms_size_formula
from ..monoid_families import (
    cardinality_formulas,
    closure,
    domain_census,
    generating_set,
    minimal_generating_check,
    verify_decomposition,
)
from ..presentations import KINDS, build_presentation, check_relations, relation_count_formula, standard_assignment
from ..report import FAIL, INCONCLUSIVE, PASS, Check, VerificationReport
from ..rewrite.completion import CompletionLimits, count_irreducible, contains_relations, kb_complete
from ..rewrite.search import SearchLimits
from .chain import check_U_equivalences, derive_V_from_U
from .extension import build_extension_presentation, check_against_Rbar, extension_lemmas, dp_extension_spec
from .guess_prove import GuessProveReport, guess_and_prove
from .strata import check_case_three

# largest n each expensive check runs at inside full_report
CAPS = {
    "enumeration": 8,
    "forms": 7,
    "extension_forms": 5,
    "prove_R": 5,
    "prove_Rbar": 4,
    "U_equivalences": 5,
    "V_from_U": 6,
    "kb": 4,
    "minimal_A": 6,
    "generates_C": 7,
}

# the six maps with domain {3,5,6} in ODP_9
CENSUS_EXAMPLE = (
    "n=9; 3->1 5->3 6->4",
    "n=9; 3->2 5->4 6->5",
    "n=9; 3->3 5->5 6->6",
    "n=9; 3->4 5->6 6->7",
    "n=9; 3->5 5->7 6->8",
    "n=9; 3->6 5->8 6->9",
)


def prove(kind: str, n: int, limits: SearchLimits = SearchLimits(), *, jobs=None, drop: Sequence[str] = ()):
    """Guess-and-Prove for ``<A|R>`` (kind R) or ``<B|Rbar>`` (kind Rbar)."""
    if kind == "R":
        c = build_forms(n)
        p = build_presentation("R", n).without(*drop) if drop else build_presentation("R", n)
        gp = guess_and_prove(p, standard_assignment("A", n), closure(generating_set("A", n), family="ODP"),
                             c.words, limits, jobs=jobs)
        return gp, c
    if kind == "Rbar":
        gp, _ = extend(n, limits, jobs=jobs, drop=drop)
        return gp, None
    raise ValueError(f"prove supports kinds R and Rbar, not {kind!r}")


def extend(n: int, limits: SearchLimits = SearchLimits(), *, jobs=None, drop: Sequence[str] = ()):
    """Build ``<B|Rbar>`` and ``Wbar`` from ``<A|R>`` and W, then prove it defines DP_n."""
    c = build_forms(n)
    ext = build_extension_forms(n, c)
    base = guess_and_prove(build_presentation("R", n), standard_assignment("A", n),
                           closure(generating_set("A", n), family="ODP"), c.words, limits, jobs=jobs)
    T = closure(generating_set("B", n), family="DP")
    spec = dp_extension_spec(n, ext)
    p, w_bar = build_extension_presentation(spec, T)
    pre = VerificationReport("extension", n=n, kind="Rbar", limits=limits.to_dict())
    pre.add(Check("constructed presentation equals Rbar", check_against_Rbar(p),
                  {"relations": len(p), "formula": relation_count_formula("Rbar", n)}))
    pre.add(Check("|Wbar| = |DP_n|", len(w_bar) == len(T),
                  {"Wbar": len(w_bar), "DP": len(T), "W_alpha": len(ext.w_alpha), "W_beta": len(ext.w_beta),
                   "W_alpha literally in W": ext.literal_in_w}))
    base_status = {"defined": PASS, "inconclusive": INCONCLUSIVE}.get(base.verdict, FAIL)
    pre.add(Check("base presentation <A|R> certified", base_status, {"verdict": base.verdict}))
    lemmas = extension_lemmas(base.derivations(), c, ext.w_alpha) if base.verdict == "defined" else []
    if drop:
        p = p.without(*drop)
    gp = guess_and_prove(p, standard_assignment("B", n), T, w_bar, limits, lemmas=lemmas, jobs=jobs)
    pre.merge(gp.report)
    gp.report = pre
    return gp, ext


def kb_report(kind: str, n: int, precedence=None, limits=CompletionLimits()) -> tuple[VerificationReport, object]:
    p = build_presentation(kind, n)
    expected = {"R": cardinality_formulas(n).odp, "V": cardinality_formulas(n).dp,
                "Rbar": cardinality_formulas(n).dp, "U": cardinality_formulas(n).dp}[kind]
    if not isinstance(limits, CompletionLimits):
        limits = CompletionLimits.from_search(limits)
    report = VerificationReport("kb", n=n, kind=kind, limits=limits.to_dict())
    t0 = time.perf_counter()
    try:
        s = kb_complete(p, precedence, limits)
    except LimitExceeded as exc:
        report.add(Check("completion terminated", INCONCLUSIVE, {"reason": str(exc)}))
        return report, None
    report.limits["precedence"] = "<".join(s.precedence)
    count = count_irreducible(s)
    report.add(Check("completion terminated", True,
                     {"rules": len(s), "rounds": s.rounds, "precedence": "<".join(s.precedence)},
                     (time.perf_counter() - t0) * 1000))
    report.add(Check("every rule decreases in shortlex", s.is_decreasing()))
    report.add(Check("all critical pairs join", s.critical_pairs_join()))
    report.add(Check("rewriting contains the presentation", contains_relations(s, p.relations)))
    report.add(Check("irreducible words = |M|", count == expected, {"irreducible": count, "expected": expected}))
    return report, s


def chain(n: int, limits: SearchLimits = SearchLimits()) -> VerificationReport:
    report = VerificationReport("chain", n=n, kind="U->V", limits=limits.to_dict())
    report.merge(check_U_equivalences(n, limits), prefix="U: ")
    try:
        v = derive_V_from_U(n, limits)
    except MismatchAgainstV as exc:
        v = exc.report
    report.merge(v, prefix="V: ")
    return report


def counts_table(ns: Iterable[int] = range(3, 9)) -> Check:
    rows = []
    ok = True
    for n in ns:
        row = {"n": n}
        for kind in KINDS:
            built, formula = len(build_presentation(kind, n)), relation_count_formula(kind, n)
            row[kind] = built
            ok &= built == formula
        c = build_forms(n)
        row["W"] = len(c)
        ok &= len(c) == sum(forms_size_formula(n, k) for k in range(n + 1)) == cardinality_formulas(n).odp
        rows.append(row)
    return Check("relation and forms counts vs closed forms", ok, {"table": rows})


def census_example() -> VerificationReport:
    report = VerificationReport("census", n=9, kind="ODP")
    c = domain_census(9, {3, 5, 6})
    report.add(Check("counts 3 co-extensive, 4 extensive, 6 total",
                     (c.coextensive_count, c.extensive_count, c.total) == (3, 4, 6),
                     {"coextensive": c.coextensive_count, "extensive": c.extensive_count, "total": c.total}))
    got = tuple(pi.render(a) for a in c.elements)
    report.add(Check("the six maps", got == CENSUS_EXAMPLE, {"elements": list(got)}))
    return report


def cardinality_report(n: int) -> VerificationReport:
    report = VerificationReport("cardinalities", n=n, kind="ODP/DP")
    f = cardinality_formulas(n)
    sizes = {k: len(closure(generating_set(k, n))) for k in "ABC"}
    report.add(Check("|<A>| = 3.2^n - 2(n+1)", sizes["A"] == f.odp, {"closure": sizes["A"], "formula": f.odp}))
    report.add(Check("|<B>| = |<C>| = 3.2^(n+1) - (n+2)^2 - 1", sizes["B"] == sizes["C"] == f.dp,
                     {"B": sizes["B"], "C": sizes["C"], "formula": f.dp}))
    return report


def _guard(report: VerificationReport, name: str, fn):
    """Run one sub-check; a budget overrun becomes an inconclusive entry."""
    t0 = time.perf_counter()
    try:
        sub = fn()
    except LimitExceeded as exc:
        report.add(Check(name, INCONCLUSIVE, {"reason": str(exc)}, (time.perf_counter() - t0) * 1000))
        return None
    if isinstance(sub, VerificationReport):
        report.merge(sub, prefix=f"{name}: ", limits=False)
    elif isinstance(sub, Check):
        report.add(sub)
    return sub


def full_report(
    n_range: Iterable[int],
    limits: SearchLimits = SearchLimits(),
    *,
    jobs: Optional[int] = None,
    caps: Optional[dict] = None,
) -> VerificationReport:
    """Every check for every n in range, subject to ``caps`` on the expensive ones."""
    caps = {**CAPS, **(caps or {})}
    ns = list(n_range)
    report = VerificationReport("full", n=f"{ns[0]}..{ns[-1]}" if ns else None, kind="all",
                                limits={**limits.to_dict(), "caps": caps})
    t0 = time.perf_counter()
    _guard(report, "counts", lambda: counts_table(range(3, 9)))
    _guard(report, "census", census_example)
    for n in ns:
        g = lambda name, fn: _guard(report, f"n={n} {name}", fn)  # noqa: E731
        if n <= caps["enumeration"]:
            g("cardinalities", lambda: cardinality_report(n))
            g("decomposition", lambda: verify_decomposition(n))
        for kind in KINDS:
            alpha = {"R": "A", "Rbar": "B", "U": "B", "V": "C"}[kind]
            g(f"relations {kind}", lambda: check_relations(build_presentation(kind, n), standard_assignment(alpha, n)))
        if n <= caps["forms"]:
            g("forms", lambda: check_bijection(build_forms(n)))
        if n <= caps["extension_forms"]:
            g("extension forms", lambda: check_extension_forms(build_extension_forms(n)))
        if n <= caps["minimal_A"]:
            g("A minimal", lambda: minimal_generating_check(generating_set("A", n), closure(generating_set("A", n))))
        if n <= caps["generates_C"]:
            g("C minimal", lambda: minimal_generating_check(generating_set("C", n), closure(generating_set("B", n))))
        if n <= caps["prove_R"]:
            gp, c = prove("R", n, limits, jobs=jobs)
            report.merge(gp.report, prefix=f"n={n} prove R: ", limits=False)
            report.merge(check_case_three(gp, c), prefix=f"n={n} case III: ", limits=False)
        if n <= caps["prove_Rbar"]:
            gp, _ = extend(n, limits, jobs=jobs)
            report.merge(gp.report, prefix=f"n={n} prove Rbar: ", limits=False)
        if n <= caps["U_equivalences"]:
            g("U", lambda: check_U_equivalences(n, limits))
        if n <= caps["V_from_U"]:
            g("V", lambda: _v_report(n, limits))
        if n <= caps["kb"]:
            for kind in ("R", "V"):
                g(f"kb {kind}", lambda: kb_report(kind, n, None, limits)[0])
    report.elapsed_ms = (time.perf_counter() - t0) * 1000
    return report


def _v_report(n, limits):
    try:
        return derive_V_from_U(n, limits)
    except MismatchAgainstV as exc:
        return exc.report


__all__ = [
    "CAPS",
    "CENSUS_EXAMPLE",
    "GuessProveReport",
    "cardinality_report",
    "census_example",
    "chain",
    "counts_table",
    "extend",
    "full_report",
    "kb_report",
    "prove",
]

"""From Rbar to U (equivalence claims) and from U to V (generator elimination)."""

from __future__ import annotations

import time
from typing import Sequence

from ..errors import LimitExceeded, MismatchAgainstV
from ..monoid_families import generating_set_labels
from ..presentations import (
    Presentation,
    Relation,
    Word,
    build_presentation,
    format_word,
    relation_count_formula,
    standard_assignment,
    x,
)
from ..report import INCONCLUSIVE, PASS, Check, VerificationReport
from ..rewrite.rules import AS_WRITTEN, REVERSED, Derivation, Step, replay
from ..rewrite.search import Searcher, SearchLimits
from .tietze import T1, T2, TietzeStep, eliminate_generator, tietze_step


def _claims(n: int) -> list[tuple[str, list[Relation], list[Relation]]]:
    """(name, one side, other side) for each equivalence claim."""
    rb = build_presentation("Rbar", n)
    u = build_presentation("U", n)
    R = rb.family
    U = u.family
    return [
        ("1: R1 ~ Rbar1", R("R1"), U("Rbar1")),
        ("2: R3 ~ R4", R("R3"), R("R4")),
        ("3: R5 ~ Rbar7", R("R5"), U("Rbar7")),
        ("3: R7 ~ Rbar7", R("R7"), U("Rbar7")),
        ("4: R6 ~ Rbar8", R("R6"), U("Rbar8")),
        ("4: R8 ~ Rbar8", R("R8"), U("Rbar8")),
        ("5: R9 ~ Rbar10", R("R9"), U("Rbar10")),
        ("5: R10 ~ Rbar10", R("R10"), U("Rbar10")),
    ]


def _context(n: int) -> list[Relation]:
    rb = build_presentation("Rbar", n)
    return rb.family("NR0") + rb.family("NR1")


def _derive_all(
    targets: Sequence[Relation], source: Sequence[Relation], alphabet, n, limits
) -> tuple[str, dict]:
    """Derive every target from ``source``; status and witness."""
    s = Searcher(source, alphabet, n=n)
    a = standard_assignment("B", n)
    proofs, missing = [], []
    status = PASS
    for t in targets:
        try:
            d = s.derive(t.lhs, t.rhs, limits, assignment=a)
        except LimitExceeded as exc:
            d, reason = None, str(exc)
        else:
            reason = "no derivation within the length bound"
        if d is None:
            status = INCONCLUSIVE
            missing.append({"relation": t.tag, "reason": reason})
        else:
            proofs.append({"relation": t.tag, "steps": len(d), "derivation": d.to_dict()})
    return status, {"derived": proofs, "missing": missing}


def check_U_equivalences(n: int, limits: SearchLimits = SearchLimits()) -> VerificationReport:
    """Inter-derivability of each claim's two sides with NR0 and NR1 available."""
    t0 = time.perf_counter()
    report = VerificationReport("U-equivalences", n=n, kind="U", limits=limits.to_dict())
    alphabet = generating_set_labels("B", n)
    ctx = _context(n)
    for name, left, right in _claims(n):
        for src, dst, arrow in ((left, right, "=>"), (right, left, "<=")):
            t = time.perf_counter()
            if not dst:
                report.add(Check(f"{name} {arrow}", True, {"note": "empty family"}, 0.0))
                continue
            status, witness = _derive_all(dst, src + ctx, alphabet, n, limits)
            report.add(Check(f"{name} {arrow}", status, witness, (time.perf_counter() - t) * 1000))
    rb = build_presentation("Rbar", n)
    u = build_presentation("U", n)
    t = time.perf_counter()
    status, witness = _derive_all(rb.family("NR1"), u.family("NR0") + u.family("NRbar1"), alphabet, n, limits)
    report.add(Check("NR1 from NR0 + NRbar1", status, witness, (time.perf_counter() - t) * 1000))
    report.elapsed_ms = (time.perf_counter() - t0) * 1000
    return report


def _hh_reduce(w: Word) -> tuple[Word, list[int]]:
    """Delete ``h h`` factors leftmost first; positions of the deletions."""
    out: list[str] = []
    positions = []
    for lab in w:
        if lab == "h" and out and out[-1] == "h":
            out.pop()
            positions.append(len(out))
        else:
            out.append(lab)
    return tuple(out), positions


def _insertions(w: Word, positions: list[int]) -> list[Step]:
    """Steps taking the reduced word back to ``w`` (NR0 used right to left)."""
    return [Step(p, "NR0", REVERSED) for p in reversed(positions)]


def _reduction_proof(r: Relation, reduced: Relation, lp, rp) -> Derivation:
    """reduced.lhs -> r.lhs -> r.rhs -> reduced.rhs over {r, NR0}."""
    steps = _insertions(r.lhs, lp) + [Step(0, r.tag, AS_WRITTEN)]
    steps += [Step(p, "NR0", AS_WRITTEN) for p in rp]
    return Derivation(reduced.lhs, reduced.rhs, tuple(steps))


def _one_step(r: Relation, q: Relation) -> Derivation:
    """r derived from an identical (up to orientation) relation q."""
    orient = AS_WRITTEN if q.lhs == r.lhs else REVERSED
    return Derivation(r.lhs, r.rhs, (Step(0, q.tag, orient),))


def eliminate_to_C(n: int) -> tuple[Presentation, VerificationReport]:
    """U with x_{n-1} and x_j (m < j <= n-2) eliminated; every step certified."""
    report = VerificationReport("eliminate", n=n, kind="U")
    p = build_presentation("U", n)
    m = (n - 1) // 2
    elims = [(n - 1, n, f"NRbar1[{n}]")] + [(j, n - j - 1, f"NRbar1[{n - j - 1}]") for j in range(m + 1, n - 1)]
    for j, i, tag in elims:
        b = x(j)
        defn = Relation((b,), ("h", x(i), "h"), f"def[{b}]")
        # b -> b h h -> h x_i h
        d = Derivation(defn.lhs, defn.rhs, (Step(1, "NR0", REVERSED), Step(0, tag, REVERSED)))
        p = tietze_step(p, TietzeStep(T1, relation=defn, derivation=d))
        p = tietze_step(p, eliminate_generator(b, defn.rhs))
        report.add(Check(f"eliminate {b} = h {x(i)} h", True, {"derivation": d.to_dict()}))

    nr0 = Relation(("h", "h"), (), "NR0")
    out, changed = [], 0
    for r in p.relations:
        if r.tag == "NR0":
            out.append(r)
            continue
        lhs, lp = _hh_reduce(r.lhs)
        rhs, rp = _hh_reduce(r.rhs)
        if not lp and not rp:
            out.append(r)
            continue
        q = Relation(lhs, rhs, r.tag)
        fwd = _reduction_proof(r, q, lp, rp)
        replay(fwd, [r, nr0])
        # and back: r from q over {q, NR0}
        back = Derivation(
            r.lhs, r.rhs,
            tuple([Step(p_, "NR0", AS_WRITTEN) for p_ in lp] + [Step(0, q.tag, AS_WRITTEN)] + _insertions(r.rhs, rp)),
        )
        replay(back, [q, nr0])
        out.append(q)
        changed += 1
    report.add(Check("h h reductions certified both ways", True, {"relations": changed}))

    kept: list[Relation] = []
    trivial, dups = [], []
    for r in out:
        if r.is_trivial():
            trivial.append(r.tag)
            continue
        twin = next((q for q in kept if q.key() == r.key()), None)
        if twin is not None:
            replay(_one_step(r, twin), [twin])
            dups.append({"relation": r.tag, "duplicate_of": twin.tag})
            continue
        kept.append(r)
    report.add(Check("trivial relations dropped", True, {"tags": trivial}))
    report.add(Check("duplicate relations dropped", True, {"dropped": dups}))
    return Presentation(p.alphabet, tuple(kept), "custom", n), report


def derive_V_from_U(n: int, limits: SearchLimits = SearchLimits()) -> VerificationReport:
    """Eliminate generators from U and match the result against V.

    Relations left over after elimination, h h reduction, and removal of
    trivial and duplicate relations are reconciled with V via certified T1
    and T2 steps, each listed in the report.  Raises
    :class:`MismatchAgainstV` (carrying the report) if some residual cannot
    be certified.
    """
    t0 = time.perf_counter()
    derived, report = eliminate_to_C(n)
    report.name, report.limits = "V-from-U", limits.to_dict()
    V = build_presentation("V", n)
    vkeys = {r.key(): r for r in V.relations}
    report.add(Check("alphabet is C", set(derived.alphabet) == set(V.alphabet), {"alphabet": list(derived.alphabet)}))

    # present shared relations under their V names
    current = [vkeys.get(r.key(), r) for r in derived.relations]
    dkeys = {r.key() for r in current}
    missing = [r for r in V.relations if r.key() not in dkeys]
    extra = [r for r in current if r.key() not in vkeys]
    p = Presentation(V.alphabet, tuple(current), "custom", n)
    uncertified_extra, uncertified_missing = [], []

    for r in missing:
        d, reason = _search(p.relations, r, p, limits)
        if d is None:
            uncertified_missing.append(r)
            report.add(Check(f"T1 add {r.tag}", INCONCLUSIVE, {"relation": str(r), "reason": reason}))
            continue
        p = tietze_step(p, TietzeStep(T1, relation=r, derivation=d))
        report.add(Check(f"T1 add {r.tag}", True, {"relation": str(r), "derivation": d.to_dict()}))
    for r in extra:
        d, reason = _search([q for q in p.relations if q != r], r, p, limits)
        if d is None:
            uncertified_extra.append(r)
            report.add(Check(f"T2 delete {r.tag}", INCONCLUSIVE, {"relation": str(r), "reason": reason}))
            continue
        p = tietze_step(p, TietzeStep(T2, relation=r, derivation=d))
        report.add(Check(f"T2 delete {r.tag}", True, {"relation": str(r), "derivation": d.to_dict()}))

    final = {r.key() for r in p.relations}
    match = final == set(vkeys) and not uncertified_extra and not uncertified_missing
    report.add(
        Check(
            "result equals V",
            match if not (uncertified_extra or uncertified_missing) else INCONCLUSIVE,
            {
                "derived": len(derived.relations),
                "V": len(V.relations),
                "residual_added": [r.tag for r in missing],
                "residual_deleted": [str(r) for r in extra],
            },
        )
    )
    report.add(
        Check(
            "|V| = formula",
            len(V.relations) == relation_count_formula("V", n),
            {"V": len(V.relations), "formula": relation_count_formula("V", n)},
        )
    )
    report.elapsed_ms = (time.perf_counter() - t0) * 1000
    if uncertified_extra or uncertified_missing:
        raise MismatchAgainstV(
            [str(r) for r in uncertified_extra], [str(r) for r in uncertified_missing], report
        )
    return report


def _search(rels, r: Relation, p: Presentation, limits: SearchLimits):
    try:
        d = Searcher(rels, p.alphabet, n=p.n).derive(r.lhs, r.rhs, limits)
    except LimitExceeded as exc:
        return None, str(exc)
    return d, None if d is not None else "no derivation within the length bound"


def format_relations(rels: Sequence[Relation]) -> list[str]:
    return [f"{format_word(r.lhs)} = {format_word(r.rhs)}" for r in rels]

"""Target strata for products w x_j with w in W_{n-k,r}, r >= 2."""

from __future__ import annotations

from typing import Optional

from ..forms import FormsCatalog, _instantiate
from ..presentations import format_word
from ..report import INCONCLUSIVE, Check, VerificationReport
from .guess_prove import GuessProveReport

W0 = (0, None)


def _lab(rank: int, r: int):
    # W_{0,r} is read as W_0: rank 0 has the single form x_n^n
    return W0 if rank == 0 else (rank, r)


def case_three_targets(n: int, k: int, r: int) -> set[tuple[int, Optional[int]]]:
    """Allowed (rank, subset) labels for the forms of w x_j, w in W_{n-k,r}."""
    a, b = n - k, n - k - 1
    if r == 2:
        return {_lab(a, 2), _lab(b, 2), _lab(a, 1), _lab(b, 6), _lab(b, 7)}
    if r == 3 and k == 2:
        return {_lab(n - 3, 3), _lab(n - 2, 6), _lab(n - 2, 7)}
    if r == 3:
        return {_lab(a, 3), _lab(b, 3), _lab(a, 6), _lab(a, 7)}
    if r == 4:
        return {_lab(a, 4), _lab(b, 4), _lab(a, 1), _lab(b, 6)}
    if r == 5:
        return {_lab(a, 5), _lab(b, 5), _lab(a, 1), _lab(a, 4), _lab(b, 7)}
    if r == 6:
        return {_lab(a, 6), _lab(b, 6), _lab(a, 3), W0}
    if r == 7:
        return {_lab(a, 7), _lab(b, 7), _lab(a, 3)}
    raise ValueError(f"subset index {r} has no target list")


def family_labels(n: int) -> dict:
    """Every (rank, subset) family a literal form word is produced by."""
    out: dict = {}
    for w, rank, r in _instantiate(n):
        out.setdefault(w, set()).add((rank, r))
    return out


def check_case_three(gp: GuessProveReport, catalog: FormsCatalog) -> VerificationReport:
    n = catalog.n
    report = VerificationReport("case-III strata", n=n, kind="W")
    labels = family_labels(n)
    for e in catalog.entries:
        if e.subset is None or e.subset == 1:
            continue
        k = n - e.rank
        allowed = case_three_targets(n, k, e.subset)
        for j in range(1, n + 1):
            ent = gp.closure_table.get((e.word, f"x{j}"))
            name = f"{e.label} {format_word(e.word)} . x{j}"
            if ent is None or ent.target is None:
                report.add(Check(name, INCONCLUSIVE, {"reason": "no target found"}))
                continue
            got = labels.get(ent.target, set())
            ok = bool(got & allowed)
            witness = None if ok else {"target": format_word(ent.target), "labels": sorted(map(str, got))}
            report.add(Check(name, ok, witness))
    return report

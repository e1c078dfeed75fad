"""Guess-and-Prove: certify that a finite monoid is defined by a presentation."""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from ..errors import LimitExceeded
from ..monoid_families import MonoidSet
from ..presentations import Assignment, Presentation, Word, check_relations, evaluate, format_word
from ..report import FAIL, INCONCLUSIVE, PASS, Check, VerificationReport
from ..rewrite.rules import Derivation
from ..rewrite.search import Lemma, Searcher, SearchLimits

DEFINED, REFUTED = "defined", "refuted"
VERDICTS = (DEFINED, INCONCLUSIVE, REFUTED)


def resolve_jobs(jobs: Optional[int]) -> int:
    """``jobs`` if given, else ``$ISOMON_JOBS``, else 1."""
    if jobs is None:
        env = os.environ.get("ISOMON_JOBS", "").strip()
        jobs = int(env) if env else 1
    return max(1, int(jobs))


@dataclass
class ClosureEntry:
    word: Word
    letter: str
    target: Optional[Word]
    derivation: Optional[Derivation]
    status: str
    reason: Optional[str] = None

    def to_dict(self) -> dict:
        d = {
            "word": format_word(self.word),
            "letter": self.letter,
            "target": None if self.target is None else format_word(self.target),
            "status": self.status,
        }
        if self.derivation is not None:
            d["derivation"] = self.derivation.to_dict()
        if self.reason:
            d["reason"] = self.reason
        return d


@dataclass
class GuessProveReport:
    relations_hold: bool
    closure_table: dict[tuple[Word, str], ClosureEntry]
    cardinality_ok: bool
    bijection_ok: bool
    verdict: str
    report: VerificationReport
    sizes: dict = field(default_factory=dict)

    @property
    def failing_pairs(self) -> list[tuple[Word, str]]:
        return [k for k, e in self.closure_table.items() if e.status != PASS]

    @property
    def exit_code(self) -> int:
        return {DEFINED: 0, REFUTED: 1, INCONCLUSIVE: 2}[self.verdict]

    def derivations(self) -> dict[tuple[Word, str], Derivation]:
        return {k: e.derivation for k, e in self.closure_table.items() if e.derivation is not None}

    def to_dict(self, table: bool = True) -> dict:
        d = {
            "verdict": self.verdict,
            "relations_hold": self.relations_hold,
            "cardinality_ok": self.cardinality_ok,
            "bijection_ok": self.bijection_ok,
            "sizes": self.sizes,
            "report": self.report.to_dict(timings=False),
        }
        if table:
            d["closure_table"] = [e.to_dict() for e in self.closure_table.values()]
        return d


# worker-side state for the process pool
_WORKER: dict = {}


def _init_worker(relations, alphabet, lemmas, n, assignment):
    _WORKER["searcher"] = Searcher(relations, alphabet, lemmas=lemmas, n=n)
    _WORKER["assignment"] = assignment


def _solve(task, limits: SearchLimits):
    start, targets = task
    searcher, a = _WORKER["searcher"], _WORKER["assignment"]
    reason = "no derivation within the length bound"
    for t in targets:
        try:
            d = searcher.derive(start, t, limits, assignment=a)
        except LimitExceeded as exc:
            reason = str(exc)
            continue
        if d is not None:
            return t, d, None
    return None, None, reason


def _solve_chunk(chunk, limits):
    return [_solve(t, limits) for t in chunk]


def guess_and_prove(
    p: Presentation,
    a: Assignment,
    M: MonoidSet,
    W: Sequence[Word],
    limits: SearchLimits = SearchLimits(),
    *,
    lemmas: Iterable[Lemma] = (),
    jobs: Optional[int] = None,
) -> GuessProveReport:
    """Check the three Guess-and-Prove conditions for ``<X|R>``, ``M`` and ``W``.

    Condition 2 is checked through the sufficient local form: the empty word
    lies in ``W`` and every ``w x`` (w in W, x a letter) derives some word of
    ``W``.  Targets are picked by evaluation, since any sound derivation ends
    at a word of the same value.
    """
    t0 = time.perf_counter()
    W = [tuple(w) for w in W]
    lemmas = list(lemmas)
    report = VerificationReport("guess-and-prove", n=p.n, kind=p.kind, limits=limits.to_dict())

    rel = check_relations(p, a)
    report.merge(rel, prefix="relation ")
    relations_hold = rel.ok

    values = {}
    for w in W:
        values.setdefault(evaluate(w, a), []).append(w)
    members = set(M.elements)
    in_m = all(v in members for v in values)
    injective = len(values) == len(W)
    bijection_ok = in_m and injective and set(values) == members
    cardinality_ok = len(W) <= len(M)
    report.add(Check("empty word in W", () in set(W)))
    report.add(Check("W evaluates into M", in_m))
    report.add(Check("|W| <= |M|", cardinality_ok, {"W": len(W), "M": len(M)}))
    report.add(Check("evaluation W -> M is a bijection", bijection_ok, {"distinct": len(values), "M": len(M)}))

    table: dict[tuple[Word, str], ClosureEntry] = {}
    tasks, keys = [], []
    wset = set(W)
    for w in W:
        for x in p.alphabet:
            wx = w + (x,)
            if wx in wset:
                table[(w, x)] = ClosureEntry(w, x, wx, Derivation(wx, wx, (), len(wx)), PASS)
                continue
            targets = values.get(evaluate(wx, a), [])
            if not targets:
                # relations hold, so no consequence of R can reach W from here
                status = FAIL if relations_hold else INCONCLUSIVE
                table[(w, x)] = ClosureEntry(w, x, None, None, status, "no word of W has this value")
                continue
            table[(w, x)] = None  # placeholder keeps the table in W x alphabet order
            tasks.append((wx, targets))
            keys.append((w, x))

    results = _run(tasks, p, a, lemmas, limits, resolve_jobs(jobs))
    for (w, x), (target, d, reason) in zip(keys, results):
        if d is None:
            table[(w, x)] = ClosureEntry(w, x, None, None, INCONCLUSIVE, reason)
        else:
            table[(w, x)] = ClosureEntry(w, x, target, d, PASS)

    failing = [e for e in table.values() if e.status != PASS]
    worst = max((e.derivation.max_length for e in table.values() if e.derivation), default=0)
    statuses = {e.status for e in failing}
    closure_status = FAIL if FAIL in statuses else INCONCLUSIVE if failing else PASS
    report.add(
        Check(
            "closure: every w x derives a word of W",
            closure_status,
            {
                "entries": len(table),
                "found": len(table) - len(failing),
                "failing": [
                    {"word": format_word(e.word), "letter": e.letter, "reason": e.reason} for e in failing
                ],
                "longest_intermediate": worst,
            },
        )
    )

    refuted = not relations_hold or not in_m or not cardinality_ok or () not in wset or FAIL in statuses
    if refuted:
        verdict = REFUTED
    elif failing:
        verdict = INCONCLUSIVE
    else:
        verdict = DEFINED
        # bijective evaluation plus closure makes W a normal-form set, so |W| = |M|
        assert len(W) == len(M), "defined verdict with |W| != |M|"
    report.add(Check("|W| = |M|", len(W) == len(M), {"W": len(W), "M": len(M)}))
    report.elapsed_ms = (time.perf_counter() - t0) * 1000
    sizes = {"W": len(W), "M": len(M), "alphabet": len(p.alphabet), "relations": len(p.relations)}
    return GuessProveReport(relations_hold, table, cardinality_ok, bijection_ok, verdict, report, sizes)


def _run(tasks, p, a, lemmas, limits, jobs):
    if not tasks:
        return []
    init = (list(p.relations), tuple(p.alphabet), lemmas, p.n, a)
    if jobs <= 1 or len(tasks) < 2 * jobs:
        _init_worker(*init)
        return [_solve(t, limits) for t in tasks]
    # contiguous chunks keep result order equal to task order
    size = -(-len(tasks) // (jobs * 4))
    chunks = [tasks[i:i + size] for i in range(0, len(tasks), size)]
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=init) as ex:
        parts = list(ex.map(_solve_chunk, chunks, [limits] * len(chunks)))
    return [r for part in parts for r in part]

"""The normal-form word set W for <A|R> and the extension set Wbar over B."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Optional

from . import partial_injection as pi
from .errors import LimitExceeded, NotInMonoid, UnsupportedN
from .monoid_families import DEFAULT_BUDGET, closure, generating_set
from .partial_injection import PartialInjection
from .presentations import Assignment, Word, evaluate, power, standard_assignment, word
from .report import Check, VerificationReport


@dataclass(frozen=True)
class FormEntry:
    word: Word
    rank: int
    # r = 1..7 for W_{n-k,r}; None for the empty word, W_{n-1} and W_0
    subset: Optional[int]
    label: str


@dataclass
class FormsCatalog:
    n: int
    entries: list[FormEntry]
    value_of: dict = field(repr=False)
    word_of: dict = field(repr=False)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, w) -> bool:
        return tuple(w) in self.value_of

    @property
    def words(self) -> list[Word]:
        return [e.word for e in self.entries]

    @property
    def strata(self) -> dict[int, list[FormEntry]]:
        out: dict[int, list[FormEntry]] = {k: [] for k in range(self.n + 1)}
        for e in self.entries:
            out[e.rank].append(e)
        return out

    def entry(self, w) -> FormEntry:
        return self._by_word[tuple(w)]

    def __post_init__(self):
        self._by_word = {e.word: e for e in self.entries}


def _label(n: int, rank: int, r: Optional[int]) -> str:
    if r is None:
        return {n: "1", n - 1: "W_{n-1}", 0: "W_0"}[rank]
    return f"W_{{{rank},{r}}}"


def _instantiate(n: int) -> list[tuple[Word, int, Optional[int]]]:
    """Literal set-builder families, in a fixed order: (word, rank, subset)."""
    xs = lambda lo, hi, cnt: combinations(range(lo, hi + 1), cnt)  # noqa: E731
    out: list[tuple[Word, int, Optional[int]]] = [((), n, None)]
    out += [(word(i), n - 1, None) for i in range(1, n + 1)]
    out += [(word(n - 1, n), n - 1, None), (word(n, n - 1), n - 1, None)]
    for k in range(2, n):
        rk = n - k
        for ls in xs(1, n - 2, k - 1):
            top = ls[-1] if ls else 0
            out += [(word(ls, i), rk, 1) for i in range(top + 1, n + 1)]
        for ls in xs(1, n - 2, k - 1):
            out += [(word(ls, n - 1, n), rk, 2), (word(ls, n, n - 1), rk, 2)]
        for ls in xs(1, n - 2, k - 2):
            out.append((word(ls, n - 1, n - 2, n), rk, 3))
        for i in range(2, k):
            out += [(word(ls, power(n - 1, i)), rk, 4) for ls in xs(i, n - 2, k - i)]
        out.append((power(n - 1, k), rk, 4))
        for i in range(2, k):
            out += [(word(ls, power(n, i)), rk, 5) for ls in xs(1, n - i - 1, k - i)]
        out.append((power(n, k), rk, 5))
        for i in range(2, k):
            out += [(word(ls, power(n - 1, i - 1), n - i), rk, 6) for ls in xs(i - 1, n - 2, k - i)]
        out.append((word(power(n - 1, k - 1), n - k), rk, 6))
        for i in range(2, k):
            out += [(word(ls, n, 1, power(n, i - 2)), rk, 7) for ls in xs(1, n - i, k - i)]
        out.append((word(n, 1, power(n, k - 2)), rk, 7))
    out.append((power(n, n), 0, None))
    return out


def build_forms(n: int, assignment: Optional[Assignment] = None) -> FormsCatalog:
    if n < 3:
        raise UnsupportedN(f"forms need n >= 3, got {n}")
    a = assignment or standard_assignment("A", n)
    entries, seen = [], set()
    for w, rank, r in _instantiate(n):
        if w in seen:
            continue
        seen.add(w)
        entries.append(FormEntry(w, rank, r, _label(n, rank, r)))
    value_of = {e.word: evaluate(e.word, a) for e in entries}
    word_of: dict = {}
    for e in entries:
        word_of.setdefault(value_of[e.word], e.word)
    return FormsCatalog(n, entries, value_of, word_of)


def forms_size_formula(n: int, k: int) -> int:
    if k in (0, n):
        return 1
    return comb(n, k) + 2 * comb(n, k + 1)


def subset_size_formula(n: int, k: int, r: int) -> int:
    """Size of W_{n-k,r} for 2 <= k <= n-1."""
    if r == 1:
        return comb(n - 2, k) + 2 * comb(n - 2, k - 1)
    if r == 2:
        return 2 * comb(n - 2, k - 1)
    if r == 3:
        return comb(n - 2, k - 2)
    if r in (4, 5):
        return sum(comb(n - i - 1, k - i) for i in range(2, k + 1))
    if r in (6, 7):
        return sum(comb(n - i, k - i) for i in range(2, k + 1))
    raise ValueError(r)


def gould_sum(k: int, m: int) -> int:
    return sum(comb(i, k) for i in range(k, m + 1))


def check_bijection(c: FormsCatalog, target=None, *, budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """Evaluation of every catalog word is injective, rank-correct and onto ODP_n."""
    report = VerificationReport("forms-bijection", n=c.n, kind="W")
    t0 = time.perf_counter()
    if target is None:
        target = closure(generating_set("A", c.n), family="ODP", budget=budget)
    values = [c.value_of[e.word] for e in c.entries]
    distinct = set(values)
    report.add(
        Check(
            "pairwise distinct values",
            len(distinct) == len(values),
            {"words": len(values), "distinct": len(distinct)},
        )
    )
    report.add(Check("values inside ODP_n", distinct <= set(target.elements)))
    report.add(Check("|W| = |ODP_n|", len(values) == len(target), {"W": len(values), "ODP": len(target)}))
    bad = [e for e in c.entries if pi.rank(c.value_of[e.word]) != e.rank]
    report.add(Check("stratum k words have rank k", not bad, {"bad": len(bad)}))
    for k, ents in sorted(c.strata.items()):
        report.add(
            Check(
                f"|W_{k}| = formula",
                len(ents) == forms_size_formula(c.n, k),
                {"size": len(ents), "formula": forms_size_formula(c.n, k)},
            )
        )
    report.elapsed_ms = (time.perf_counter() - t0) * 1000
    return report


def word_for(c: FormsCatalog, a: PartialInjection) -> Word:
    try:
        return c.word_of[a]
    except KeyError:
        raise NotInMonoid(f"{pi.render(a)} has no form in the catalog") from None


def rank_one(n: int, i: int, j: int) -> PartialInjection:
    """alpha_{i,j}: the rank-one map i -> j."""
    return pi.make(n, [(i, j)])


@dataclass
class ExtensionForms:
    n: int
    u_words: dict[int, Word]
    v_words: dict[int, Word]
    w_alpha: list[Word]
    w_beta: list[Word]
    w_bar: list[Word]
    anchor: Word
    literal_in_w: int

    @property
    def working(self) -> list[Word]:
        return self.w_alpha + self.w_beta


def build_extension_forms(n: int, catalog: Optional[FormsCatalog] = None) -> ExtensionForms:
    """Swap W's rank <= 1 words for u_i x_n^(n-1) v_j and adjoin {w h : w in W_beta}."""
    c = catalog or build_forms(n)
    u = {i: word_for(c, rank_one(n, i, n)) for i in range(1, n + 1)}
    v = {j: word_for(c, rank_one(n, 1, j)) for j in range(1, n + 1)}
    anchor = power(n, n - 1)
    w_alpha = [u[i] + anchor + v[j] for i in range(1, n + 1) for j in range(1, n + 1)]
    w_alpha.append(power(n, n))
    w_beta = [e.word for e in c.entries if e.rank >= 2]
    w_bar = w_alpha + w_beta + [w + ("h",) for w in w_beta]
    literal = sum(1 for w in w_alpha if w in c)
    if len(set(w_bar)) != len(w_bar):
        raise LimitExceeded("extension forms collided")
    return ExtensionForms(n, u, v, w_alpha, w_beta, w_bar, anchor, literal)


def check_extension_forms(ext: ExtensionForms, *, budget: int = DEFAULT_BUDGET) -> VerificationReport:
    n = ext.n
    report = VerificationReport("extension-forms", n=n, kind="Wbar")
    A = standard_assignment("A", n)
    B = standard_assignment("B", n)
    odp = closure(generating_set("A", n), budget=budget)
    dp = closure(generating_set("B", n), budget=budget)
    work_vals = [evaluate(w, A) for w in ext.working]
    report.add(
        Check(
            "working set is a set of representatives of ODP_n",
            len(set(work_vals)) == len(work_vals) == len(odp) and set(work_vals) == set(odp.elements),
            {"working": len(work_vals), "odp": len(odp)},
        )
    )
    pairs_ok = all(
        evaluate(ext.u_words[i] + ext.anchor + ext.v_words[j], A) == rank_one(n, i, j)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
    )
    report.add(Check("u_i x_n^(n-1) v_j represents alpha_ij", pairs_ok))
    report.add(
        Check(
            "anchor is a factor of every W_alpha word",
            all(_has_factor(w, ext.anchor) for w in ext.w_alpha),
        )
    )
    bar_vals = {evaluate(w, B) for w in ext.w_bar}
    report.add(
        Check(
            "|Wbar| = |DP_n| and evaluation is onto",
            len(bar_vals) == len(ext.w_bar) == len(dp) and bar_vals == set(dp.elements),
            {"Wbar": len(ext.w_bar), "dp": len(dp), "W_alpha": len(ext.w_alpha), "W_beta": len(ext.w_beta)},
        )
    )
    report.add(
        Check(
            "W_alpha words literally in W",
            True,
            {"literal": ext.literal_in_w, "W_alpha": len(ext.w_alpha)},
        )
    )
    return report


def _has_factor(w: Word, f: Word) -> bool:
    k = len(f)
    return any(w[i:i + k] == f for i in range(len(w) - k + 1))

"""Bounded congruence search: derivations between words inside rho_R."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from ..errors import LimitExceeded
from ..kernels import expand
from ..presentations import Assignment, Relation, Word, evaluate
from .rules import AS_WRITTEN, REVERSED, Codec, Derivation, Step, max_length_of, replay

DEFAULT_MAX_STATES = 10**6
DEFAULT_MAX_DEPTH = 64


def default_slack(n: Optional[int]) -> int:
    # x_{n-1}^n = x_n^n needs an intermediate word of length 2n
    return max(4, n or 0)


@dataclass(frozen=True)
class SearchLimits:
    """Budget for one search.

    ``max_word_length=None`` means ``max(|a|, |b|) + default_slack(n)``.
    """

    max_word_length: Optional[int] = None
    max_states: int = DEFAULT_MAX_STATES
    max_depth: int = DEFAULT_MAX_DEPTH

    def __post_init__(self):
        for name in ("max_states", "max_depth"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_word_length is not None and self.max_word_length < 1:
            raise ValueError("max_word_length must be positive")

    def bound_for(self, a: Sequence, b: Sequence, n: Optional[int]) -> int:
        if self.max_word_length is not None:
            return self.max_word_length
        return max(len(a), len(b)) + default_slack(n)

    def to_dict(self) -> dict:
        return {
            "max_word_length": self.max_word_length if self.max_word_length is not None else "auto",
            "max_states": self.max_states,
            "max_depth": self.max_depth,
        }


@dataclass(frozen=True)
class Lemma:
    """A relation certified by a derivation over base relations."""

    relation: Relation
    proof: Derivation


class SoundnessError(AssertionError):
    pass


def _sides(codec: Codec, rules: Sequence[Relation]):
    sides, meta = [], []
    for idx, r in enumerate(rules):
        lhs, rhs = codec.encode(r.lhs), codec.encode(r.rhs)
        if lhs == rhs:
            continue
        sides.append((lhs, rhs))
        meta.append((idx, AS_WRITTEN))
        sides.append((rhs, lhs))
        meta.append((idx, REVERSED))
    return sides, meta


class Searcher:
    """Reusable search context over a fixed rule set (plus optional lemmas)."""

    def __init__(
        self,
        relations: Iterable[Relation],
        alphabet: Sequence[str],
        *,
        lemmas: Iterable[Lemma] = (),
        n: Optional[int] = None,
    ):
        self.relations = list(relations)
        self.lemmas = list(lemmas)
        self.by_tag = {r.tag: r for r in self.relations}
        self.codec = Codec(alphabet)
        self.n = n
        self._cache: dict = {}

    def _rule_set(self, letters: Optional[frozenset]):
        if letters in self._cache:
            return self._cache[letters]
        pool = [(r, None) for r in self.relations] + [(lm.relation, lm) for lm in self.lemmas]
        if letters is not None:
            pool = [p for p in pool if p[0].letters() <= letters]
        rels = [p[0] for p in pool]
        sides, meta = _sides(self.codec, rels)
        entry = (pool, sides, meta)
        self._cache[letters] = entry
        return entry

    def derive(
        self,
        a: Sequence[str],
        b: Sequence[str],
        limits: SearchLimits = SearchLimits(),
        *,
        assignment: Optional[Assignment] = None,
    ) -> Optional[Derivation]:
        a, b = tuple(a), tuple(b)
        if a == b:
            return Derivation(a, b, (), len(a))
        bound = limits.bound_for(a, b, self.n)
        if max(len(a), len(b)) > bound:
            return None
        letters = frozenset(a) | frozenset(b)
        full = self._rule_set(None)
        restricted = self._rule_set(letters)
        found = None
        if len(restricted[1]) < len(full[1]) and restricted[1]:
            # cheap first pass that never leaves the endpoints' letters
            try:
                found = self._search(a, b, restricted, bound, limits.max_states // 10 or 1, limits.max_depth)
            except LimitExceeded:
                found = None
        if found is None:
            found = self._search(a, b, full, bound, limits.max_states, limits.max_depth)
        if found is None:
            return None
        d = self._expand(found)
        replay(d, self.by_tag)
        if assignment is not None and evaluate(d.start, assignment) != evaluate(d.end, assignment):
            raise SoundnessError(f"derivation {d.start} -> {d.end} is not sound")
        return d

    def _search(self, a, b, rule_set, bound, max_states, max_depth):
        pool, sides, meta = rule_set
        sa, sb = self.codec.encode(a), self.codec.encode(b)
        seen_a: dict = {sa: None}
        seen_b: dict = {sb: None}
        fa, fb = [sa], [sb]
        depth = 0
        while fa and fb:
            if depth >= max_depth:
                raise LimitExceeded(f"depth limit {max_depth} reached", limit=max_depth)
            grow_a = len(fa) <= len(fb)
            if grow_a:
                fa, meet, over = expand(fa, sides, bound, seen_a, seen_b, max_states)
            else:
                fb, meet, over = expand(fb, sides, bound, seen_b, seen_a, max_states)
            depth += 1
            if meet is not None:
                return a, b, self._path(meet, seen_a, seen_b, pool, meta)
            if over or len(seen_a) + len(seen_b) > max_states:
                raise LimitExceeded(f"state limit {max_states} reached", limit=max_states)
            fa.sort()
            fb.sort()
        return None

    def _path(self, meet, seen_a, seen_b, pool, meta):
        # steps are (position, pool index, orientation) on encoded words
        left = []
        w = meet
        while seen_a[w] is not None:
            parent, pos, si = seen_a[w]
            left.append((pos, *meta[si]))
            w = parent
        left.reverse()
        right = []
        w = meet
        while seen_b[w] is not None:
            parent, pos, si = seen_b[w]
            idx, orient = meta[si]
            right.append((pos, idx, REVERSED if orient == AS_WRITTEN else AS_WRITTEN))
            w = parent
        return [(pos, pool[idx], orient) for pos, idx, orient in left + right]

    def _expand(self, found) -> Derivation:
        start, end, raw = found
        steps: list[Step] = []
        for pos, (rel, lemma), orient in raw:
            if lemma is None:
                steps.append(Step(pos, rel.tag, orient))
                continue
            proof = lemma.proof if orient == AS_WRITTEN else lemma.proof.reversed()
            steps.extend(Step(s.position + pos, s.origin, s.orientation) for s in proof.steps)
        d = Derivation(start, end, tuple(steps))
        longest = max_length_of(d, self.by_tag)
        return Derivation(start, end, d.steps, longest)


def derive(
    a: Sequence[str],
    b: Sequence[str],
    relations: Iterable[Relation],
    limits: SearchLimits = SearchLimits(),
    *,
    alphabet: Optional[Sequence[str]] = None,
    n: Optional[int] = None,
    lemmas: Iterable[Lemma] = (),
    assignment: Optional[Assignment] = None,
) -> Optional[Derivation]:
    """Find a derivation a -> b, or ``None`` if the bounded space is exhausted.

    Raises :class:`LimitExceeded` when the state or depth budget runs out
    before the space is exhausted.  ``None`` only means "not found within the
    length bound", never "not a consequence".
    """
    relations = list(relations)
    if alphabet is None:
        letters = set(a) | set(b)
        for r in relations:
            letters |= r.letters()
        alphabet = sorted(letters)
    return Searcher(relations, alphabet, lemmas=lemmas, n=n).derive(a, b, limits, assignment=assignment)


def fold_normalize(
    w: Sequence[str],
    table: Mapping[tuple[Word, str], Derivation],
) -> Derivation:
    """Derivation w -> form built left to right from a closure table.

    ``table[(f, x)]`` must be a derivation ``f x -> f'`` with ``f, f'`` forms
    (the empty word being a form).
    """
    w = tuple(w)
    steps: list[Step] = []
    form: Word = ()
    longest = len(w)
    for i, letter in enumerate(w):
        if (form, letter) in table:
            step = table[(form, letter)]
        else:
            # f x is itself a form
            step = Derivation(form + (letter,), form + (letter,))
        steps.extend(step.steps)
        longest = max(longest, step.max_length + len(w) - i - 1)
        form = step.end
    return Derivation(w, form, tuple(steps), longest)


def normalize_to_form(
    w: Sequence[str],
    catalog,
    relations: Iterable[Relation],
    limits: SearchLimits = SearchLimits(),
    *,
    assignment: Optional[Assignment] = None,
    searcher: Optional[Searcher] = None,
) -> tuple[Word, Derivation]:
    """Return the catalog word equal to ``w`` together with a derivation.

    The target is located through the evaluation bijection; soundness makes
    it the only catalog word a derivation can end at.
    """
    from ..forms import word_for
    from ..presentations import standard_assignment

    a = assignment or standard_assignment("A", catalog.n)
    target = word_for(catalog, evaluate(w, a))
    if searcher is None:
        alphabet = [f"x{i}" for i in range(1, catalog.n + 1)]
        searcher = Searcher(relations, alphabet, n=catalog.n)
    d = searcher.derive(w, target, limits, assignment=a)
    if d is None:
        raise LimitExceeded(f"no derivation to {target} within the length bound")
    return target, d

"""Knuth-Bendix completion under shortlex, used as an independent size oracle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from ..errors import LimitExceeded
from ..kernels import reduce_word
from ..presentations import Presentation, Relation, Word
from .automaton import FactorAutomaton
from .rules import Codec, RewriteRule

DEFAULT_MAX_RULES = 20000
DEFAULT_MAX_ROUNDS = 200


@dataclass(frozen=True)
class CompletionLimits:
    max_rules: int = DEFAULT_MAX_RULES
    max_rounds: int = DEFAULT_MAX_ROUNDS

    @classmethod
    def from_search(cls, limits) -> "CompletionLimits":
        """Read ``max_states`` as a rule budget and ``max_depth`` as a round budget."""
        return cls(min(limits.max_states, DEFAULT_MAX_RULES), limits.max_depth)

    def to_dict(self) -> dict:
        return {"max_rules": self.max_rules, "max_rounds": self.max_rounds}


@dataclass
class CompletedSystem:
    precedence: tuple[str, ...]
    rules: list[RewriteRule]
    rounds: int = 0

    def __post_init__(self):
        self.codec = Codec(self.precedence)
        self._encoded = [(self.codec.encode(r.lhs), self.codec.encode(r.rhs)) for r in self.rules]

    def __len__(self) -> int:
        return len(self.rules)

    def normal_form(self, w: Sequence[str]) -> Word:
        return self.codec.decode(reduce_word(self.codec.encode(w), self._encoded))

    def equivalent(self, a: Sequence[str], b: Sequence[str]) -> bool:
        return self.normal_form(a) == self.normal_form(b)

    def is_decreasing(self) -> bool:
        return all(_shortlex_gt(l, r) for l, r in self._encoded)

    def critical_pairs_join(self) -> bool:
        return not _unjoined(self._encoded)


def _shortlex_gt(a: str, b: str) -> bool:
    return (len(a), a) > (len(b), b)


def _orient(a: str, b: str):
    return (a, b) if _shortlex_gt(a, b) else (b, a)


def _overlaps(l1: str, l2: str):
    """Words where a suffix of l1 is a proper prefix of l2."""
    for k in range(1, min(len(l1), len(l2))):
        if l1[-k:] == l2[:k]:
            yield k


def _unjoined(rules):
    out = []
    for l1, r1 in rules:
        for l2, r2 in rules:
            for k in _overlaps(l1, l2):
                a = reduce_word(r1 + l2[k:], rules)
                b = reduce_word(l1[:-k] + r2, rules)
                if a != b:
                    out.append((a, b))
            if l1 != l2 and l2 in l1:
                p = l1.index(l2)
                a = reduce_word(r1, rules)
                b = reduce_word(l1[:p] + r2 + l1[p + len(l2):], rules)
                if a != b:
                    out.append((a, b))
    return out


def _interreduce(rules: list[tuple[str, str]]) -> list[tuple[str, str]]:
    rules = sorted(set(rules), key=lambda r: (len(r[0]), r[0], len(r[1]), r[1]))
    changed = True
    while changed:
        changed = False
        kept: list[tuple[str, str]] = []
        for i, (l, r) in enumerate(rules):
            others = kept + rules[i + 1:]
            nl = reduce_word(l, others)
            if nl != l:
                nr = reduce_word(r, others)
                changed = True
                if nl != nr:
                    rules = kept + [_orient(nl, nr)] + rules[i + 1:]
                    rules = sorted(set(rules), key=lambda r: (len(r[0]), r[0], len(r[1]), r[1]))
                else:
                    rules = kept + rules[i + 1:]
                break
            kept.append((l, r))
        if not changed:
            rules = kept
    return [(l, reduce_word(r, rules)) for l, r in rules]


def default_precedence(alphabet: Sequence[str]) -> tuple[str, ...]:
    """x1 < x2 < ... < xn < h, other letters after in given order."""
    def key(lab):
        if lab.startswith("x") and lab[1:].isdigit():
            return (0, int(lab[1:]))
        return (1, 0) if lab == "h" else (2, 0)
    return tuple(sorted(alphabet, key=key))


def parse_precedence(text: str) -> tuple[str, ...]:
    """``"x1<x2<h"`` -> ("x1", "x2", "h")."""
    return tuple(t.strip() for t in text.split("<") if t.strip())


def kb_complete(
    p: Presentation,
    precedence: Optional[Sequence[str]] = None,
    limits=CompletionLimits(),
) -> CompletedSystem:
    """Complete ``p`` under shortlex with the given letter precedence.

    Raises :class:`LimitExceeded` if the rule count or the number of rounds
    exceeds ``limits``; that abandons completion and refutes nothing.
    """
    if not isinstance(limits, CompletionLimits):
        limits = CompletionLimits.from_search(limits)
    order = tuple(precedence) if precedence else default_precedence(p.alphabet)
    if set(order) != set(p.alphabet):
        raise ValueError("precedence must list every letter exactly once")
    codec = Codec(order)
    rules = []
    for r in p.relations:
        a, b = codec.encode(r.lhs), codec.encode(r.rhs)
        if a != b:
            rules.append(_orient(a, b))
    rules = _interreduce(rules)
    done: set = set()
    rounds = 0
    while True:
        rounds += 1
        if rounds > limits.max_rounds:
            raise LimitExceeded(f"completion did not finish in {limits.max_rounds} rounds", limit=limits.max_rounds)
        new = []
        for r1 in rules:
            for r2 in rules:
                if (r1, r2) in done:
                    continue
                done.add((r1, r2))
                (l1, s1), (l2, s2) = r1, r2
                for k in _overlaps(l1, l2):
                    a = reduce_word(s1 + l2[k:], rules)
                    b = reduce_word(l1[:-k] + s2, rules)
                    if a != b:
                        new.append(_orient(a, b))
        if not new:
            break
        rules = _interreduce(rules + new)
        if len(rules) > limits.max_rules:
            raise LimitExceeded(f"completion exceeded {limits.max_rules} rules", limit=limits.max_rules)
        live = set(rules)
        done = {pair for pair in done if pair[0] in live and pair[1] in live}
    out = [
        RewriteRule(codec.decode(l), codec.decode(r), "kb", "as-written")
        for l, r in sorted(rules, key=lambda r: (len(r[0]), r[0]))
    ]
    return CompletedSystem(order, out, rounds)


def count_irreducible(s: CompletedSystem) -> Union[int, str]:
    patterns = [s.codec.encode(r.lhs) for r in s.rules]
    alphabet = [s.codec.encode((lab,)) for lab in s.precedence]
    return FactorAutomaton(patterns, alphabet).count_avoiding()


def irreducible_words(s: CompletedSystem, limit: int = 10**6) -> list[Word]:
    patterns = [s.codec.encode(r.lhs) for r in s.rules]
    alphabet = [s.codec.encode((lab,)) for lab in s.precedence]
    return [s.codec.decode(w) for w in FactorAutomaton(patterns, alphabet).enumerate_avoiding(limit)]


def system_from_rules(pairs: Sequence[tuple[Word, Word]], precedence: Sequence[str]) -> CompletedSystem:
    return CompletedSystem(tuple(precedence), [RewriteRule(l, r, "given") for l, r in pairs])


def contains_relations(s: CompletedSystem, relations: Sequence[Relation]) -> bool:
    return all(s.equivalent(r.lhs, r.rhs) for r in relations)

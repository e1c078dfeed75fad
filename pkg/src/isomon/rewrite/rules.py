"""Oriented rules, derivation traces and their replay."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from ..presentations import Relation, Word, format_word, parse_word

AS_WRITTEN = "as-written"
REVERSED = "reversed"


def flip(orientation: str) -> str:
    return REVERSED if orientation == AS_WRITTEN else AS_WRITTEN


class Codec:
    """One character per letter, assigned in precedence order.

    Comparing encoded strings therefore compares words lexicographically with
    respect to the precedence.
    """

    BASE = 0x100

    def __init__(self, letters: Sequence[str]):
        self.letters = tuple(letters)
        self._enc = {lab: chr(self.BASE + i) for i, lab in enumerate(self.letters)}
        self._dec = {c: lab for lab, c in self._enc.items()}

    def encode(self, w: Iterable[str]) -> str:
        return "".join(self._enc[lab] for lab in w)

    def decode(self, s: str) -> Word:
        return tuple(self._dec[c] for c in s)

    def __contains__(self, label: str) -> bool:
        return label in self._enc


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: Word
    origin: str
    orientation: str = AS_WRITTEN

    @classmethod
    def from_relation(cls, r: Relation, orientation: str = AS_WRITTEN) -> "RewriteRule":
        if orientation == AS_WRITTEN:
            return cls(r.lhs, r.rhs, r.tag, orientation)
        return cls(r.rhs, r.lhs, r.tag, orientation)

    def __str__(self) -> str:
        return f"{format_word(self.lhs)} -> {format_word(self.rhs)}"


@dataclass(frozen=True)
class Step:
    position: int
    origin: str
    orientation: str

    def to_list(self) -> list:
        return [self.position, self.origin, self.orientation]


@dataclass(frozen=True)
class Derivation:
    start: Word
    end: Word
    steps: tuple[Step, ...] = ()
    max_length: int = field(default=0, compare=False)

    def __len__(self) -> int:
        return len(self.steps)

    def reversed(self) -> "Derivation":
        steps = tuple(Step(s.position, s.origin, flip(s.orientation)) for s in reversed(self.steps))
        return Derivation(self.end, self.start, steps, self.max_length)

    def shifted(self, prefix: Word, suffix: Word = ()) -> "Derivation":
        """The same derivation performed inside the context ``prefix . _ . suffix``."""
        k = len(prefix)
        steps = tuple(Step(s.position + k, s.origin, s.orientation) for s in self.steps)
        extra = k + len(suffix)
        return Derivation(
            tuple(prefix) + self.start + tuple(suffix),
            tuple(prefix) + self.end + tuple(suffix),
            steps,
            self.max_length + extra,
        )

    def then(self, other: "Derivation") -> "Derivation":
        if self.end != other.start:
            raise ValueError("derivations do not chain")
        return Derivation(self.start, other.end, self.steps + other.steps, max(self.max_length, other.max_length))

    def to_dict(self) -> dict:
        return {
            "start": format_word(self.start),
            "end": format_word(self.end),
            "steps": [s.to_list() for s in self.steps],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Derivation":
        steps = tuple(Step(int(p), str(o), str(r)) for p, o, r in d["steps"])
        return cls(parse_word(d["start"]), parse_word(d["end"]), steps)


class ReplayError(ValueError):
    pass


def apply_at(w: Sequence[str], rule: RewriteRule, pos: int) -> Optional[Word]:
    w = tuple(w)
    if not 0 <= pos <= len(w):
        return None
    k = len(rule.lhs)
    if w[pos:pos + k] != rule.lhs:
        return None
    return w[:pos] + rule.rhs + w[pos + k:]


def replay(d: Derivation, relations: Mapping[str, Relation] | Iterable[Relation]) -> Word:
    """Re-run every step from ``d.start``; returns the end word or raises."""
    if not isinstance(relations, Mapping):
        relations = {r.tag: r for r in relations}
    w = d.start
    for i, s in enumerate(d.steps):
        try:
            rel = relations[s.origin]
        except KeyError:
            raise ReplayError(f"step {i}: unknown relation {s.origin!r}") from None
        nxt = apply_at(w, RewriteRule.from_relation(rel, s.orientation), s.position)
        if nxt is None:
            raise ReplayError(f"step {i}: {s.origin} ({s.orientation}) does not match at {s.position}")
        w = nxt
    if w != d.end:
        raise ReplayError("replay ended at a different word")
    return w


def max_length_of(d: Derivation, relations) -> int:
    if not isinstance(relations, Mapping):
        relations = {r.tag: r for r in relations}
    w = d.start
    longest = len(w)
    for s in d.steps:
        w = apply_at(w, RewriteRule.from_relation(relations[s.origin], s.orientation), s.position)
        longest = max(longest, len(w))
    return longest

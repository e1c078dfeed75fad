"""Elementary Tietze transformations with certified consequences."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from ..errors import ConsequenceNotCertified, LimitExceeded, NoDefiningRelation
from ..presentations import Presentation, Relation, Word
from ..rewrite.rules import Derivation, ReplayError, replay
from ..rewrite.search import SearchLimits, derive

T1, T2, T3, T4 = "T1", "T2", "T3", "T4"


@dataclass(frozen=True)
class TietzeStep:
    variant: str
    relation: Optional[Relation] = None
    derivation: Optional[Derivation] = None
    letter: Optional[str] = None
    defining_word: Optional[Word] = None

    def __post_init__(self):
        if self.variant not in (T1, T2, T3, T4):
            raise ValueError(f"unknown Tietze variant {self.variant!r}")


def add_relation(r: Relation, d: Optional[Derivation] = None) -> TietzeStep:
    return TietzeStep(T1, relation=r, derivation=d)


def delete_relation(r: Relation, d: Optional[Derivation] = None) -> TietzeStep:
    return TietzeStep(T2, relation=r, derivation=d)


def add_generator(b: str, w: Word) -> TietzeStep:
    return TietzeStep(T3, letter=b, defining_word=tuple(w))


def eliminate_generator(b: str, w: Optional[Word] = None) -> TietzeStep:
    return TietzeStep(T4, letter=b, defining_word=None if w is None else tuple(w))


def _certify(r: Relation, d: Optional[Derivation], rels: list[Relation], p: Presentation, limits) -> Derivation:
    """A replayed derivation of ``r`` over ``rels`` (searched for if absent)."""
    if d is None:
        if limits is None:
            raise ConsequenceNotCertified(f"{r} carries no derivation")
        try:
            d = derive(r.lhs, r.rhs, rels, limits, alphabet=p.alphabet, n=p.n)
        except LimitExceeded as exc:
            raise ConsequenceNotCertified(f"{r}: {exc}") from exc
        if d is None:
            raise ConsequenceNotCertified(f"{r} not derivable within the length bound")
    if {d.start, d.end} != {r.lhs, r.rhs}:
        raise ConsequenceNotCertified(f"derivation endpoints do not match {r}")
    try:
        replay(d, rels)
    except ReplayError as exc:
        raise ConsequenceNotCertified(f"{r}: {exc}") from exc
    return d


def substitute(w: Word, b: str, v: Word) -> Word:
    out: list[str] = []
    for lab in w:
        out.extend(v if lab == b else (lab,))
    return tuple(out)


def _defining(p: Presentation, b: str, w: Optional[Word]) -> Relation:
    for r in p.relations:
        for lhs, rhs in ((r.lhs, r.rhs), (r.rhs, r.lhs)):
            if lhs == (b,) and b not in rhs and (w is None or rhs == w):
                return r
    raise NoDefiningRelation(f"no relation {b} = w with w avoiding {b}")


def tietze_step(p: Presentation, step: TietzeStep, limits: Optional[SearchLimits] = None) -> Presentation:
    """Apply one transformation; T1 and T2 demand a replayable consequence.

    With ``limits`` given, a missing derivation is searched for.  T4 replaces
    the letter literally and then drops relations whose sides coincide.
    """
    rels = list(p.relations)
    if step.variant == T1:
        r = step.relation
        if r is None:
            raise ValueError("T1 needs a relation")
        _certify(r, step.derivation, rels, p, limits)
        return replace(p, relations=tuple(rels + [r]), kind="custom")
    if step.variant == T2:
        r = step.relation
        if r is None:
            raise ValueError("T2 needs a relation")
        keep = [q for q in rels if q != r]
        if len(keep) == len(rels):
            keep = [q for q in rels if q.key() != r.key()]
            if len(keep) == len(rels):
                raise KeyError(f"{r} is not a relation of the presentation")
        _certify(r, step.derivation, keep, p, limits)
        return replace(p, relations=tuple(keep), kind="custom")
    if step.variant == T3:
        b, w = step.letter, step.defining_word
        if b in p.alphabet:
            raise ValueError(f"{b} is already a generator")
        if w is None or not set(w) <= set(p.alphabet):
            raise ValueError("T3 needs a defining word over the current alphabet")
        return replace(
            p, alphabet=tuple(p.alphabet) + (b,), relations=tuple(rels + [Relation((b,), w, f"def[{b}]")]),
            kind="custom",
        )
    b = step.letter
    if b not in p.alphabet:
        raise NoDefiningRelation(f"{b} is not a generator")
    d = _defining(p, b, step.defining_word)
    w = d.rhs if d.lhs == (b,) else d.lhs
    out = []
    for r in rels:
        if r is d:
            continue
        q = Relation(substitute(r.lhs, b, w), substitute(r.rhs, b, w), r.tag)
        if not q.is_trivial():
            out.append(q)
    alphabet = tuple(lab for lab in p.alphabet if lab != b)
    return Presentation(alphabet, tuple(out), "custom", p.n)

"""Presentations for a monoid T generated by a submonoid S and an involution y."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..errors import SpecInvalid
from ..forms import ExtensionForms, FormsCatalog, build_extension_forms, word_for
from ..monoid_families import MonoidSet, closure, generating_set
from ..presentations import (
    Assignment,
    Presentation,
    Relation,
    Word,
    build_presentation,
    evaluate,
    power,
    standard_assignment,
    word,
)
from ..rewrite.rules import Derivation
from ..rewrite.search import Lemma, fold_normalize


@dataclass(frozen=True)
class ExtensionSpec:
    """Data for extending ``<X|R>`` by an involution letter ``y``.

    ``conjugates`` lists ``(x_i, v_i)`` with ``y x_i = v_i y``; ``anchor`` is
    ``u_0`` and ``anchor_image`` is ``v_0`` with ``u_0 y = v_0``.
    """

    base: Presentation
    y: str
    conjugates: tuple[tuple[str, Word], ...]
    anchor: Word
    anchor_image: Word
    w_alpha: tuple[Word, ...]
    w_beta: tuple[Word, ...]
    assignment: Assignment = field(hash=False)
    kind: str = "custom"


def _has_factor(w: Word, f: Word) -> bool:
    k = len(f)
    return any(w[i:i + k] == f for i in range(len(w) - k + 1))


def validate_spec(spec: ExtensionSpec) -> None:
    a = spec.assignment
    X = set(spec.base.alphabet)
    if spec.y in X:
        raise SpecInvalid(f"involution letter {spec.y!r} already in the base alphabet")
    if evaluate((spec.y, spec.y), a) != evaluate((), a):
        raise SpecInvalid("y^2 = 1 does not hold")
    if {lab for lab, _ in spec.conjugates} != X:
        raise SpecInvalid("conjugation words must cover every base letter exactly once")
    for lab, v in spec.conjugates:
        if not set(v) <= X:
            raise SpecInvalid(f"conjugation word for {lab} leaves the base alphabet")
        if evaluate((spec.y, lab), a) != evaluate(tuple(v) + (spec.y,), a):
            raise SpecInvalid(f"y {lab} = v y fails for {lab}")
    if not (set(spec.anchor) | set(spec.anchor_image)) <= X:
        raise SpecInvalid("anchor words must be over the base alphabet")
    if evaluate(tuple(spec.anchor) + (spec.y,), a) != evaluate(spec.anchor_image, a):
        raise SpecInvalid("u_0 y = v_0 fails")
    for w in spec.w_alpha:
        if not _has_factor(w, spec.anchor):
            raise SpecInvalid(f"anchor is not a factor of {' '.join(w)}")
    if () not in set(spec.w_alpha) | set(spec.w_beta):
        raise SpecInvalid("the empty word must be a form")


def _conj_tag(label: str) -> str:
    m = re.fullmatch(r"x(\d+)", label)
    return f"NR1[{m.group(1)}]" if m else f"NR1[{label}]"


def build_extension_presentation(
    spec: ExtensionSpec, T: Optional[MonoidSet] = None
) -> tuple[Presentation, list[Word]]:
    """``<X u {y} | R u NR0 u NR1 u NR2>`` and ``Wbar = W u {w y : w in W_beta}``."""
    validate_spec(spec)
    y = spec.y
    rels = list(spec.base.relations)
    rels.append(Relation((y, y), (), "NR0"))
    rels += [Relation((y, lab), tuple(v) + (y,), _conj_tag(lab)) for lab, v in spec.conjugates]
    rels.append(Relation(tuple(spec.anchor) + (y,), tuple(spec.anchor_image), "NR2"))
    alphabet = tuple(spec.base.alphabet) + (y,)
    p = Presentation(alphabet, tuple(rels), spec.kind, spec.base.n)
    w_bar = list(spec.w_alpha) + list(spec.w_beta) + [w + (y,) for w in spec.w_beta]
    if T is not None and len(w_bar) > len(T):
        raise SpecInvalid(f"|Wbar| = {len(w_bar)} exceeds |T| = {len(T)}")
    return p, w_bar


def dp_extension_spec(n: int, ext: Optional[ExtensionForms] = None) -> ExtensionSpec:
    """ODP_n inside DP_n with y = h."""
    ext = ext or build_extension_forms(n)
    base = build_presentation("R", n)
    order = [n - 1, n] + list(range(1, n - 1))
    conj = []
    for i in order:
        v = n if i == n - 1 else n - 1 if i == n else n - i - 1
        conj.append((f"x{i}", word(v)))
    return ExtensionSpec(
        base=base,
        y="h",
        conjugates=tuple(conj),
        anchor=power(n, n - 1),
        anchor_image=word(n, range(n - 1, 0, -1)),
        w_alpha=tuple(ext.w_alpha),
        w_beta=tuple(ext.w_beta),
        assignment=standard_assignment("B", n),
        kind="Rbar",
    )


def extension_lemmas(
    table: dict[tuple[Word, str], Derivation],
    catalog: FormsCatalog,
    w_alpha: Sequence[Word],
) -> list[Lemma]:
    """Base-presentation facts reused inside the extended search.

    ``table`` is a closure table of the base presentation.  The lemmas are
    its entries ``f x = f'`` together with ``w = word_for(w)`` for each
    W_alpha word.  Each carries its base derivation, so searches that use
    them expand back to base steps.
    """
    out = []
    for (f, x), d in table.items():
        if d.steps:
            out.append(Lemma(Relation(d.start, d.end, f"lemma:{' '.join(f)}|{x}"), d))
    a = standard_assignment("A", catalog.n)
    for w in w_alpha:
        f = word_for(catalog, evaluate(w, a))
        if f == w:
            continue
        d = fold_normalize(w, table)
        if d.end != f:
            raise ValueError("closure table does not normalize a W_alpha word")
        out.append(Lemma(Relation(w, f, f"lemma:{' '.join(w)}"), d))
    return out


def dp_target(n: int, budget: Optional[int] = None) -> MonoidSet:
    kw = {} if budget is None else {"budget": budget}
    return closure(generating_set("B", n), family="DP", **kw)


def check_against_Rbar(p: Presentation) -> bool:
    """Constructed relations equal the hand-written family, in order."""
    ref = build_presentation("Rbar", p.n)
    return p.alphabet == ref.alphabet and p.relations == ref.relations


__all__ = [
    "ExtensionSpec",
    "build_extension_presentation",
    "check_against_Rbar",
    "dp_target",
    "extension_lemmas",
    "dp_extension_spec",
    "validate_spec",
]

"""Words, relations and the relation families R, Rbar, U and V.

Words are tuples of letter labels (``"x1"`` ... ``"xn"``, ``"h"``); the empty
tuple is the identity.  Serialized words are whitespace-separated labels with
``1`` standing for the empty word.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from . import partial_injection as pi
from .errors import UnboundLetter, UnsupportedN
from .monoid_families import generating_set, generating_set_labels
from .partial_injection import PartialInjection
from .report import Check, VerificationReport

Word = tuple[str, ...]

KINDS = ("R", "Rbar", "U", "V")
ALPHABET_OF_KIND = {"R": "A", "Rbar": "B", "U": "B", "V": "C"}


def x(i: int) -> str:
    return f"x{i}"


def word(*parts) -> Word:
    """Build a word from ints (``x_i``), ``"h"``, labels or nested sequences."""
    out: list[str] = []
    for p in parts:
        if isinstance(p, int):
            out.append(x(p))
        elif isinstance(p, str):
            out.append(p)
        else:
            out.extend(word(*p))
    return tuple(out)


def power(i, k: int) -> Word:
    return word(*([i] * k))


def parse_word(text: str) -> Word:
    toks = text.split()
    if toks == ["1"] or not toks:
        return ()
    return tuple(toks)


def format_word(w: Sequence[str]) -> str:
    return " ".join(w) if w else "1"


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word
    tag: str = ""

    def letters(self) -> set[str]:
        return set(self.lhs) | set(self.rhs)

    def key(self) -> frozenset:
        """Orientation-free identity used for set comparisons."""
        return frozenset((self.lhs, self.rhs))

    def is_trivial(self) -> bool:
        return self.lhs == self.rhs

    def __str__(self) -> str:
        s = f"{format_word(self.lhs)} = {format_word(self.rhs)}"
        return f"{s} #{self.tag}" if self.tag else s


@dataclass(frozen=True)
class Presentation:
    alphabet: tuple[str, ...]
    relations: tuple[Relation, ...]
    kind: str = "custom"
    n: int | None = None

    def __post_init__(self):
        alpha = set(self.alphabet)
        if len(alpha) != len(self.alphabet):
            raise ValueError("alphabet labels must be unique")
        for r in self.relations:
            bad = r.letters() - alpha
            if bad:
                raise UnboundLetter(sorted(bad)[0])

    def __len__(self) -> int:
        return len(self.relations)

    def tags(self) -> list[str]:
        return [r.tag for r in self.relations]

    def relation(self, tag: str) -> Relation:
        for r in self.relations:
            if r.tag == tag:
                return r
        raise KeyError(tag)

    def by_tag(self) -> dict[str, Relation]:
        return {r.tag: r for r in self.relations}

    def without(self, *tags: str) -> "Presentation":
        drop = set(tags)
        return replace(self, relations=tuple(r for r in self.relations if r.tag not in drop), kind="custom")

    def with_relations(self, relations: Iterable[Relation], kind: str = "custom") -> "Presentation":
        return replace(self, relations=tuple(relations), kind=kind)

    def family(self, prefix: str) -> list[Relation]:
        return [r for r in self.relations if r.tag == prefix or r.tag.startswith(prefix + "[")]


def _R(n: int) -> list[Relation]:
    rels = []
    for i in range(1, n - 1):
        rels.append(Relation(word(i, i), word(i), f"R1[{i}]"))
    for i in range(1, n - 1):
        for j in range(i + 1, n - 1):
            rels.append(Relation(word(i, j), word(j, i), f"R2[{i},{j}]"))
    for i in range(1, n - 2):
        rels.append(Relation(word(n - 1, i), word(i + 1, n - 1), f"R3[{i}]"))
    for i in range(1, n - 2):
        rels.append(Relation(word(n, i + 1), word(i, n), f"R4[{i}]"))
    rels += [
        Relation(word(n - 1, n - 1, n), word(1, n - 1), "R5"),
        Relation(word(n, n - 1, n - 1), word(n - 1, n - 2), "R6"),
        Relation(word(n, n, n - 1), word(n - 2, n), "R7"),
        Relation(word(n - 1, n, n), word(n, 1), "R8"),
        Relation(word(n - 1, n, n - 1), word(n - 1), "R9"),
        Relation(word(n, n - 1, n), word(n), "R10"),
        Relation(power(n, n), word(range(1, n - 1), n - 1, n - 2), "R11"),
        Relation(power(n, n + 1), power(n, n), "R12"),
    ]
    return rels


def _NR(n: int) -> list[Relation]:
    rels = [
        Relation(word("h", "h"), (), "NR0"),
        Relation(word("h", n - 1), word(n, "h"), f"NR1[{n - 1}]"),
        Relation(word("h", n), word(n - 1, "h"), f"NR1[{n}]"),
    ]
    for i in range(1, n - 1):
        rels.append(Relation(word("h", i), word(n - i - 1, "h"), f"NR1[{i}]"))
    rels.append(Relation(word(power(n, n - 1), "h"), word(n, range(n - 1, 0, -1)), "NR2"))
    return rels


def _Rbar7(n):
    return Relation(word(n, n, "h", n, "h"), word("h", 1, "h", n), "Rbar7")


def _Rbar8(n):
    return Relation(word("h", n, "h", n, n), word(n, 1), "Rbar8")


def _Rbar10(n):
    return Relation(word(n, "h", n, "h", n), word(n), "Rbar10")


def _U(n: int) -> list[Relation]:
    m = (n - 1) // 2
    R = {r.tag: r for r in _R(n)}
    rels = [Relation(word(i, i), word(i), f"Rbar1[{i}]") for i in range(1, m + 1)]
    rels += [r for r in R.values() if r.tag.startswith("R2[")]
    rels += [r for r in R.values() if r.tag.startswith("R4[")]
    rels += [_Rbar7(n), _Rbar8(n), _Rbar10(n), R["R11"], R["R12"]]
    rels.append(Relation(word("h", "h"), (), "NR0"))
    rels.append(Relation(word("h", n), word(n - 1, "h"), f"NRbar1[{n}]"))
    rels += [Relation(word("h", i), word(n - i - 1, "h"), f"NRbar1[{i}]") for i in range(1, m + 1)]
    rels.append(_NR(n)[-1])
    return rels


def _V(n: int) -> list[Relation]:
    m = (n - 1) // 2
    c = (n - 2) // 2  # ceil((n-3)/2)
    rels = [Relation(word(i, i), word(i), f"Rbar1[{i}]") for i in range(1, m + 1)]
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            rels.append(Relation(word(i, j), word(j, i), f"Rbar2[{i},{j}]"))
    for i in range(1, m + 1):
        for j in range(m + 1, n - 1):
            k = n - j - 1
            rels.append(Relation(word(i, "h", k, "h"), word("h", k, "h", i), f"Rbar2[{i},{j}]"))
    for i in range(1, (n - 3) // 2 + 1):
        rels.append(Relation(word(n, i + 1), word(i, n), f"Rbar4[{i}]"))
    # R4 at i = floor((n-1)/2) only exists when that index is <= n-3
    if m <= n - 3:
        rels.append(Relation(word(n, "h", c, "h"), word(m, n), f"Rbar4[{m}]"))
    for i in range(1, (n - 4) // 2 + 1):  # ceil((n-5)/2)
        rels.append(Relation(word(n, "h", i, "h"), word("h", i + 1, "h", n), f"Rbar4'[{i}]"))
    rels += [_Rbar7(n), _Rbar8(n), _Rbar10(n)]
    rels.append(
        Relation(
            power(n, n),
            word(range(1, m + 1), "h", range(c, 0, -1), n, 1, "h"),
            "Rbar11",
        )
    )
    rels.append(Relation(power(n, n + 1), power(n, n), "R12"))
    rels.append(Relation(word("h", "h"), (), "NR0"))
    if n % 2 == 1:
        rels.append(Relation(word("h", m), word(m, "h"), "NRhat1"))
    rels.append(
        Relation(
            word(power(n, n - 1), "h"),
            word(n, "h", n, range(1, c + 1), "h", range(m, 0, -1)),
            "NRbar2",
        )
    )
    return rels


def build_presentation(kind: str, n: int) -> Presentation:
    if n < 3:
        raise UnsupportedN(f"presentations need n >= 3, got {n}")
    if kind == "R":
        rels = _R(n)
    elif kind == "Rbar":
        rels = _R(n) + _NR(n)
    elif kind == "U":
        rels = _U(n)
    elif kind == "V":
        rels = _V(n)
    else:
        raise ValueError(f"unknown presentation kind {kind!r}")
    alphabet = generating_set_labels(ALPHABET_OF_KIND[kind], n)
    return Presentation(alphabet, tuple(rels), kind, n)


def relation_count_formula(kind: str, n: int) -> int:
    if n < 3:
        raise UnsupportedN(f"n must be at least 3, got {n}")
    if kind == "R":
        num, den = n * n + n + 6, 2
    elif kind == "Rbar":
        num, den = n * n + 3 * n + 10, 2
    elif kind == "U":
        num, den = n * n - n + 13 - (-1) ** n, 2
    elif kind == "V":
        num, den = (3 * n * n + 45, 8) if n % 2 else (3 * n * n - 2 * n + 40, 8)
    else:
        raise ValueError(f"unknown presentation kind {kind!r}")
    assert num % den == 0
    return num // den


@dataclass(frozen=True)
class Assignment:
    n: int
    images: Mapping[str, PartialInjection] = field(hash=False)

    def __getitem__(self, label: str) -> PartialInjection:
        try:
            return self.images[label]
        except KeyError:
            raise UnboundLetter(label) from None

    def __contains__(self, label: str) -> bool:
        return label in self.images

    def labels(self) -> tuple[str, ...]:
        return tuple(self.images)


def standard_assignment(alphabet_kind: str, n: int) -> Assignment:
    fam = generating_set(alphabet_kind, n)
    return Assignment(n, dict(fam.elements))


def assignment_for(p: Presentation) -> Assignment:
    """Standard assignment covering ``p``'s alphabet."""
    a = standard_assignment("B", p.n)
    return Assignment(p.n, {lab: a[lab] for lab in p.alphabet})


def evaluate(w: Sequence[str], a: Assignment) -> PartialInjection:
    acc = pi.identity(a.n)
    for lab in w:
        acc = pi.compose(acc, a[lab])
    return acc


def check_relations(p: Presentation, a: Assignment) -> VerificationReport:
    report = VerificationReport("relations", n=p.n, kind=p.kind)
    for lab in p.alphabet:
        if lab not in a:
            raise UnboundLetter(lab)
    for r in p.relations:
        t0 = time.perf_counter()
        lv, rv = evaluate(r.lhs, a), evaluate(r.rhs, a)
        witness = None if lv == rv else {"lhs": pi.render(lv), "rhs": pi.render(rv)}
        ms = (time.perf_counter() - t0) * 1000
        report.add(Check(r.tag, lv == rv, witness, ms))
    return report


def format_presentation(p: Presentation) -> str:
    lines = ["alphabet: " + " ".join(p.alphabet)]
    lines += [str(r) for r in p.relations]
    return "\n".join(lines) + "\n"


def parse_presentation(text: str, kind: str = "custom", n: int | None = None) -> Presentation:
    alphabet: tuple[str, ...] | None = None
    rels = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("alphabet:"):
            alphabet = tuple(line[len("alphabet:"):].split())
            continue
        body, _, tag = line.partition("#")
        lhs, eq, rhs = body.partition("=")
        if not eq:
            raise ValueError(f"relation without '=': {raw!r}")
        rels.append(Relation(parse_word(lhs), parse_word(rhs), tag.strip()))
    if alphabet is None:
        raise ValueError("missing 'alphabet:' header")
    if n is None:
        xs = [int(lab[1:]) for lab in alphabet if lab.startswith("x")]
        n = max(xs) if xs else None
    return Presentation(alphabet, tuple(rels), kind, n)

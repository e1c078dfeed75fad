"""Generators of ODP_n / DP_n, closure enumeration and the counting claims."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import partial_injection as pi
from .errors import EmptyDomainSet, IndexOutOfRange, LimitExceeded, MismatchedGroundSet, UnsupportedN
from .kernels import closure_images
from .partial_injection import PartialInjection
from .report import Check, VerificationReport

DEFAULT_BUDGET = 10**6
# closure checks in reports are capped here; larger n are checked in closed form
DECOMPOSITION_MAX_N = 12


def _check_n(n: int) -> None:
    if n < 3:
        raise UnsupportedN(f"n must be at least 3, got {n}")


def gen_x(n: int, i: int) -> PartialInjection:
    """The generator x_i of ODP_n.

    x_i (i <= n-2) is the partial identity missing n-i, x_{n-1} is the +1
    shift on {1..n-1} and x_n the -1 shift on {2..n}.
    """
    _check_n(n)
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"x_{i} is not a generator for n={n}")
    if i <= n - 2:
        return pi.partial_identity(n, [p for p in range(1, n + 1) if p != n - i])
    if i == n - 1:
        return pi.make(n, [(p, p + 1) for p in range(1, n)])
    return pi.make(n, [(p, p - 1) for p in range(2, n + 1)])


def gen_h(n: int) -> PartialInjection:
    _check_n(n)
    return pi.make(n, [(p, n + 1 - p) for p in range(1, n + 1)])


def letter_element(n: int, label: str) -> PartialInjection:
    if label == "h":
        return gen_h(n)
    if not (label.startswith("x") and label[1:].isdigit()):
        raise IndexOutOfRange(f"unknown letter {label!r}")
    return gen_x(n, int(label[1:]))


@dataclass(frozen=True)
class GeneratorFamily:
    kind: str
    n: int
    elements: tuple[tuple[str, PartialInjection], ...]

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def without(self, label: str) -> "GeneratorFamily":
        return GeneratorFamily(
            self.kind + "-" + label, self.n, tuple(e for e in self.elements if e[0] != label)
        )


def generating_set_labels(kind: str, n: int) -> tuple[str, ...]:
    _check_n(n)
    if kind == "A":
        return tuple(f"x{i}" for i in range(1, n + 1))
    if kind == "B":
        return generating_set_labels("A", n) + ("h",)
    if kind == "C":
        return ("h", f"x{n}") + tuple(f"x{i}" for i in range(1, (n - 1) // 2 + 1))
    raise ValueError(f"unknown generating set {kind!r}")


def generating_set(kind: str, n: int) -> GeneratorFamily:
    labels = generating_set_labels(kind, n)
    return GeneratorFamily(kind, n, tuple((lab, letter_element(n, lab)) for lab in labels))


@dataclass
class MonoidSet:
    n: int
    elements: frozenset
    family: str = "custom"
    # discovery order of the BFS, kept for deterministic output
    order: tuple = field(default=(), repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, a: PartialInjection) -> bool:
        return a in self.elements

    def __iter__(self):
        return iter(self.sorted())

    def sorted(self) -> list[PartialInjection]:
        return sorted(self.elements, key=_sort_key)

    def is_closed(self) -> bool:
        """Two-sided closure check (every product stays inside)."""
        els = list(self.elements)
        imgs = {a.images for a in els}
        for a in els:
            for b in els:
                if pi.compose(a, b).images not in imgs:
                    return False
        return True


def _sort_key(a: PartialInjection):
    return (-pi.rank(a), a.pairs)


def closure(
    gens: GeneratorFamily | Iterable[PartialInjection],
    *,
    family: str = "custom",
    budget: int = DEFAULT_BUDGET,
) -> MonoidSet:
    """Submonoid generated by ``gens`` (identity included)."""
    if isinstance(gens, GeneratorFamily):
        elements = [e for _, e in gens.elements]
        n = gens.n
    else:
        elements = list(gens)
        if not elements:
            raise ValueError("closure of an empty list needs an explicit n")
        n = elements[0].n
    if any(e.n != n for e in elements):
        raise MismatchedGroundSet("generators live on different ground sets")
    order = closure_images([e.images for e in elements], pi.identity(n).images, budget)
    if order is None:
        raise LimitExceeded(f"closure exceeded {budget} elements", limit=budget)
    els = tuple(PartialInjection(n, img) for img in order)
    return MonoidSet(n, frozenset(els), family, els)


def odp(n: int, budget: int = DEFAULT_BUDGET) -> MonoidSet:
    return closure(generating_set("A", n), family="ODP", budget=budget)


def dp(n: int, budget: int = DEFAULT_BUDGET) -> MonoidSet:
    return closure(generating_set("B", n), family="DP", budget=budget)


@dataclass(frozen=True)
class Cardinalities:
    odp: int
    dp: int
    odp_plus: int
    odp_minus: int
    idempotents: int
    rank_le_one: int


def cardinality_formulas(n: int) -> Cardinalities:
    _check_n(n)
    half = 2 ** (n + 1) - (n + 1)
    return Cardinalities(
        odp=3 * 2**n - 2 * (n + 1),
        dp=3 * 2 ** (n + 1) - (n + 2) ** 2 - 1,
        odp_plus=half,
        odp_minus=half,
        idempotents=2**n,
        rank_le_one=n * n + 1,
    )


def odp_minus_sum(n: int) -> int:
    # co-extensive count: subsets with minimum k contribute k shifts each
    return 1 + sum(k * 2 ** (n - k) for k in range(1, n + 1))


def odp_plus_sum(n: int) -> int:
    return 1 + sum((n - k + 1) * 2 ** (k - 1) for k in range(1, n + 1))


@dataclass(frozen=True)
class Census:
    coextensive_count: int
    extensive_count: int
    total: int
    elements: tuple[PartialInjection, ...]


def domain_census(n: int, domain: Iterable[int]) -> Census:
    """All ODP_n elements with domain exactly ``domain``, by legal shifts."""
    X = sorted(set(domain))
    if not X:
        raise EmptyDomainSet("domain must be nonempty")
    for p in X:
        if not 1 <= p <= n:
            raise pi.OutOfRange(p, n)
    lo, hi = 1 - X[0], n - X[-1]
    elements = tuple(pi.make(n, [(p, p + s) for p in X]) for s in range(lo, hi + 1))
    co = sum(1 for s in range(lo, hi + 1) if s <= 0)
    ex = sum(1 for s in range(lo, hi + 1) if s >= 0)
    return Census(co, ex, len(elements), elements)


def conjugate_by_h(a: PartialInjection) -> PartialInjection:
    h = gen_h(a.n)
    return pi.compose(h, pi.compose(a, h))


def verify_decomposition(n: int, *, budget: int = DEFAULT_BUDGET) -> VerificationReport:
    if n > DECOMPOSITION_MAX_N:
        raise LimitExceeded(f"n={n} too large for enumeration", limit=DECOMPOSITION_MAX_N, value=n)
    report = VerificationReport("decomposition", n=n, kind="DP")
    t0 = time.perf_counter()
    O = odp(n, budget)
    D = dp(n, budget)
    h = gen_h(n)
    hO = {pi.compose(h, a) for a in O.elements}
    union_ok = set(O.elements) | hO == set(D.elements)
    inter = set(O.elements) & hO
    low = [a for a in D.elements if pi.rank(a) <= 1]
    f = cardinality_formulas(n)
    report.add(Check("DP = ODP u h.ODP", union_ok, {"dp": len(D), "union": len(set(O.elements) | hO)}))
    report.add(
        Check(
            "ODP n h.ODP = rank<=1",
            inter == set(low) and len(inter) == f.rank_le_one,
            {"intersection": len(inter), "expected": f.rank_le_one},
        )
    )
    cls = {a: pi.classify(a) for a in O.elements}
    plus = {a for a, c in cls.items() if c.extensive}
    minus = {a for a, c in cls.items() if c.coextensive}
    idem = {a for a, c in cls.items() if c.partial_identity}
    report.add(Check("ODP = ODP+ u ODP-", plus | minus == set(O.elements)))
    report.add(
        Check(
            "ODP+ n ODP- = E(I_n)",
            plus & minus == idem and len(idem) == f.idempotents,
            {"idempotents": len(idem), "expected": f.idempotents},
        )
    )
    report.add(
        Check(
            "|ODP+| = |ODP-| = 2^(n+1)-(n+1)",
            len(plus) == len(minus) == f.odp_plus,
            {"plus": len(plus), "minus": len(minus), "expected": f.odp_plus},
        )
    )
    report.add(Check("two-sided closure of DP_n", D.is_closed() if n <= 6 else True))
    report.checks[-1].witness = {"checked": n <= 6}
    report.elapsed_ms = (time.perf_counter() - t0) * 1000
    return report


def minimal_generating_check(
    gens: GeneratorFamily | Sequence[tuple[str, PartialInjection]],
    target: MonoidSet,
    *,
    budget: int = DEFAULT_BUDGET,
) -> VerificationReport:
    """``gens`` generates ``target`` and no one-removed subset does."""
    if not isinstance(gens, GeneratorFamily):
        gens = GeneratorFamily("custom", target.n, tuple(gens))
    report = VerificationReport("minimal-generating", n=target.n, kind=gens.kind)
    full = closure(gens, budget=budget)
    report.add(
        Check(
            "generates target",
            full.elements == target.elements,
            {"closure": len(full), "target": len(target)},
        )
    )
    for label in gens.labels:
        rest = gens.without(label)
        if rest.elements:
            size = len(closure(rest, budget=budget))
        else:
            size = 1
        report.add(Check(f"without {label} is proper", size < len(target), {"closure": size}))
    return report

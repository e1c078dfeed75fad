"""Injective partial self-maps of {1..n}.

Maps act on the right: ``compose(a, b)`` first applies ``a`` and then ``b``,
so ``i (ab) = (i a) b``.  Every element carries its ground-set size ``n`` and
mixing sizes is an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .errors import MismatchedGroundSet, NotInjective, OutOfRange
from .kernels import compose_images


@dataclass(frozen=True, slots=True)
class PartialInjection:
    """An element of the symmetric inverse monoid I_n.

    ``images[i-1]`` is the image of point ``i``, or 0 if ``i`` is outside the
    domain.  Use :func:`make` to build one from pairs.
    """

    n: int
    images: bytes

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((i + 1, x) for i, x in enumerate(self.images) if x)

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, x in enumerate(self.images) if x)

    @property
    def image(self) -> tuple[int, ...]:
        return tuple(sorted(x for x in self.images if x))

    def __call__(self, point: int) -> Optional[int]:
        x = self.images[point - 1]
        return x or None

    def __mul__(self, other: "PartialInjection") -> "PartialInjection":
        return compose(self, other)

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class Classification:
    order_preserving: bool
    order_reversing: bool
    isometry: bool
    extensive: bool
    coextensive: bool
    partial_identity: bool
    shift: Optional[int]


def make(n: int, pairs: Iterable[tuple[int, int]] | dict) -> PartialInjection:
    """Build a canonical element from ``(point, image)`` pairs or a dict."""
    if n < 1 or n > 255:
        raise OutOfRange(n, 255)
    if isinstance(pairs, dict):
        pairs = pairs.items()
    img = bytearray(n)
    used = set()
    for i, j in pairs:
        for p in (i, j):
            if not 1 <= p <= n:
                raise OutOfRange(p, n)
        if img[i - 1]:
            raise NotInjective(i, "domain")
        if j in used:
            raise NotInjective(j, "image")
        img[i - 1] = j
        used.add(j)
    return PartialInjection(n, bytes(img))


def identity(n: int) -> PartialInjection:
    return PartialInjection(n, bytes(range(1, n + 1)))


def empty(n: int) -> PartialInjection:
    return PartialInjection(n, bytes(n))


def partial_identity(n: int, points: Iterable[int]) -> PartialInjection:
    return make(n, [(p, p) for p in points])


def compose(a: PartialInjection, b: PartialInjection) -> PartialInjection:
    if a.n != b.n:
        raise MismatchedGroundSet(f"cannot compose elements of I_{a.n} and I_{b.n}")
    return PartialInjection(a.n, compose_images(a.images, b.images))


def inverse(a: PartialInjection) -> PartialInjection:
    img = bytearray(a.n)
    for i, x in enumerate(a.images):
        if x:
            img[x - 1] = i + 1
    return PartialInjection(a.n, bytes(img))


def rank(a: PartialInjection) -> int:
    return a.n - a.images.count(0)


def canonical_key(a: PartialInjection) -> tuple[int, bytes]:
    return (a.n, a.images)


def classify(a: PartialInjection) -> Classification:
    pts = a.pairs
    preserving = reversing = isometry = True
    for (i, x), (j, y) in combinations(pts, 2):
        # pairs are domain-sorted, so i < j
        if x > y:
            preserving = False
        if x < y:
            reversing = False
        if abs(x - y) != j - i:
            isometry = False
    shift = None
    if preserving and isometry and pts:
        shift = pts[0][1] - pts[0][0]
    return Classification(
        order_preserving=preserving,
        order_reversing=reversing,
        isometry=isometry,
        extensive=all(i <= x for i, x in pts),
        coextensive=all(x <= i for i, x in pts),
        partial_identity=all(i == x for i, x in pts),
        shift=shift,
    )


def is_order_preserving(a: PartialInjection) -> bool:
    return classify(a).order_preserving


def is_isometry(a: PartialInjection) -> bool:
    return classify(a).isometry


def in_podi(a: PartialInjection) -> bool:
    c = classify(a)
    return c.order_preserving or c.order_reversing


def in_poi(a: PartialInjection) -> bool:
    return classify(a).order_preserving


def in_dp(a: PartialInjection) -> bool:
    return classify(a).isometry


def in_odp(a: PartialInjection) -> bool:
    c = classify(a)
    return c.isometry and c.order_preserving


def render(a: PartialInjection) -> str:
    """Text form ``n=9; 3->1 5->3 6->4`` (``n=4; empty`` for rank 0)."""
    body = " ".join(f"{i}->{x}" for i, x in a.pairs) or "empty"
    return f"n={a.n}; {body}"


def parse(text: str) -> PartialInjection:
    head, _, body = text.partition(";")
    head = head.strip()
    if not head.startswith("n="):
        raise ValueError(f"malformed element {text!r}")
    n = int(head[2:])
    body = body.strip()
    if body == "empty":
        return empty(n)
    pairs = []
    for tok in body.split():
        i, _, x = tok.partition("->")
        pairs.append((int(i), int(x)))
    return make(n, pairs)

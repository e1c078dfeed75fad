import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from isomon import kernels
from isomon.monoid_families import generating_set
from isomon.presentations import build_presentation
from isomon.rewrite.rules import Codec
from isomon.rewrite.search import _sides

py = kernels.python
cy = kernels.cython
needs_cython = pytest.mark.skipif(cy is None, reason="compiled kernels not built")

images = st.integers(3, 8).flatmap(
    lambda n: st.tuples(st.permutations(range(n + 1)), st.permutations(range(n + 1)))
).map(lambda t: (bytes(t[0][1:]), bytes(t[1][1:])))


@needs_cython
@given(images)
def test_compose_parity(ab):
    a, b = ab
    assert cy.compose_images(a, b) == py.compose_images(a, b)


@needs_cython
@pytest.mark.parametrize("kind,n", [("A", 5), ("B", 5), ("C", 6)])
def test_closure_parity(kind, n):
    gens = [e.images for _, e in generating_set(kind, n).elements]
    ident = bytes(range(1, n + 1))
    assert cy.closure_images(gens, ident, 10**6) == py.closure_images(gens, ident, 10**6)
    assert cy.closure_images(gens, ident, 5) is None is py.closure_images(gens, ident, 5)


@needs_cython
def test_expand_parity():
    p = build_presentation("R", 4)
    codec = Codec(p.alphabet)
    sides, _ = _sides(codec, p.relations)
    start = codec.encode(("x3", "x4", "x3", "x4"))
    results = []
    for k in (py, cy):
        seen = {start: None}
        frontier = [start]
        for _ in range(3):
            frontier, meet, over = k.expand(frontier, sides, 8, seen, {}, 10**6)
        results.append((sorted(frontier), dict(seen)))
    assert results[0] == results[1]


@needs_cython
@given(st.text(alphabet="abc", max_size=20))
def test_reduce_parity(w):
    rules = [("aa", "a"), ("ba", "ab"), ("cb", ""), ("ccc", "c")]
    assert cy.reduce_word(w, rules) == py.reduce_word(w, rules)


def test_fallback_selected_by_env():
    env = dict(os.environ, ISOMON_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import isomon; print(isomon.BACKEND)"], env=env, capture_output=True, text=True
    )
    assert out.stdout.strip() == py.BACKEND

from math import comb

import pytest

from isomon import partial_injection as pi
from isomon.forms import (
    build_extension_forms,
    build_forms,
    check_bijection,
    check_extension_forms,
    forms_size_formula,
    gould_sum,
    subset_size_formula,
)
from isomon.monoid_families import cardinality_formulas, closure, generating_set
from isomon.presentations import evaluate, standard_assignment


@pytest.mark.parametrize("n", range(3, 8))
def test_strata_sizes(n):
    c = build_forms(n)
    sizes = {k: len(v) for k, v in c.strata.items()}
    assert sizes == {k: forms_size_formula(n, k) for k in range(n + 1)}
    for k in range(1, n):
        assert sizes[k] == comb(n, k) + 2 * comb(n, k + 1)
    assert sum(sizes.values()) == cardinality_formulas(n).odp


@pytest.mark.parametrize("n", range(4, 8))
def test_subset_sizes(n):
    c = build_forms(n)
    for k in range(2, n):
        for r in range(1, 8):
            got = sum(1 for e in c.entries if e.rank == n - k and e.subset == r)
            assert got == subset_size_formula(n, k, r), (k, r)


@pytest.mark.parametrize("m", range(0, 12))
def test_gould(m):
    for k in range(0, m + 1):
        assert gould_sum(k, m) == comb(m + 1, k + 1)


@pytest.mark.parametrize("n", range(3, 8))
def test_bijection(n):
    c = build_forms(n)
    assert check_bijection(c).ok
    a = standard_assignment("A", n)
    for e in c.entries:
        assert pi.rank(evaluate(e.word, a)) == e.rank


def test_missing_word_breaks_bijection():
    c = build_forms(4)
    short = type(c)(c.n, c.entries[:-1], c.value_of, c.word_of)
    assert not check_bijection(short).ok


@pytest.mark.parametrize("n", range(3, 6))
def test_extension_forms(n):
    ext = build_extension_forms(n)
    assert check_extension_forms(ext).ok
    assert len(ext.w_bar) == cardinality_formulas(n).dp
    a = standard_assignment("B", n)
    values = {evaluate(w, a) for w in ext.w_bar}
    assert values == set(closure(generating_set("B", n)).elements)


def test_w_bar_n3():
    assert len(build_extension_forms(3).w_bar) == 22

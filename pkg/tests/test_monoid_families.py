import pytest

from isomon import partial_injection as pi
from isomon.errors import EmptyDomainSet, UnsupportedN
from isomon.monoid_families import (
    cardinality_formulas,
    closure,
    conjugate_by_h,
    domain_census,
    gen_h,
    gen_x,
    generating_set,
    minimal_generating_check,
    odp_minus_sum,
    odp_plus_sum,
    verify_decomposition,
)


@pytest.mark.parametrize("n", range(3, 8))
def test_closure_sizes(n):
    f = cardinality_formulas(n)
    assert len(closure(generating_set("A", n))) == f.odp
    assert len(closure(generating_set("B", n))) == f.dp


def test_known_sizes():
    assert [cardinality_formulas(n).odp for n in (3, 4, 5)] == [16, 38, 84]
    assert [cardinality_formulas(n).dp for n in (3, 4, 5)] == [22, 59, 142]


@pytest.mark.parametrize("n", range(3, 11))
def test_half_sums_agree(n):
    assert odp_minus_sum(n) == odp_plus_sum(n) == cardinality_formulas(n).odp_plus


def test_generators_n4():
    assert gen_x(4, 1).pairs == ((1, 1), (2, 2), (4, 4))
    assert gen_x(4, 3).pairs == ((1, 2), (2, 3), (3, 4))
    assert gen_x(4, 4).pairs == ((2, 1), (3, 2), (4, 3))
    assert gen_h(4).pairs == ((1, 4), (2, 3), (3, 2), (4, 1))


@pytest.mark.parametrize("n", range(3, 8))
def test_conjugation(n):
    assert conjugate_by_h(gen_x(n, n - 1)) == gen_x(n, n)
    for i in range(1, n - 1):
        assert conjugate_by_h(gen_x(n, i)) == gen_x(n, n - i - 1)


def test_census():
    c = domain_census(9, {3, 5, 6})
    assert (c.coextensive_count, c.extensive_count, c.total) == (3, 4, 6)
    assert all(pi.in_odp(a) for a in c.elements)
    with pytest.raises(EmptyDomainSet):
        domain_census(9, set())


@pytest.mark.parametrize("n", range(3, 7))
def test_decomposition(n):
    assert verify_decomposition(n).ok


@pytest.mark.parametrize("n", range(3, 8))
def test_C_size_and_generation(n):
    C = generating_set("C", n)
    assert len(C) == (n + 3) // 2
    assert closure(C).elements == closure(generating_set("B", n)).elements


@pytest.mark.parametrize("n", range(3, 7))
def test_A_minimal(n):
    assert minimal_generating_check(generating_set("A", n), closure(generating_set("A", n))).ok


def test_non_minimal_detected():
    A = generating_set("A", 4)
    extra = list(A.elements) + [("y", pi.compose(gen_x(4, 1), gen_x(4, 2)))]
    r = minimal_generating_check(extra, closure(A))
    assert not r.ok and any("without y" in name for name in r.failing())


def test_small_n_rejected():
    with pytest.raises(UnsupportedN):
        generating_set("A", 2)

import pytest

from isomon.errors import UnboundLetter, UnsupportedN
from isomon.presentations import (
    KINDS,
    Presentation,
    Relation,
    build_presentation,
    check_relations,
    evaluate,
    format_presentation,
    parse_presentation,
    parse_word,
    relation_count_formula,
    standard_assignment,
)

ALPHA = {"R": "A", "Rbar": "B", "U": "B", "V": "C"}


@pytest.mark.parametrize("n", range(3, 11))
@pytest.mark.parametrize("kind", KINDS)
def test_counts(kind, n):
    assert len(build_presentation(kind, n)) == relation_count_formula(kind, n)


def test_named_counts():
    assert len(build_presentation("R", 4)) == 13
    assert len(build_presentation("Rbar", 5)) == 25
    assert len(build_presentation("U", 4)) == 12
    assert len(build_presentation("V", 5)) == 15
    assert len(build_presentation("V", 4)) == 10


@pytest.mark.parametrize("n", range(3, 9))
@pytest.mark.parametrize("kind", KINDS)
def test_relations_hold(kind, n):
    p = build_presentation(kind, n)
    assert check_relations(p, standard_assignment(ALPHA[kind], n)).ok


def _corrupt(r: Relation, a, alphabet):
    """A variant of ``r`` whose left side no longer matches the right."""
    target = evaluate(r.rhs, a)
    for lhs in [r.lhs + (lab,) for lab in alphabet] + [(), r.lhs[:-1]]:
        if evaluate(lhs, a) != target:
            return Relation(lhs, r.rhs, r.tag)
    raise AssertionError(f"no corruption found for {r}")


@pytest.mark.parametrize("kind", KINDS)
def test_corruption_detected(kind):
    n = 4
    p = build_presentation(kind, n)
    a = standard_assignment(ALPHA[kind], n)
    for i, r in enumerate(p.relations):
        bad = list(p.relations)
        bad[i] = _corrupt(r, a, p.alphabet)
        report = check_relations(p.with_relations(bad), a)
        assert report.failing() == [r.tag]


def test_R_n4_report_has_13_checks():
    report = check_relations(build_presentation("R", 4), standard_assignment("A", 4))
    assert len(report.checks) == 13


def test_round_trip():
    for kind in KINDS:
        p = build_presentation(kind, 5)
        q = parse_presentation(format_presentation(p), kind=kind, n=5)
        assert q.alphabet == p.alphabet and q.relations == p.relations


def test_unbound_letter():
    with pytest.raises(UnboundLetter):
        Presentation(("x1",), (Relation(parse_word("x1 x2"), (), "bad"),), n=3)
    p = build_presentation("Rbar", 3)
    with pytest.raises(UnboundLetter):
        check_relations(p, standard_assignment("A", 3))


def test_small_n():
    with pytest.raises(UnsupportedN):
        build_presentation("R", 2)


def test_no_NRhat1_for_even_n():
    assert not build_presentation("V", 4).family("NRhat1")
    assert build_presentation("V", 5).family("NRhat1")

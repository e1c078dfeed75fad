import pytest

from isomon.errors import LimitExceeded
from isomon.forms import build_forms
from isomon.presentations import Presentation, Relation, build_presentation, evaluate, parse_word, standard_assignment
from isomon.rewrite import (
    AS_WRITTEN,
    REVERSED,
    CompletionLimits,
    Derivation,
    RewriteRule,
    SearchLimits,
    Step,
    count_irreducible,
    derive,
    irreducible_words,
    kb_complete,
    normalize_to_form,
    parse_precedence,
    replay,
    system_from_rules,
)
from isomon.rewrite.rules import ReplayError, apply_at
from isomon.monoid_families import cardinality_formulas

W = parse_word


def rel(p, tag):
    return RewriteRule.from_relation(p.relation(tag))


def test_apply_at():
    p = build_presentation("R", 4)
    assert apply_at(W("x3 x4 x3"), rel(p, "R9"), 0) == ("x3",)
    assert apply_at(W("x1 x2"), rel(p, "R9"), 0) is None
    nr0 = RewriteRule.from_relation(build_presentation("Rbar", 4).relation("NR0"))
    assert apply_at(W("h h"), nr0, 0) == ()
    rev = RewriteRule.from_relation(p.relation("R9"), REVERSED)
    assert apply_at(W("x1 x3"), rev, 1) == W("x1 x3 x4 x3")


def test_derive_examples():
    p = build_presentation("R", 4)
    d = derive(W("x1 x2"), W("x2 x1"), p.relations, n=4)
    assert len(d) == 1 and d.steps[0].origin == "R2[1,2]"
    d = derive(W("x3 x3 x2"), W("x3 x3"), p.relations, n=4)
    assert d is not None and replay(d, p.relations) == W("x3 x3")
    assert len(derive(W("x1 x4"), W("x1 x4"), p.relations, n=4)) == 0


def test_derivation_symmetry():
    p = build_presentation("R", 4)
    a, b = W("x3 x3 x2"), W("x3 x3")
    d = derive(a, b, p.relations, n=4)
    e = derive(b, a, p.relations, n=4)
    assert e is not None
    assert replay(d.reversed(), p.relations) == a


def test_unsound_goal_is_not_found():
    p = build_presentation("R", 3)
    assert derive(W("x1"), W("x2"), p.relations, SearchLimits(max_states=10**5), n=3) is None


def test_starved_limits():
    p = build_presentation("R", 4)
    with pytest.raises(LimitExceeded):
        derive(W("x3 x3 x2"), W("x3 x3"), p.relations, SearchLimits(max_states=1), n=4)


def test_replay_rejects_bad_step():
    p = build_presentation("R", 4)
    d = Derivation(W("x1 x2"), W("x2 x1"), (Step(1, "R2[1,2]", AS_WRITTEN),))
    with pytest.raises(ReplayError):
        replay(d, p.relations)
    with pytest.raises(ReplayError):
        replay(Derivation(W("x1"), W("x1"), (Step(0, "nope", AS_WRITTEN),)), p.relations)


def test_derivation_json_round_trip():
    p = build_presentation("R", 4)
    d = derive(W("x3 x3 x2"), W("x3 x3"), p.relations, n=4)
    assert Derivation.from_dict(d.to_dict()) == d


def test_normalize_examples():
    p = build_presentation("R", 4)
    c = build_forms(4)
    f, d = normalize_to_form(W("x3 x4 x4"), c, p.relations)
    assert f == W("x4 x1") and [s.origin for s in d.steps] == ["R8"]
    f, d = normalize_to_form(W("x1"), c, p.relations)
    assert f == ("x1",) and len(d) == 0


def test_normalize_random_words(rng):
    n = 4
    p = build_presentation("R", n)
    c = build_forms(n)
    a = standard_assignment("A", n)
    letters = [f"x{i}" for i in range(1, n + 1)]
    for _ in range(25):
        w = tuple(rng.choice(letters) for _ in range(8))
        f, d = normalize_to_form(w, c, p.relations)
        assert f in c
        assert evaluate(f, a) == evaluate(w, a)
        assert replay(d, p.relations) == f


def test_kb_trivial():
    s = kb_complete(Presentation(("a",), (Relation(("a", "a"), ("a",), "r"),)))
    assert len(s) == 1 and count_irreducible(s) == 2
    assert irreducible_words(s) == [(), ("a",)]
    t = system_from_rules([(("a", "b"), ())], ("a", "b"))
    assert count_irreducible(t) == "infinite"


@pytest.mark.parametrize("kind,n", [("R", 3), ("V", 3), ("R", 4), ("V", 4)])
def test_kb_counts(kind, n):
    s = kb_complete(build_presentation(kind, n))
    f = cardinality_formulas(n)
    assert count_irreducible(s) == (f.odp if kind == "R" else f.dp)
    assert s.is_decreasing() and s.critical_pairs_join()


def test_kb_limits():
    with pytest.raises(LimitExceeded):
        kb_complete(build_presentation("V", 4), limits=CompletionLimits(max_rules=3))


def test_kb_normal_forms_match_semantics():
    n = 3
    s = kb_complete(build_presentation("R", n))
    a = standard_assignment("A", n)
    words = irreducible_words(s)
    assert len({evaluate(w, a) for w in words}) == len(words)


def test_precedence_parse():
    assert parse_precedence("x1<x2 < h") == ("x1", "x2", "h")
    s = kb_complete(build_presentation("V", 3), parse_precedence("h<x3<x1"))
    assert count_irreducible(s) == 22

import pytest

from isomon.errors import ConsequenceNotCertified, NoDefiningRelation, SpecInvalid
from isomon.forms import build_forms
from isomon.monoid_families import closure, generating_set
from isomon.presentations import (
    Relation,
    build_presentation,
    check_relations,
    evaluate,
    parse_word,
    standard_assignment,
    word,
)
from isomon.rewrite import SearchLimits, count_irreducible, derive, kb_complete, replay
from isomon.verifier import (
    T1,
    T2,
    TietzeStep,
    build_extension_presentation,
    check_U_equivalences,
    derive_V_from_U,
    eliminate_generator,
    guess_and_prove,
    dp_extension_spec,
    resolve_jobs,
    tietze_step,
    validate_spec,
)
from isomon.verifier.pipeline import prove

W = parse_word


def _gp(n, words=None, drop=(), **kw):
    p = build_presentation("R", n)
    if drop:
        p = p.without(*drop)
    w = build_forms(n).words if words is None else words
    return guess_and_prove(p, standard_assignment("A", n), closure(generating_set("A", n)), w, **kw)


def test_gp_defined_n3():
    gp = _gp(3)
    assert gp.verdict == "defined" and gp.exit_code == 0
    for entry in gp.closure_table.values():
        assert entry.status == "pass"


def test_gp_derivations_replay():
    gp = _gp(4)
    rels = build_presentation("R", 4).relations
    for d in gp.derivations().values():
        replay(d, rels)


def test_gp_missing_word():
    words = build_forms(3).words
    gp = _gp(3, words[:-1])
    assert gp.verdict != "defined"
    assert not gp.report.ok


def test_gp_wrong_relation_refutes():
    p = build_presentation("R", 3)
    bad = p.with_relations(list(p.relations) + [Relation(("x1",), ("x2",), "bogus")])
    gp = guess_and_prove(bad, standard_assignment("A", 3), closure(generating_set("A", 3)), build_forms(3).words)
    assert gp.verdict == "refuted" and gp.exit_code == 1


def test_gp_drop_R12_inconclusive():
    gp = _gp(4, drop=("R12",))
    assert gp.verdict == "inconclusive"
    assert (W("x4 x4 x4 x4"), "x4") in gp.failing_pairs


def test_gp_parallel_matches_serial():
    a = _gp(4, jobs=1)
    b = _gp(4, jobs=2)
    assert a.report.to_dict(timings=False) == b.report.to_dict(timings=False)


def test_resolve_jobs(monkeypatch):
    monkeypatch.setenv("ISOMON_JOBS", "3")
    assert resolve_jobs(None) == 3
    assert resolve_jobs(2) == 2
    monkeypatch.delenv("ISOMON_JOBS")
    assert resolve_jobs(None) == 1


def test_tietze_T4_example():
    p = build_presentation("Rbar", 4)
    defn = Relation(("x3",), W("h x4 h"), "def")
    d = derive(defn.lhs, defn.rhs, p.relations, n=4)
    q = tietze_step(p, TietzeStep(T1, relation=defn, derivation=d))
    q = tietze_step(q, eliminate_generator("x3", W("h x4 h")))
    assert "x3" not in q.alphabet
    assert str(q.relation("R9")).startswith("h x4 h x4 h x4 h = h x4 h")


def test_tietze_T1_equation_one():
    n = 5
    p = build_presentation("R", n)
    r = Relation(word(1, n - 1, n - 1), word(n - 1, n - 1), "eq1")
    d = derive(r.lhs, r.rhs, p.relations, n=n)
    q = tietze_step(p, TietzeStep(T1, relation=r, derivation=d))
    assert q.relations[-1] == r


def test_tietze_rejects_uncertified():
    p = build_presentation("R", 3)
    bogus = Relation(("x1",), ("x2",), "bogus")
    with pytest.raises(ConsequenceNotCertified):
        tietze_step(p, TietzeStep(T1, relation=bogus))
    q = p.with_relations(list(p.relations) + [bogus])
    with pytest.raises(ConsequenceNotCertified):
        tietze_step(q, TietzeStep(T2, relation=bogus), SearchLimits(max_states=10**4))
    with pytest.raises(NoDefiningRelation):
        tietze_step(p, eliminate_generator("x1"))


def test_tietze_soundness():
    p = build_presentation("R", 3)
    r = Relation(word(1, 2, 2), word(2, 2), "eq1")
    q = tietze_step(p, TietzeStep(T1, relation=r), SearchLimits())
    assert check_relations(q, standard_assignment("A", 3)).ok
    assert count_irreducible(kb_complete(q)) == count_irreducible(kb_complete(p)) == 16
    back = tietze_step(q, TietzeStep(T2, relation=r), SearchLimits())
    assert back.relations == p.relations


def test_extension_spec_n5():
    spec = dp_extension_spec(5)
    assert dict(spec.conjugates)["x1"] == ("x3",)
    p, w_bar = build_extension_presentation(spec)
    assert len(p) == (25 + 15 + 10) // 2
    assert len(build_extension_presentation(dp_extension_spec(3))[1]) == 22


def test_extension_spec_invalid():
    spec = dp_extension_spec(4)
    bad = spec.__class__(**{**spec.__dict__, "anchor_image": W("x1")})
    with pytest.raises(SpecInvalid):
        validate_spec(bad)


def test_Rbar_n3_defined():
    gp, _ = prove("Rbar", 3)
    assert gp.verdict == "defined"
    assert evaluate((), standard_assignment("B", 3)) is not None


@pytest.mark.parametrize("n", [3, 4])
def test_U_equivalences(n):
    assert check_U_equivalences(n).ok


@pytest.mark.parametrize("n,count", [(4, 10), (5, 15)])
def test_V_from_U(n, count):
    r = derive_V_from_U(n)
    assert r.ok
    assert next(c for c in r.checks if c.name == "result equals V").witness["V"] == count

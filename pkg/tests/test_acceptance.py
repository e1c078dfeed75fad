"""Acceptance suite: one test, and one printed pass/fail line, per criterion."""

import time
from functools import lru_cache
from math import comb

import pytest

from isomon import partial_injection as pi
from isomon.forms import build_extension_forms, build_forms, check_bijection, forms_size_formula
from isomon.monoid_families import (
    cardinality_formulas,
    closure,
    domain_census,
    generating_set,
    minimal_generating_check,
    verify_decomposition,
)
from isomon.presentations import (
    KINDS,
    Relation,
    build_presentation,
    check_relations,
    evaluate,
    relation_count_formula,
    standard_assignment,
)
from isomon.rewrite import count_irreducible, kb_complete, replay
from isomon.verifier import check_case_three, check_U_equivalences, derive_V_from_U
from isomon.verifier.pipeline import CENSUS_EXAMPLE, prove

ALPHA = {"R": "A", "Rbar": "B", "U": "B", "V": "C"}


@lru_cache(maxsize=None)
def proved(kind, n):
    return prove(kind, n)


def test_1_cardinalities(verdict_line):
    t0 = time.perf_counter()
    bad = []
    for n in range(3, 9):
        f = cardinality_formulas(n)
        if f.odp != 3 * 2**n - 2 * (n + 1) or f.dp != 3 * 2 ** (n + 1) - (n + 2) ** 2 - 1:
            bad.append(n)
        if len(closure(generating_set("A", n))) != f.odp or len(closure(generating_set("B", n))) != f.dp:
            bad.append(n)
    samples = [(cardinality_formulas(n).odp, cardinality_formulas(n).dp) for n in (3, 4, 5)]
    elapsed = time.perf_counter() - t0
    ok = not bad and samples == [(16, 22), (38, 59), (84, 142)] and elapsed < 10
    assert verdict_line(1, "cardinalities of ODP_n and DP_n, n=3..8", ok, f"{elapsed:.2f}s")


def test_2_decomposition(verdict_line):
    reports = [verify_decomposition(n) for n in range(3, 8)]
    failing = [f"n={r.n}: {c}" for r in reports for c in r.failing()]
    assert verdict_line(2, "DP = ODP u h.ODP, intersections and half counts, n=3..7", not failing, "; ".join(failing))


def test_3_relations(verdict_line):
    failing = []
    for n in range(3, 9):
        for kind in KINDS:
            r = check_relations(build_presentation(kind, n), standard_assignment(ALPHA[kind], n))
            failing += [f"{kind} n={n} {c}" for c in r.failing()]
    counts = all(
        len(build_presentation(kind, n)) == relation_count_formula(kind, n) for kind in KINDS for n in range(3, 11)
    )
    named = [len(build_presentation(k, n)) for k, n in (("R", 4), ("Rbar", 5), ("U", 4), ("V", 5), ("V", 4))]
    ok = not failing and counts and named == [13, 25, 12, 15, 10]
    assert verdict_line(3, "relations hold for n=3..8 and counts match for n=3..10", ok, "; ".join(failing[:5]))


def test_4_forms(verdict_line):
    t0 = time.perf_counter()
    problems = []
    for n in range(3, 8):
        c = build_forms(n)
        sizes = {k: len(v) for k, v in c.strata.items()}
        for k in range(1, n):
            if sizes[k] != comb(n, k) + 2 * comb(n, k + 1):
                problems.append(f"n={n} |W_{k}|")
        # the generic count overshoots at k = 0 by 2n and is exact elsewhere
        generic = sum(comb(n, k) + 2 * comb(n, k + 1) for k in range(n + 1))
        if generic - 2 * n != cardinality_formulas(n).odp or sum(sizes.values()) != cardinality_formulas(n).odp:
            problems.append(f"n={n} total")
        if sizes != {k: forms_size_formula(n, k) for k in range(n + 1)}:
            problems.append(f"n={n} strata")
        problems += [f"n={n} {x}" for x in check_bijection(c).failing()]
        a = standard_assignment("A", n)
        if any(pi.rank(evaluate(e.word, a)) != e.rank for e in c.entries):
            problems.append(f"n={n} rank")
    elapsed = time.perf_counter() - t0
    ok = not problems and elapsed < 30
    assert verdict_line(4, "forms sizes, bijection onto ODP_n and ranks, n=3..7", ok,
                        "; ".join(problems) or f"{elapsed:.2f}s")


def test_5_closure_lemma(verdict_line):
    t0 = time.perf_counter()
    problems = []
    for n in range(3, 6):
        gp, c = proved("R", n)
        rels = build_presentation("R", n).relations
        a = standard_assignment("A", n)
        for (w, x), e in gp.closure_table.items():
            if e.status != "pass" or e.target not in c:
                problems.append(f"n={n} ({' '.join(w)}, {x}) {e.status}")
                continue
            replay(e.derivation, rels)
            if evaluate(w + (x,), a) != evaluate(e.target, a):
                problems.append(f"n={n} ({' '.join(w)}, {x}) unsound")
        if len(gp.closure_table) != len(c) * n:
            problems.append(f"n={n} table incomplete")
        problems += [f"n={n} case III {x}" for x in check_case_three(gp, c).failing()]
    elapsed = time.perf_counter() - t0
    ok = not problems and elapsed < 600
    assert verdict_line(5, "every w x derives a form, sound and replayable, n=3..5; case III strata", ok,
                        "; ".join(problems[:5]) or f"{elapsed:.1f}s")


def test_6_guess_and_prove(verdict_line):
    got = {}
    for n in range(3, 6):
        gp, c = proved("R", n)
        got[f"R{n}"] = (gp.verdict, len(c) == len(closure(generating_set("A", n))))
    for n in (3, 4):
        gp, _ = proved("Rbar", n)
        wbar = len(build_extension_forms(n).w_bar)
        got[f"Rbar{n}"] = (gp.verdict, wbar == cardinality_formulas(n).dp)
    ok = all(v == ("defined", True) for v in got.values()) and len(build_extension_forms(3).w_bar) == 22
    detail = ", ".join(f"{k}: {v[0]}" for k, v in got.items())
    assert verdict_line(6, "<A|R> defines ODP_n (n=3..5), <B|Rbar> defines DP_n (n=3..4)", ok, detail)


def test_7_chain(verdict_line):
    problems = []
    for n in range(3, 6):
        problems += [f"U n={n} {x}" for x in check_U_equivalences(n).failing()]
    for n in range(3, 7):
        r = derive_V_from_U(n)
        problems += [f"V n={n} {x}" for x in r.failing()]
        has_hat = bool(build_presentation("V", n).family("NRhat1"))
        if has_hat != (n % 2 == 1):
            problems.append(f"V n={n} NRhat1 parity")
    assert verdict_line(7, "U equivalences n=3..5 and V derived from U n=3..6", not problems,
                        "; ".join(problems[:5]))


def test_8_kb_oracle(verdict_line):
    got = {}
    for kind, n in (("R", 3), ("V", 3), ("R", 4), ("V", 4)):
        f = cardinality_formulas(n)
        count = count_irreducible(kb_complete(build_presentation(kind, n)))
        got[f"{kind}{n}"] = count == (f.odp if kind == "R" else f.dp)
    assert verdict_line(8, "Knuth-Bendix irreducible counts equal |ODP_n| / |DP_n| at n=3,4", all(got.values()),
                        ", ".join(k for k, v in got.items() if not v))


def test_9_census(verdict_line):
    c = domain_census(9, {3, 5, 6})
    ok = (c.coextensive_count, c.extensive_count, c.total) == (3, 4, 6)
    ok &= tuple(pi.render(a) for a in c.elements) == CENSUS_EXAMPLE
    assert verdict_line(9, "domain {3,5,6} in ODP_9: six maps, 3 co-extensive, 4 extensive", ok)


def test_10_generating_sets(verdict_line):
    problems = []
    for n in range(3, 7):
        A = generating_set("A", n)
        problems += [f"A n={n} {x}" for x in minimal_generating_check(A, closure(A)).failing()]
    for n in range(3, 8):
        C = generating_set("C", n)
        if len(C) != (n + 3) // 2 or closure(C).elements != closure(generating_set("B", n)).elements:
            problems.append(f"C n={n}")
    assert verdict_line(10, "A minimal for ODP_n (n=3..6), C generates DP_n (n=3..7)", not problems,
                        "; ".join(problems))


def _corruptions(r, a, alphabet):
    for side in ("lhs", "rhs"):
        w = getattr(r, side)
        other = evaluate(r.rhs if side == "lhs" else r.lhs, a)
        for cand in [w + (lab,) for lab in alphabet] + [(), w[:-1]]:
            if evaluate(cand, a) != other:
                yield Relation(cand, r.rhs, r.tag) if side == "lhs" else Relation(r.lhs, cand, r.tag)
                break
        else:
            raise AssertionError(f"no corruption of {r}")


def test_11_negative_controls(verdict_line):
    gp, _ = prove("R", 4, drop=("R12",))
    dropped = gp.verdict == "inconclusive" and (("x4",) * 4, "x4") in gp.failing_pairs
    misses = []
    for kind in KINDS:
        for n in (3, 4, 5):
            p = build_presentation(kind, n)
            a = standard_assignment(ALPHA[kind], n)
            for i, r in enumerate(p.relations):
                for bad in _corruptions(r, a, p.alphabet):
                    rels = list(p.relations)
                    rels[i] = bad
                    if check_relations(p.with_relations(rels), a).ok:
                        misses.append(f"{kind} n={n} {r.tag}")
    ok = dropped and not misses
    assert verdict_line(11, "dropping R12 is inconclusive at (x4^4, x4); every corrupted side fails", ok,
                        f"verdict {gp.verdict}" + ("; " + "; ".join(misses[:5]) if misses else ""))


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))

import itertools
import random

import pytest

from mono3sat.formulas import (
    SAT,
    Clause,
    CnfInstance,
    Literal,
    appearance_profile,
    neg,
    pos,
)
from mono3sat import witnesses as W
from mono3sat.oracle import solve_dpll, solve_exhaustive
from mono3sat.witnesses import (
    NINE_VAR_TABLE,
    SearchBudget,
    bound_satisfiable,
    canonical_shape,
    canonical_signature,
    check_sat_via_transversal,
    known_unsat,
    min_transversal_hitting_set,
    mon51_compositional_check,
    search_unsat,
    transversal_count,
)


def test_nine_var_transcription_before_solving():
    inst = known_unsat("nine_var")
    assert inst.num_vars == 9 and inst.num_clauses == 18
    assert len(NINE_VAR_TABLE) == 18
    # frozen table: first clause {~a,~d,~g}, clause 13 {a,b,c}, clause 18 {~c,~d,~f}
    assert inst.clauses[0].litset() == frozenset({neg(0), neg(3), neg(6)})
    assert inst.clauses[12].litset() == frozenset({pos(0), pos(1), pos(2)})
    assert inst.clauses[17].litset() == frozenset({neg(2), neg(3), neg(5)})
    assert appearance_profile(inst) == [(3, 3)] * 9


def test_ss_bar_shape():
    inst = known_unsat("ss_bar")
    assert inst.num_vars == 13 and inst.num_clauses == 26
    assert appearance_profile(inst) == [(3, 3)] * 13


def test_mon51_shape():
    inst = known_unsat("mon51")
    assert inst.num_vars == 102 and inst.num_clauses == 204
    assert appearance_profile(inst) == [(5, 1)] * 102


def test_hitting27_shape():
    inst = known_unsat("hitting27")
    assert inst.num_vars == 9 and inst.num_clauses == 30
    prof = appearance_profile(inst)
    assert all(p == 9 and q == 1 for p, q in prof)  # 9 = 81/9 unnegated


def test_all_witnesses_unsat():
    for name in ("nine_var", "ss_bar", "hitting27"):
        assert solve_exhaustive(known_unsat(name)).status == "unsat"
    assert solve_dpll(known_unsat("mon51"), timeout=60).status == "unsat"
    assert mon51_compositional_check().ok


def test_unknown_witness():
    with pytest.raises(KeyError):
        known_unsat("nope")


def test_transversal_counts():
    for n in (3, 6, 9, 12, 15):
        assert transversal_count(n) == 3 ** (n // 3)
        triples = [(3 * i, 3 * i + 1, 3 * i + 2) for i in range(n // 3)]
        assert sum(1 for _ in itertools.product(*triples)) == 3 ** (n // 3)


def test_coverage_count_n12():
    # a fixed transversal 3-clause lies in exactly 3^(12/3-3) = 3 members
    triples = [(0, 1, 2), (3, 4, 5), (6, 7, 8), (9, 10, 11)]
    for clause in ((0, 3, 6), (1, 5, 8), (2, 4, 7)):
        cnt = sum(
            1 for X in itertools.product(*triples) if set(clause) <= set(X)
        )
        assert cnt == 3


def _canonical_instance(k, positives):
    n = 3 * k
    cls = [
        Clause(tuple(Literal(3 * i + s, True) for s in range(3)))
        for i in range(k)
    ]
    cls += [Clause(tuple(Literal(v) for v in tri)) for tri in positives]
    return CnfInstance(n, tuple(cls), SAT)


def test_transversal_hitting27_unsat():
    rep = check_sat_via_transversal(known_unsat("hitting27"))
    assert not rep.ok  # every transversal is hit


def test_transversal_empty_positives_sat():
    inst = _canonical_instance(3, [])
    rep = check_sat_via_transversal(inst)
    assert rep.ok


def test_transversal_shape_mismatch():
    with pytest.raises(ValueError):
        check_sat_via_transversal(known_unsat("nine_var"))


def test_transversal_agrees_with_oracle():
    rng = random.Random(55)
    for _ in range(60):
        k = rng.randint(1, 5)
        n = 3 * k
        m = rng.randint(0, 3 * k)
        seen = set()
        for _ in range(m):
            tri = tuple(sorted(rng.sample(range(n), 3)))
            seen.add(tri)
        inst = _canonical_instance(k, sorted(seen))
        a = check_sat_via_transversal(inst).ok
        b = solve_exhaustive(inst).status == "sat"
        assert a == b


def test_bound_appearance_route():
    # n = 30, every variable unnegated at most twice: 2 < 81/30
    k = 10
    positives = [(3 * i, 3 * i + 4, 3 * i + 8) for i in range(k - 3)]
    inst = _canonical_instance(k, positives)
    assert max(p for p, _ in appearance_profile(inst)) <= 2
    assert bound_satisfiable(inst) is not None
    assert solve_dpll(inst).status == "sat"


def test_bound_clause_count_route():
    # 26 positive clauses < 27 guarantee satisfiability regardless of profile
    rng = random.Random(8)
    tris = set()
    while len(tris) < 26:
        tris.add(tuple(sorted(rng.sample(range(9), 3))))
    inst = _canonical_instance(3, sorted(tris))
    assert bound_satisfiable(inst) is not None
    assert solve_exhaustive(inst).status == "sat"


def test_bound_no_guarantee_on_hitting27():
    # both bounds are tight here (9 = 81/9 and 27 positive clauses)
    assert bound_satisfiable(known_unsat("hitting27")) is None


def test_bound_never_contradicts_oracle():
    rng = random.Random(13)
    for _ in range(60):
        k = rng.randint(1, 5)
        n = 3 * k
        tris = set()
        for _ in range(rng.randint(0, 4 * k)):
            tris.add(tuple(sorted(rng.sample(range(n), 3))))
        inst = _canonical_instance(k, sorted(tris))
        if bound_satisfiable(inst) is not None:
            assert solve_exhaustive(inst).status == "sat"


def test_min_hitting_set_n9():
    assert min_transversal_hitting_set(9) == 27


def test_min_hitting_set_n12():
    assert min_transversal_hitting_set(12) == 27


def test_min_hitting_set_small_n_undefined():
    # a transversal of n < 9 variables has no 3-element subset, so no
    # positive 3-clause can block one
    with pytest.raises(ValueError):
        min_transversal_hitting_set(6)
    with pytest.raises(ValueError):
        min_transversal_hitting_set(3)


def test_canonical_shape_rejects_mixed():
    inst = CnfInstance(3, (Clause((pos(0), neg(1), pos(2))),), SAT)
    with pytest.raises(ValueError):
        canonical_shape(inst)


def test_canonical_signature_dedup_properties():
    # the signature is a sound dedup key, not a full canonical form: it is
    # invariant under clause reordering and idempotent under its own
    # relabeling, and equal signatures imply isomorphic instances
    rng = random.Random(21)
    base = [((0, 1, 2), False), ((0, 3, 4), True), ((1, 3, 5), False)]
    sig = canonical_signature(base)
    shuffled = base[:]
    for _ in range(5):
        rng.shuffle(shuffled)
        assert canonical_signature(shuffled) == sig
    assert canonical_signature(list(sig)) == sig  # idempotent


def test_search_22_exhausts_n3_and_n6():
    events = []
    out = search_unsat((2, 2), SearchBudget(max_n=6, max_candidates=10_000),
                       journal=events.append)
    assert out.found is None
    recs = {r["n"]: r for r in out.records}
    assert recs[3]["candidates"] == 0 and recs[3]["exhausted"]
    assert recs[6]["exhausted"] and recs[6]["candidates"] > 0
    assert any(e["event"] == "n-done" for e in events)


def test_search_22_budget_truncation_at_n9():
    # n=6 takes 819 canonical candidates, so n=9 starts and is then cut off
    out = search_unsat((2, 2), SearchBudget(max_n=9, max_candidates=1000))
    rec9 = [r for r in out.records if r["n"] == 9]
    assert rec9 and not rec9[0]["exhausted"]
    assert rec9[0]["candidates"] > 0


def test_search_41_below_bound_is_empty():
    # the counting bound says n < 21 is always satisfiable; nothing to search
    out = search_unsat((4, 1), SearchBudget(max_n=18, max_candidates=100))
    assert out.found is None and out.records == []


def test_search_41_samples_above_bound():
    out = search_unsat((4, 1), SearchBudget(max_n=21, max_candidates=40, seed=3))
    assert out.found is None  # a find would falsify the paper's corollary
    assert out.records and out.records[0]["n"] == 21


def test_search_51_probe_finds_construction():
    out = search_unsat((5, 1), SearchBudget(max_n=102, max_candidates=5))
    assert out.found is not None
    assert out.found.num_vars == 102
    prof = appearance_profile(out.found)
    assert all(pq == (5, 1) for pq in prof)


def test_search_unknown_profile():
    with pytest.raises(KeyError):
        search_unsat((9, 9), SearchBudget())

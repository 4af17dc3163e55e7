import random

import pytest

from mono3sat.formulas import (
    EXACT,
    NAE,
    SAT,
    TOTAL,
    MONOTONE_NAE,
    MONOTONE_SAT,
    Clause,
    CnfInstance,
    Literal,
    VariantSpec,
    appearance_profile,
    evaluate,
    is_linear,
    neg,
    negate_rename,
    pos,
    validate,
)
from mono3sat import generate as G
from mono3sat.gadgets import FreshAllocator, build_gadget
from mono3sat.oracle import solve_exhaustive
from mono3sat.reductions import apply_reduction
from mono3sat.witnesses import known_unsat


def test_set_clause_rejects_repeated_variable():
    with pytest.raises(ValueError):
        Clause((pos(0), pos(0), pos(1)))
    with pytest.raises(ValueError):
        Clause((pos(0), neg(0), pos(1)))  # complementary pair
    Clause((pos(0), pos(0), pos(1)), multiset=True)  # fine as multiset


def test_instance_checks_variable_range():
    with pytest.raises(ValueError):
        CnfInstance(1, (Clause((pos(1),)),), SAT)
    with pytest.raises(ValueError):
        CnfInstance(1, (), "maybe")


def test_appearance_profile_nine_var():
    prof = appearance_profile(known_unsat("nine_var"))
    assert prof == [(3, 3)] * 9


def test_appearance_profile_empty():
    assert appearance_profile(CnfInstance(0, (), SAT)) == []


def test_appearance_profile_multiset_duplicates_counted():
    c = Clause((pos(0), pos(0), pos(2)), multiset=True)
    prof = appearance_profile(CnfInstance(3, (c,), SAT))
    assert prof[0] == (2, 0)
    assert prof[2] == (1, 0)


def test_profile_totals_match_clause_lengths():
    rng = random.Random(1)
    for _ in range(30):
        n = rng.randint(1, 8)
        cls = []
        for _ in range(rng.randint(0, 10)):
            k = rng.randint(1, 3)
            if rng.random() < 0.3:
                lits = tuple(
                    Literal(rng.randrange(n), rng.random() < 0.5) for _ in range(k)
                )
                cls.append(Clause(lits, multiset=True))
            else:
                vs = rng.sample(range(n), min(k, n))
                cls.append(Clause(tuple(Literal(v, rng.random() < 0.5) for v in vs)))
        inst = CnfInstance(n, tuple(cls), SAT)
        prof = appearance_profile(inst)
        assert sum(p + q for p, q in prof) == sum(len(c.literals) for c in inst.clauses)


def test_validate_nine_var_profiles():
    nine = known_unsat("nine_var")
    assert validate(nine, VariantSpec(3, False, MONOTONE_SAT, (EXACT, 3, 3))).ok
    rep = validate(nine, VariantSpec(3, False, MONOTONE_NAE, None))
    assert not rep.ok
    assert rep.witness == ("clause", 0)  # the first negative clause


def test_validate_r3_output_is_linear_nae_e4():
    rng = random.Random(7)
    out = apply_reduction("R3", G.random_nae_e4(6, rng)).output
    spec = VariantSpec(3, False, MONOTONE_NAE, (TOTAL, 4), "linear")
    assert validate(out, spec).ok


def test_validate_individual_predicates_recheck():
    rng = random.Random(3)
    inst = G.random_kk(6, 3, rng)
    spec = VariantSpec(3, False, MONOTONE_SAT, (EXACT, 3, 3))
    assert validate(inst, spec).ok
    # re-check each predicate independently
    assert all(len(c.literals) == 3 for c in inst.clauses)
    assert all(c.all_positive() or c.all_negative() for c in inst.clauses)
    assert appearance_profile(inst) == [(3, 3)] * 6


def test_monotone_counting_identity():
    # exact (p,q) with arity 3 and sat-monotone forces 3*#neg = n*q etc.
    rng = random.Random(11)
    for k in (1, 2, 3):
        inst = G.random_kk(6, k, rng)
        n = inst.num_vars
        npos = sum(1 for c in inst.clauses if c.all_positive())
        nneg = sum(1 for c in inst.clauses if c.all_negative())
        assert npos * 3 == n * k
        assert nneg * 3 == n * k


def test_validate_distinct_clauses():
    c = Clause((pos(0), pos(1), pos(2)))
    inst = CnfInstance(3, (c, c), SAT)
    rep = validate(inst, VariantSpec(3))
    assert not rep.ok and rep.witness == ("clause_pair", 0, 1)
    assert validate(inst, VariantSpec(3, distinct_clauses=False)).ok


def test_is_linear_eq4l_gadget():
    g = build_gadget("EQ4L", (0, 1, 2, 3), FreshAllocator(4))
    inst = CnfInstance(10, g.clauses, NAE)
    assert is_linear(inst).ok


def test_is_linear_two_shared():
    cls = (
        Clause((pos(0), pos(1), pos(2))),
        Clause((pos(0), pos(1), pos(3))),
    )
    rep = is_linear(CnfInstance(4, cls, SAT))
    assert not rep.ok
    assert rep.witness == ("clause_pair", 0, 1)


def test_is_linear_nine_var_fails_on_clauses_1_and_7():
    rep = is_linear(known_unsat("nine_var"))
    assert not rep.ok
    assert rep.witness == ("clause_pair", 0, 6)  # share a, d, g


def test_is_linear_rejects_multiset():
    c = Clause((pos(0), pos(0), pos(1)), multiset=True)
    with pytest.raises(ValueError):
        is_linear(CnfInstance(2, (c,), SAT))


def test_exact_linear():
    # three clauses pairwise sharing exactly one variable
    cls = (
        Clause((pos(0), pos(1), pos(2))),
        Clause((pos(0), pos(3), pos(4))),
        Clause((pos(1), pos(3), pos(5))),
    )
    assert is_linear(CnfInstance(6, cls, SAT), exact=True).ok
    disjoint = (
        Clause((pos(0), pos(1), pos(2))),
        Clause((pos(3), pos(4), pos(5))),
    )
    assert not is_linear(CnfInstance(6, disjoint, SAT), exact=True).ok


def test_negate_rename_profile_flip():
    # a variable appearing three times negated, once unnegated
    cls = (
        Clause((neg(0), pos(1), pos(2))),
        Clause((neg(0), pos(1), pos(3))),
        Clause((neg(0), pos(2), pos(3))),
        Clause((pos(0), pos(1), pos(4))),
    )
    inst = CnfInstance(5, cls, SAT)
    assert appearance_profile(inst)[0] == (1, 3)
    flipped = negate_rename(inst, [0])
    assert appearance_profile(flipped)[0] == (3, 1)


def test_negate_rename_involution_and_sat_preservation():
    nine = known_unsat("nine_var")
    flipped = negate_rename(nine, range(9))
    assert solve_exhaustive(flipped).status == "unsat"
    assert negate_rename(flipped, range(9)) == nine
    rng = random.Random(4)
    for _ in range(20):
        inst = G.random_22(6, rng)
        sel = [v for v in range(6) if rng.random() < 0.5]
        out = negate_rename(inst, sel)
        assert negate_rename(out, sel) == inst
        assert solve_exhaustive(out).status == solve_exhaustive(inst).status


def test_negate_rename_range_check():
    with pytest.raises(ValueError):
        negate_rename(CnfInstance(2, (), SAT), [5])


def test_evaluate_modes():
    c = Clause((pos(0), pos(1), pos(2)))
    inst_sat = CnfInstance(3, (c,), SAT)
    inst_nae = CnfInstance(3, (c,), NAE)
    assert evaluate(inst_sat, (True, True, True))
    assert not evaluate(inst_nae, (True, True, True))
    assert evaluate(inst_nae, (True, False, True))
    with pytest.raises(ValueError):
        evaluate(inst_sat, (True,))

"""Explicit unsatisfiable instances, transversal combinatorics behind the
satisfiability bounds for once-negated variants, and the search engines for
the two open challenges (an unsatisfiable Monotone 3-Sat-(2,2) instance;
hardness of Monotone 3-Sat-(k,1) for k in {3,4})."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from .formulas import (
    EXACT,
    SAT,
    Clause,
    CnfInstance,
    Literal,
    VariantSpec,
    VerificationReport,
    appearance_profile,
    validate,
)
from .gadgets import FreshAllocator, build_gadget, verify_composite
from .generate import GenerationError, random_k1
from .oracle import CapExceededError, enum_cap, solve_dpll, solve_exhaustive

# The 9-variable, 18-clause unsatisfiable Monotone 3-Sat-(3,3) instance,
# transcribed as a frozen table (variables a..i are ids 0..8).
NINE_VAR_TABLE = (
    "~a ~d ~g",
    "~a ~f ~i",
    "~b ~d ~h",
    "~b ~e ~f",
    "~c ~e ~g",
    "~c ~h ~i",
    "a d g",
    "a f i",
    "b d h",
    "b e f",
    "c e g",
    "c h i",
    "a b c",
    "d e i",
    "f g h",
    "~a ~e ~h",
    "~b ~g ~i",
    "~c ~d ~f",
)

WITNESS_NAMES = ("ss_bar", "nine_var", "mon51", "hitting27")


def _nine_var() -> CnfInstance:
    clauses = []
    for line in NINE_VAR_TABLE:
        lits = []
        for tok in line.split():
            negated = tok.startswith("~")
            name = tok[1:] if negated else tok
            lits.append(Literal(ord(name) - ord("a"), negated))
        clauses.append(Clause(tuple(lits)))
    return CnfInstance(9, tuple(clauses), SAT)


def _ss_bar() -> CnfInstance:
    alloc = FreshAllocator(1)
    s = build_gadget("S", (0, 0, 0), alloc)
    sbar = build_gadget("SBAR", (0, 0, 0), alloc)
    return CnfInstance(alloc.next_id, s.clauses + sbar.clauses, SAT)


def mon51_structure():
    """The 204-clause construction: three true-enforcers whose outputs share
    a negative clause, padded by one more D instance."""
    alloc = FreshAllocator(3)
    y1, y2, y3 = 0, 1, 2
    fs = tuple(build_gadget("F", (y,), alloc) for y in (y1, y2, y3))
    connector = Clause((Literal(y1, True), Literal(y2, True), Literal(y3, True)))
    pad = build_gadget("D", (y1, y1, y2, y2, y3, y3), alloc)
    clauses = tuple(c for f in fs for c in f.clauses) + (connector,) + pad.clauses
    inst = CnfInstance(alloc.next_id, clauses, SAT)
    return inst, fs, connector, pad


def _mon51() -> CnfInstance:
    return mon51_structure()[0]


def _hitting27() -> CnfInstance:
    clauses = [
        Clause(tuple(Literal(v, True) for v in tri))
        for tri in ((0, 1, 2), (3, 4, 5), (6, 7, 8))
    ]
    for a in (0, 1, 2):
        for bvar in (3, 4, 5):
            for c in (6, 7, 8):
                clauses.append(Clause((Literal(a), Literal(bvar), Literal(c))))
    return CnfInstance(9, tuple(clauses), SAT)


def known_unsat(name: str) -> CnfInstance:
    builders = {
        "ss_bar": _ss_bar,
        "nine_var": _nine_var,
        "mon51": _mon51,
        "hitting27": _hitting27,
    }
    if name not in builders:
        raise KeyError(f"unknown witness {name!r}; choices: {WITNESS_NAMES}")
    return builders[name]()


def mon51_compositional_check(timeout: float | None = None) -> VerificationReport:
    """Certify mon51 unsatisfiable without solving all 102 variables at once.

    Each F enforcer is certified compositionally (its D parts by
    enumeration), which forces its output variable true; the residual
    12-variable instance (the shared negative clause plus the padding D)
    conjoined with those forced values is then refuted exhaustively.
    """
    inst, fs, connector, pad = mon51_structure()
    for f in fs:
        rep = verify_composite(f)
        if not rep.ok:
            return VerificationReport(False, f"F enforcer failed: {rep.reason}", rep.witness)
        if f.predicate.accepted != frozenset({1}):
            return VerificationReport(False, "F does not force its output true")
    residual_vars = [0, 1, 2] + list(pad.aux)
    remap = {v: i for i, v in enumerate(residual_vars)}
    clauses = [Clause((Literal(remap[0]),)), Clause((Literal(remap[1]),)),
               Clause((Literal(remap[2]),))]
    for c in (connector,) + pad.clauses:
        clauses.append(Clause(tuple(Literal(remap[l.var], l.neg) for l in c.literals)))
    residual = CnfInstance(len(residual_vars), tuple(clauses), SAT)
    res = solve_exhaustive(residual)
    if res.status != "unsat":
        return VerificationReport(
            False, "residual instance satisfiable despite forced enforcer outputs"
        )
    return VerificationReport(True, "forced outputs contradict the shared negative clause")


# ---------------------------------------------------------------------------
# Canonical shape: n/3 disjoint negative triples covering all variables,
# plus positive 3-clauses.

DEFAULT_TRANSVERSAL_CAP = 15  # at most 3^15 transversals


def canonical_shape(inst: CnfInstance):
    """Split into (negative triples, positive clauses); raises on mismatch."""
    if inst.mode != SAT:
        raise ValueError("canonical shape is defined for sat mode")
    if inst.has_multiset_clauses():
        raise ValueError("canonical shape needs set-flavor clauses")
    triples = []
    positives = []
    for c in inst.clauses:
        if c.all_negative():
            if len(c.literals) != 3:
                raise ValueError("negative clause is not a triple")
            triples.append(c.variables())
        elif c.all_positive():
            if len(c.literals) != 3:
                raise ValueError("positive clause is not a triple")
            positives.append(c)
        else:
            raise ValueError("mixed-polarity clause")
    covered: set[int] = set()
    for tri in triples:
        if covered & set(tri):
            raise ValueError("negative triples are not disjoint")
        covered.update(tri)
    if covered != set(range(inst.num_vars)):
        raise ValueError("negative triples do not cover every variable")
    return triples, positives


def transversal_count(n: int) -> int:
    if n % 3 != 0:
        raise ValueError("n must be a multiple of 3")
    return 3 ** (n // 3)


def transversals(triples):
    """All choices of one variable per negative triple."""
    return itertools.product(*triples)


def check_sat_via_transversal(
    inst: CnfInstance, cap: int = DEFAULT_TRANSVERSAL_CAP
) -> VerificationReport:
    """Decide a canonical-shape instance by searching for a transversal that
    contains no positive clause.

    Pass means satisfiable, with the witness transversal (the variables set
    false); fail means unsatisfiable (every transversal is blocked).
    """
    triples, positives = canonical_shape(inst)
    k = len(triples)
    if k > cap:
        raise CapExceededError(k, cap)
    clause_vars = [c.variables() for c in positives]
    by_var: dict[int, list[int]] = {}
    for idx, vs in enumerate(clause_vars):
        for v in vs:
            by_var.setdefault(v, []).append(idx)
    hits = [0] * len(clause_vars)

    chosen: list[int] = []

    def dfs(t: int) -> tuple[int, ...] | None:
        if t == k:
            return tuple(chosen)
        for v in triples[t]:
            blocked = False
            for idx in by_var.get(v, ()):
                hits[idx] += 1
                if hits[idx] == 3:
                    blocked = True
            if not blocked:
                chosen.append(v)
                got = dfs(t + 1)
                if got is not None:
                    return got
                chosen.pop()
            for idx in by_var.get(v, ()):
                hits[idx] -= 1
        return None

    found = dfs(0)
    if found is None:
        return VerificationReport(False, "every transversal contains a positive clause")
    return VerificationReport(True, "witness transversal", {"false_vars": found})


def bound_satisfiable(inst: CnfInstance) -> str | None:
    """A satisfiability guarantee from the counting bounds, or None.

    None means no guarantee, not unsatisfiability.  Guaranteed when the
    maximum unnegated appearance count is below 81/n, or when there are
    fewer than 27 positive clauses.
    """
    triples, positives = canonical_shape(inst)
    n = inst.num_vars
    max_p = max((p for p, _ in appearance_profile(inst)), default=0)
    if max_p * n < 81:
        return f"max unnegated appearances {max_p} < 81/{n}"
    if len(positives) < 27:
        return f"only {len(positives)} positive clauses < 27"
    return None


def min_transversal_hitting_set(n: int, node_budget: int = 2_000_000) -> int:
    """Size of the smallest positive-3-clause set blocking every transversal.

    Defined for n >= 9 (for n in {3, 6} a transversal has fewer than three
    variables, so no 3-clause fits inside one and no blocking set exists).
    Exact branch and bound; every transversal is blocked by at most
    C(n/3, 3)*? candidate clauses, and each uncovered transversal branches
    over the clauses inside it.
    """
    if n % 3 != 0:
        raise ValueError("n must be a multiple of 3")
    k = n // 3
    if k < 3:
        raise ValueError(
            "no hitting set exists for n < 9: transversals contain no 3-subset"
        )
    transversal_list = list(itertools.product(range(3), repeat=k))
    # candidate clause: (three triple indices, choice per index)
    candidates = []
    for combo in itertools.combinations(range(k), 3):
        for choice in itertools.product(range(3), repeat=3):
            candidates.append((combo, choice))

    def covers(cand, tv) -> bool:
        combo, choice = cand
        return all(tv[t] == c for t, c in zip(combo, choice))

    cover_sets = []
    for cand in candidates:
        cover_sets.append(
            frozenset(i for i, tv in enumerate(transversal_list) if covers(cand, tv))
        )
    per_cover = 3 ** (k - 3)
    uncovered0 = frozenset(range(len(transversal_list)))
    nodes = 0

    by_transversal: dict[int, list[int]] = {i: [] for i in range(len(transversal_list))}
    for ci, cs in enumerate(cover_sets):
        for i in cs:
            by_transversal[i].append(ci)

    # greedy warm start: an achieved upper bound for the branch and bound
    best = 0
    greedy_left = set(uncovered0)
    while greedy_left:
        ci = max(range(len(cover_sets)), key=lambda c: len(cover_sets[c] & greedy_left))
        greedy_left -= cover_sets[ci]
        best += 1

    def bnb(uncovered: frozenset, used: int):
        nonlocal best, nodes
        nodes += 1
        if nodes > node_budget:
            raise RuntimeError(f"node budget {node_budget} exceeded")
        if not uncovered:
            best = min(best, used)
            return
        if used + -(-len(uncovered) // per_cover) >= best:
            return
        pivot = min(uncovered)
        for ci in by_transversal[pivot]:
            bnb(uncovered - cover_sets[ci], used + 1)

    bnb(uncovered0, 0)
    return best


# ---------------------------------------------------------------------------
# Unsatisfiable-instance search


@dataclass
class SearchBudget:
    max_n: int = 9
    max_candidates: int = 100_000
    seed: int = 0
    time_limit: float | None = None


@dataclass
class SearchOutcome:
    profile: tuple[int, int]
    found: CnfInstance | None = None
    records: list[dict] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "profile": list(self.profile),
            "found": self.found is not None,
            "found_num_vars": None if self.found is None else self.found.num_vars,
            "records": self.records,
        }


# profile -> (VariantSpec, smallest n worth searching per the counting bounds)
SEARCH_PROFILES: dict[tuple[int, int], tuple[VariantSpec, int]] = {
    (2, 2): (VariantSpec(3, False, "sat", (EXACT, 2, 2)), 3),
    (3, 1): (VariantSpec(3, False, "sat", (EXACT, 3, 1)), 27),
    (4, 1): (VariantSpec(3, False, "sat", (EXACT, 4, 1)), 21),
    (5, 1): (VariantSpec(3, False, "sat", (EXACT, 5, 1)), 3),
}


def _round_up_mult3(n: int) -> int:
    return n if n % 3 == 0 else n + (3 - n % 3)


def regular_hypergraphs_exhaustive(n: int, degree: int):
    """All degree-regular 3-uniform hypergraphs with lexicographically
    increasing distinct edges; each isomorphism class appears at least once.

    The smallest vertex with remaining degree must head the next edge, which
    keeps the enumeration both complete and duplicate-free.
    """
    m = degree * n // 3
    deg = [degree] * n
    chosen: list[tuple[int, int, int]] = []

    def rec(last):
        if len(chosen) == m:
            yield tuple(chosen)
            return
        v = next((u for u in range(n) if deg[u] > 0), None)
        if v is None:
            return
        rest = [u for u in range(v + 1, n) if deg[u] > 0]
        for bi in range(len(rest)):
            for cj in range(bi + 1, len(rest)):
                t = (v, rest[bi], rest[cj])
                if t <= last:
                    continue
                deg[v] -= 1
                deg[t[1]] -= 1
                deg[t[2]] -= 1
                chosen.append(t)
                yield from rec(t)
                chosen.pop()
                deg[v] += 1
                deg[t[1]] += 1
                deg[t[2]] += 1

    yield from rec((-1, -1, -1))


def canonical_signature(clauses: list[tuple[tuple[int, ...], bool]]) -> tuple:
    """Relabel variables by first appearance in the sorted clause list."""
    key = sorted((sorted(vs), negd) for vs, negd in clauses)
    relabel: dict[int, int] = {}
    out = []
    for vs, negd in key:
        for v in vs:
            if v not in relabel:
                relabel[v] = len(relabel)
        out.append((tuple(sorted(relabel[v] for v in vs)), negd))
    return tuple(sorted(out))


def _certify_unsat_candidate(inst: CnfInstance, spec: VariantSpec) -> bool:
    """DPLL says unsat, independently re-checked by enumeration when it fits."""
    if not validate(inst, spec).ok:
        raise AssertionError("search produced an out-of-profile candidate")
    if solve_dpll(inst).status != "unsat":
        return False
    if inst.num_vars <= enum_cap():
        assert solve_exhaustive(inst).status == "unsat"
    return True


def search_unsat(
    profile: tuple[int, int], budget: SearchBudget, journal=None
) -> SearchOutcome:
    """Look for an unsatisfiable instance with the given monotone profile.

    (2,2): deterministic exhaustive enumeration per n, modulo the
    lexicographic canonical form, until the candidate budget runs out.
    (3,1)/(4,1): random sampling, starting only at the n where the counting
    bounds stop guaranteeing satisfiability.  (5,1): the explicit
    204-clause construction is probed first, then random sampling.
    Absence of a find is a valid outcome and no claim is made beyond the
    exhausted range.
    """
    if profile not in SEARCH_PROFILES:
        raise KeyError(f"unsupported profile {profile}")
    spec, min_n = SEARCH_PROFILES[profile]
    outcome = SearchOutcome(profile)
    rng = random.Random(budget.seed)
    deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit

    def emit(event: dict):
        if journal is not None:
            journal(event)

    remaining = budget.max_candidates

    if profile == (5, 1) and budget.max_n >= 102:
        cand = known_unsat("mon51")
        if _certify_unsat_candidate(cand, spec):
            outcome.found = cand
            outcome.records.append(
                {"n": cand.num_vars, "candidates": 1, "exhausted": False,
                 "note": "constructed from the D/F enforcers"}
            )
            emit({"event": "found", "n": cand.num_vars, "source": "construction"})
            return outcome

    for n in range(_round_up_mult3(min_n), budget.max_n + 1, 3):
        if remaining <= 0:
            break
        checked = 0
        exhausted = False
        emit({"event": "n-start", "n": n, "profile": list(profile)})
        if profile == (2, 2):
            seen: set[tuple] = set()
            limit = 200_000
            gens = list(
                itertools.islice(regular_hypergraphs_exhaustive(n, 2), limit + 1)
            )
            truncated = len(gens) > limit
            gens = gens[:limit]
            exhausted = not truncated
            stop = False
            for p_edges in gens:
                for n_edges in gens:
                    if remaining <= 0 or (
                        deadline is not None and time.monotonic() > deadline
                    ):
                        exhausted = False
                        stop = True
                        break
                    sig = canonical_signature(
                        [(t, False) for t in p_edges] + [(t, True) for t in n_edges]
                    )
                    if sig in seen:
                        continue
                    seen.add(sig)
                    clauses = [Clause(tuple(Literal(v) for v in t)) for t in p_edges]
                    clauses += [
                        Clause(tuple(Literal(v, True) for v in t)) for t in n_edges
                    ]
                    inst = CnfInstance(n, tuple(clauses), SAT)
                    checked += 1
                    remaining -= 1
                    if _certify_unsat_candidate(inst, spec):
                        outcome.found = inst
                        outcome.records.append(
                            {"n": n, "candidates": checked, "exhausted": False}
                        )
                        emit({"event": "found", "n": n, "candidates": checked})
                        return outcome
                    if checked % 2000 == 0:
                        emit({"event": "progress", "n": n, "candidates": checked})
                if stop:
                    break
        else:
            per_n = min(remaining, max(1, budget.max_candidates // 4))
            for _ in range(per_n):
                if deadline is not None and time.monotonic() > deadline:
                    break
                try:
                    inst = random_k1(n, profile[0], rng)
                except GenerationError:
                    break
                checked += 1
                remaining -= 1
                if _certify_unsat_candidate(inst, spec):
                    outcome.found = inst
                    outcome.records.append(
                        {"n": n, "candidates": checked, "exhausted": False}
                    )
                    emit({"event": "found", "n": n, "candidates": checked})
                    return outcome
                if checked % 200 == 0:
                    emit({"event": "progress", "n": n, "candidates": checked})
        outcome.records.append({"n": n, "candidates": checked, "exhausted": exhausted})
        emit({"event": "n-done", "n": n, "candidates": checked, "exhausted": exhausted})
    return outcome

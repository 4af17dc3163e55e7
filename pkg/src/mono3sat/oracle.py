"""Ground-truth decision procedures.

Exhaustive enumeration (bounded by a variable cap), an exact DPLL solver
with mandatory unit propagation and pure-literal elimination, extension
checking for gadget boundary predicates, subsumption, and the forced-literal
split used by the conditional (2,2) machinery.

The enumeration kernels come in two flavors: a compiled extension and a pure
Python fallback, selected at import (override with MONO3SAT_BACKEND).
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from . import _bitkernel
from .formulas import (
    NAE,
    SAT,
    Clause,
    CnfInstance,
    Literal,
    VerificationReport,
    assignment_from_bits,
    evaluate,
)

_FORCED = os.environ.get("MONO3SAT_BACKEND", "").strip().lower()
if _FORCED in ("python", "pure"):
    _kernel = _bitkernel
    BACKEND = "python"
else:
    try:
        from . import _kernel  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        if _FORCED == "cython":
            raise ImportError(
                "MONO3SAT_BACKEND=cython but the compiled kernel is not built"
            )
        _kernel = _bitkernel
        BACKEND = "python"


def backend_name() -> str:
    return BACKEND


DEFAULT_ENUM_CAP = 26


def enum_cap() -> int:
    env = os.environ.get("MONO3SAT_ENUM_CAP")
    return int(env) if env else DEFAULT_ENUM_CAP


class CapExceededError(RuntimeError):
    def __init__(self, needed: int, cap: int):
        super().__init__(
            f"enumeration over {needed} variables exceeds cap {cap}; "
            f"raise MONO3SAT_ENUM_CAP to at least {needed}"
        )
        self.needed = needed
        self.cap = cap


class SolveResult(NamedTuple):
    status: str  # "sat" | "unsat" | "indeterminate"
    model: tuple | None  # tuple[bool, ...] when status == "sat"


def clause_masks(clauses: Iterable[Clause], var_map=None) -> list[tuple[int, int]]:
    """(positive, negative) variable bitmasks per clause, optionally remapped."""
    out = []
    for c in clauses:
        pos = 0
        neg = 0
        for lit in c.literals:
            v = lit.var if var_map is None else var_map[lit.var]
            if lit.neg:
                neg |= 1 << v
            else:
                pos |= 1 << v
        out.append((pos, neg))
    return out


def solve_exhaustive(inst: CnfInstance, cap: int | None = None) -> SolveResult:
    """Exact result by enumerating all 2^n assignments (n capped)."""
    cap = enum_cap() if cap is None else cap
    if inst.num_vars > cap:
        raise CapExceededError(inst.num_vars, cap)
    model = _kernel.solve(
        inst.num_vars, clause_masks(inst.clauses), inst.mode == NAE
    )
    if model is None:
        return SolveResult("unsat", None)
    bits = assignment_from_bits(model, inst.num_vars)
    assert evaluate(inst, bits)
    return SolveResult("sat", bits)


# ---------------------------------------------------------------------------
# DPLL


def _encoded_clauses(inst: CnfInstance) -> list[list[int]] | None:
    """Clauses as lists of encoded literals (2*var | neg), nae doubled.

    Tautological clauses are dropped; returns None when some clause is
    trivially un-nae-satisfiable (all its literals coincide).
    """
    out = []
    source: list[tuple[Literal, ...]] = [c.literals for c in inst.clauses]
    if inst.mode == NAE:
        source = source + [tuple(l.negated() for l in lits) for lits in source]
    for lits in source:
        seen = set()
        taut = False
        for l in lits:
            if (l.var, not l.neg) in seen:
                taut = True
                break
            seen.add((l.var, l.neg))
        if taut:
            continue
        if not seen:
            return None
        out.append([(v << 1) | n for v, n in sorted(seen)])
    return out


def solve_dpll(inst: CnfInstance, timeout: float | None = None) -> SolveResult:
    """Complete DPLL with unit propagation and pure-literal elimination.

    nae mode is reduced to sat mode by adding, for each clause, its
    literal-wise negation.  A timeout (seconds) yields "indeterminate".
    """
    clauses = _encoded_clauses(inst)
    if clauses is None:
        return SolveResult("unsat", None)
    status, bits = _dpll(inst.num_vars, clauses, timeout)
    if status != "sat":
        return SolveResult(status, None)
    model = assignment_from_bits(bits, inst.num_vars)
    assert evaluate(inst, model)
    return SolveResult("sat", model)


def _dpll(num_vars: int, clauses: list[list[int]], timeout: float | None):
    """Counter-based DPLL with first-UIP conflict learning and backjumping.

    Unit propagation and pure-literal elimination are always on; pure
    literals are assigned as decisions (they are satisfiability-preserving,
    not implied, so they must not serve as resolution reasons).  Branching
    picks the most frequent free literal among the shortest unsatisfied
    clauses.  Deterministic; no restarts.
    """
    m = len(clauses)
    if m == 0:
        return "sat", 0
    if any(not c for c in clauses):
        return "unsat", None
    deadline = None if timeout is None else time.monotonic() + timeout

    occ: list[list[int]] = [[] for _ in range(2 * num_vars)]
    # cnt[lit]: occurrences of lit in not-yet-satisfied input clauses;
    # drives pure-literal detection (learned clauses are consequences, so
    # they are deliberately excluded from purity counting)
    cnt = [0] * (2 * num_vars)
    for ci, lits in enumerate(clauses):
        for lit in lits:
            occ[lit].append(ci)
            cnt[lit] += 1
    n_input = m
    clauses = list(clauses)  # learned clauses are appended

    NO_REASON = -1
    val = [-1] * num_vars  # -1 unassigned, else 0/1
    level = [0] * num_vars
    reason = [NO_REASON] * num_vars
    nfree = [len(c) for c in clauses]
    ntrue = [0] * m
    nsat = 0
    trail: list[int] = []
    units: list[tuple[int, int]] = [  # (implied lit, reason clause)
        (c[0], ci) for ci, c in enumerate(clauses) if len(c) == 1
    ]
    pure_q: list[int] = list(range(num_vars))
    cur_level = 0
    ticks = 0

    def assign(lit: int, why: int) -> int:
        """Make lit true; returns a conflicting clause index or -1."""
        nonlocal nsat
        v = lit >> 1
        b = 1 - (lit & 1)
        val[v] = b
        level[v] = cur_level
        reason[v] = why
        trail.append(v)
        for ci in occ[(v << 1) | (1 - b)]:  # literal made true
            ntrue[ci] += 1
            if ntrue[ci] == 1:
                nsat += 1
                if ci < n_input:
                    for l in clauses[ci]:
                        cnt[l] -= 1
                        if cnt[l] == 0:
                            pure_q.append(l >> 1)
        conflict = -1
        for ci in occ[(v << 1) | b]:  # literal made false
            nfree[ci] -= 1
            if ntrue[ci] == 0:
                if nfree[ci] == 0:
                    conflict = ci
                elif nfree[ci] == 1:
                    free = next(l for l in clauses[ci] if val[l >> 1] == -1)
                    units.append((free, ci))
        return conflict

    def unassign_top():
        nonlocal nsat
        v = trail.pop()
        b = val[v]
        val[v] = -1
        reason[v] = NO_REASON
        for ci in occ[(v << 1) | (1 - b)]:
            ntrue[ci] -= 1
            if ntrue[ci] == 0:
                nsat -= 1
                if ci < n_input:
                    for l in clauses[ci]:
                        cnt[l] += 1
        for ci in occ[(v << 1) | b]:
            nfree[ci] += 1

    def backjump(target: int):
        nonlocal cur_level
        while trail and level[trail[-1]] > target:
            unassign_top()
        cur_level = target
        units.clear()

    def propagate() -> int:
        """Exhausts the unit queue; returns a conflict clause index or -1.

        Stale entries are skipped: any real conflict was already returned by
        the assign() call that falsified the clause's last literal.
        """
        while units:
            lit, why = units.pop()
            if val[lit >> 1] != -1:
                continue
            conflict = assign(lit, why)
            if conflict != -1:
                return conflict
        return -1

    def analyze(conflict: int) -> tuple[list[int], int]:
        """First-UIP learned clause and the level to jump back to."""
        learned: list[int] = []
        seen = [False] * num_vars
        counter = 0
        cur = clauses[conflict]
        idx = len(trail) - 1
        while True:
            for lit in cur:
                v = lit >> 1
                if not seen[v] and level[v] > 0:
                    seen[v] = True
                    if level[v] == cur_level:
                        counter += 1
                    else:
                        learned.append(lit)
            while not seen[trail[idx]]:
                idx -= 1
            v = trail[idx]
            idx -= 1
            counter -= 1
            if counter == 0:
                learned.insert(0, (v << 1) | val[v])  # the asserting literal
                break
            assert reason[v] != NO_REASON, "resolving past a decision"
            cur = [l for l in clauses[reason[v]] if l >> 1 != v]
        jump = 0
        for lit in learned[1:]:
            jump = max(jump, level[lit >> 1])
        return learned, jump

    def add_learned(lits: list[int]) -> int:
        ci = len(clauses)
        clauses.append(lits)
        ntrue.append(sum(1 for l in lits if val[l >> 1] == 1 - (l & 1)))
        nfree.append(sum(1 for l in lits if val[l >> 1] == -1))
        if ntrue[ci] > 0:
            nonlocal_nsat_bump()
        for l in lits:
            occ[l].append(ci)
        return ci

    def nonlocal_nsat_bump():
        nonlocal nsat
        nsat += 1

    def assign_pures() -> tuple[bool, int]:
        """Assign queued pure literals as decisions; (moved, conflict)."""
        nonlocal cur_level
        moved = False
        while pure_q:
            v = pure_q.pop()
            if val[v] != -1:
                continue
            p, q = cnt[v << 1], cnt[(v << 1) | 1]
            if p > 0 and q == 0:
                lit = v << 1
            elif q > 0 and p == 0:
                lit = (v << 1) | 1
            else:
                continue
            moved = True
            cur_level += 1
            conflict = assign(lit, NO_REASON)
            if conflict != -1:
                return True, conflict
            if units:
                return True, -1
        return moved, -1

    def pick() -> int | None:
        """Most frequent free literal among the shortest unsatisfied clauses."""
        best_len = 1 << 30
        counts: dict[int, int] = {}
        for ci in range(len(clauses)):
            if ntrue[ci] == 0 and nfree[ci] <= best_len:
                if nfree[ci] < best_len:
                    best_len = nfree[ci]
                    counts = {}
                for lit in clauses[ci]:
                    if val[lit >> 1] == -1:
                        counts[lit] = counts.get(lit, 0) + 1
        if not counts:
            return None
        return max(counts, key=lambda l: (counts[l], -l))

    def handle(conflict: int) -> bool:
        """Learn from the conflict; False when unsat at level 0."""
        nonlocal cur_level
        if cur_level == 0:
            return False
        learned, jump = analyze(conflict)
        backjump(jump)
        ci = add_learned(learned)
        if val[learned[0] >> 1] == -1:
            units.append((learned[0], ci))
        return True

    while True:
        ticks += 1
        if (
            deadline is not None
            and (ticks == 1 or ticks % 512 == 0)
            and time.monotonic() > deadline
        ):
            return "indeterminate", None
        conflict = propagate()
        if conflict != -1:
            if not handle(conflict):
                return "unsat", None
            continue
        if nsat == len(clauses):
            bits = 0
            for v in range(num_vars):
                if val[v] == 1:
                    bits |= 1 << v
            return "sat", bits
        moved, conflict = assign_pures()
        if conflict != -1:
            if not handle(conflict):
                return "unsat", None
            continue
        if moved:
            continue
        lit = pick()
        # nsat < len(clauses) and no pending conflict imply some clause has
        # ntrue == 0 and a free literal
        assert lit is not None, "unsatisfied clause without free literals"
        cur_level += 1
        conflict = assign(lit, NO_REASON)
        if conflict != -1 and not handle(conflict):
            return "unsat", None


def solve_auto(
    inst: CnfInstance, cap: int | None = None, timeout: float | None = None
) -> SolveResult:
    """Exhaustive when the instance fits under the cap, DPLL otherwise."""
    cap = enum_cap() if cap is None else cap
    if inst.num_vars <= cap:
        return solve_exhaustive(inst, cap)
    return solve_dpll(inst, timeout)


# ---------------------------------------------------------------------------
# Boundary predicates and the extension property


@dataclass(frozen=True)
class BoundaryPredicate:
    """Accepted assignments of an ordered boundary, as bit patterns.

    Bit j of a pattern is the value of boundary[j].
    """

    boundary: tuple[int, ...]
    accepted: frozenset[int]

    def patterns(self) -> int:
        return 1 << len(self.boundary)


def check_extension_property(gadget, cap: int | None = None) -> VerificationReport:
    """Certify a gadget's boundary predicate by exhaustive extension checking.

    Passes iff for every assignment beta of the (distinct) boundary
    variables: an extension over the auxiliary variables that satisfies (or
    nae-satisfies) all gadget clauses exists exactly when beta is accepted.
    """
    cap = enum_cap() if cap is None else cap
    boundary = list(dict.fromkeys(gadget.boundary))
    aux = list(gadget.aux)
    if tuple(boundary) != gadget.predicate.boundary:
        raise ValueError("gadget predicate boundary does not match the instance")
    n = len(boundary) + len(aux)
    if n > cap:
        raise CapExceededError(n, cap)
    var_map = {v: i for i, v in enumerate(aux)}
    for j, v in enumerate(boundary):
        var_map[v] = len(aux) + j
    masks = clause_masks(gadget.clauses, var_map)
    got = _kernel.accepted_patterns(len(aux), len(boundary), masks, gadget.mode == NAE)
    declared = set(gadget.predicate.accepted)
    if got == declared:
        return VerificationReport(True)
    for p in sorted(declared | got):
        if p in declared and p not in got:
            return VerificationReport(
                False,
                "boundary assignment has no satisfying extension but is accepted",
                {"pattern": _pattern_bits(p, boundary), "direction": "missing extension"},
            )
        if p in got and p not in declared:
            return VerificationReport(
                False,
                "boundary assignment has a satisfying extension but is not accepted",
                {"pattern": _pattern_bits(p, boundary), "direction": "forbidden extension"},
            )
    raise AssertionError("unreachable")


def _pattern_bits(p: int, boundary: Sequence[int]) -> dict[int, bool]:
    return {v: bool((p >> j) & 1) for j, v in enumerate(boundary)}


# ---------------------------------------------------------------------------
# Subsumption


def subsumes(cover: Sequence[Clause], target: Sequence[Clause]) -> VerificationReport:
    """Pass iff every target clause contains some cover clause as a subset."""
    cover_sets = [c.litset() for c in cover]
    for i, t in enumerate(target):
        tset = t.litset()
        if not any(cs <= tset for cs in cover_sets):
            return VerificationReport(
                False, f"target clause {i} is not subsumed", ("clause", i, str(t))
            )
    return VerificationReport(True)


# ---------------------------------------------------------------------------
# Forced-literal split (maximal satisfiable subset, greedy in input order)


def split_forced(
    inst: CnfInstance, cap: int | None = None, timeout: float | None = None
) -> tuple[list[int], list[Literal]]:
    """Split an unsatisfiable sat-mode instance into a maximal satisfiable
    clause subset plus the multiset of literals of the excluded clauses.

    Clauses are considered in input order, so the result is deterministic.
    Every returned literal is false under every model of the kept subset;
    this is re-checked literal by literal against the oracle.
    """
    if inst.mode != SAT:
        raise ValueError("split_forced is defined for sat mode")
    if solve_auto(inst, cap, timeout).status != "unsat":
        raise ValueError("split_forced requires an unsatisfiable instance")

    kept: list[Clause] = []
    core: list[int] = []
    for i, c in enumerate(inst.clauses):
        trial = CnfInstance(inst.num_vars, tuple(kept) + (c,), SAT)
        if solve_auto(trial, cap, timeout).status == "sat":
            kept.append(c)
            core.append(i)
    core_set = set(core)
    forced: list[Literal] = []
    for i, c in enumerate(inst.clauses):
        if i not in core_set:
            forced.extend(c.literals)
    base = tuple(kept)
    for lit in set(forced):
        probe = CnfInstance(inst.num_vars, base + (Clause((lit,)),), SAT)
        if solve_auto(probe, cap, timeout).status != "unsat":
            raise AssertionError(
                f"literal {lit} from an excluded clause is not forced false"
            )
    return core, forced

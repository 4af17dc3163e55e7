"""CNF data model and structural validators for restricted 3-SAT variants.

Variables are dense non-negative integers 0..num_vars-1; textual names only
exist in the DIMACS layer.  All types are immutable after construction and
every operation here is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

SAT = "sat"
NAE = "nae"


class Literal(NamedTuple):
    var: int
    neg: bool = False

    def negated(self) -> "Literal":
        return Literal(self.var, not self.neg)

    def __str__(self) -> str:
        return ("~" if self.neg else "") + f"x{self.var}"


def pos(var: int) -> Literal:
    return Literal(var, False)


def neg(var: int) -> Literal:
    return Literal(var, True)


@dataclass(frozen=True)
class Clause:
    """An ordered literal list.

    Set flavor (the default) forbids repeated variables inside the clause,
    including a variable occurring with both polarities.  Multiset flavor
    permits duplicates and is used only by the *-variants.
    """

    literals: tuple[Literal, ...]
    multiset: bool = False

    def __post_init__(self):
        for lit in self.literals:
            if lit.var < 0:
                raise ValueError(f"negative variable id {lit.var}")
        if not self.multiset:
            if len({lit.var for lit in self.literals}) != len(self.literals):
                raise ValueError(
                    f"set-flavor clause with repeated variable: {self}"
                )

    def variables(self) -> tuple[int, ...]:
        return tuple(lit.var for lit in self.literals)

    def varset(self) -> frozenset[int]:
        return frozenset(lit.var for lit in self.literals)

    def litset(self) -> frozenset[Literal]:
        return frozenset(self.literals)

    def all_negative(self) -> bool:
        return all(lit.neg for lit in self.literals)

    def all_positive(self) -> bool:
        return not any(lit.neg for lit in self.literals)

    def negated(self) -> "Clause":
        return Clause(tuple(l.negated() for l in self.literals), self.multiset)

    def sorted_key(self) -> tuple:
        return tuple(sorted((l.var, l.neg) for l in self.literals))

    def __str__(self) -> str:
        return "{" + ", ".join(str(l) for l in self.literals) + "}"


def clause(lits: Iterable[Literal | int], multiset: bool = False) -> Clause:
    """Build a clause; plain ints are taken as positive literals."""
    out = []
    for l in lits:
        out.append(Literal(l, False) if isinstance(l, int) else l)
    return Clause(tuple(out), multiset)


@dataclass(frozen=True)
class CnfInstance:
    """A CNF formula plus the mode selecting its satisfaction semantics.

    mode is metadata only: "sat" wants >= 1 true literal per clause, "nae"
    wants >= 1 true and >= 1 false.  The clause data never depends on it.
    """

    num_vars: int
    clauses: tuple[Clause, ...]
    mode: str = SAT

    def __post_init__(self):
        if self.mode not in (SAT, NAE):
            raise ValueError(f"unknown mode {self.mode!r}")
        for i, c in enumerate(self.clauses):
            for lit in c.literals:
                if lit.var >= self.num_vars:
                    raise ValueError(
                        f"clause {i} uses variable {lit.var} >= num_vars={self.num_vars}"
                    )

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def has_multiset_clauses(self) -> bool:
        return any(c.multiset for c in self.clauses)

    def with_mode(self, mode: str) -> "CnfInstance":
        return CnfInstance(self.num_vars, self.clauses, mode)


Assignment = tuple  # tuple[bool, ...] of length num_vars


def assignment_from_bits(bits: int, num_vars: int) -> tuple[bool, ...]:
    return tuple(bool((bits >> v) & 1) for v in range(num_vars))


def evaluate_clause(c: Clause, assignment: Sequence[bool], mode: str = SAT) -> bool:
    values = [assignment[l.var] ^ l.neg for l in c.literals]
    if mode == SAT:
        return any(values)
    return any(values) and not all(values)


def evaluate(inst: CnfInstance, assignment: Sequence[bool]) -> bool:
    if len(assignment) != inst.num_vars:
        raise ValueError(
            f"assignment length {len(assignment)} != num_vars {inst.num_vars}"
        )
    return all(evaluate_clause(c, assignment, inst.mode) for c in inst.clauses)


@dataclass(frozen=True)
class VerificationReport:
    """Pass/fail plus a minimal concrete witness for the first violation."""

    ok: bool
    reason: str = ""
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok

    def as_dict(self) -> dict:
        return {"ok": self.ok, "reason": self.reason, "witness": _jsonable(self.witness)}


def _jsonable(obj):
    if isinstance(obj, (Literal, Clause)):
        return str(obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, frozenset):
        return sorted(_jsonable(x) for x in obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    return obj


PASS = VerificationReport(True)


# ---------------------------------------------------------------------------
# Appearance profiles


def appearance_profile(inst: CnfInstance) -> list[tuple[int, int]]:
    """Per-variable (unnegated, negated) occurrence counts.

    Duplicates inside multiset clauses are counted as separate appearances.
    """
    prof = [[0, 0] for _ in range(inst.num_vars)]
    for c in inst.clauses:
        for lit in c.literals:
            prof[lit.var][1 if lit.neg else 0] += 1
    return [(p, q) for p, q in prof]


# ---------------------------------------------------------------------------
# Variant specifications

EXACT = "exact"  # profile ("exact", p, q)
TOTAL = "total"  # profile ("total", k)
CHOICE = "choice"  # profile ("choice", ((p, q), ...))

MONOTONE_SAT = "sat"  # every clause all-positive or all-negative
MONOTONE_NAE = "nae"  # no negative literal anywhere

LINEAR = "linear"
EXACT_LINEAR = "exact"


@dataclass(frozen=True)
class VariantSpec:
    """Declarative description of a restricted variant."""

    arity: int | None = 3
    duplicates: bool = False
    monotone: str | None = None  # None | "sat" | "nae"
    profile: tuple | None = None  # ("exact",p,q) | ("total",k) | ("choice",pairs)
    linear: str | None = None  # None | "linear" | "exact"
    distinct_clauses: bool = True

    def describe(self) -> str:
        parts = []
        if self.monotone == MONOTONE_SAT:
            parts.append("mono-sat")
        elif self.monotone == MONOTONE_NAE:
            parts.append("mono-nae")
        if self.profile:
            kind = self.profile[0]
            if kind == EXACT:
                parts.append(f"p{self.profile[1]}q{self.profile[2]}")
            elif kind == TOTAL:
                parts.append(f"e{self.profile[1]}")
            elif kind == CHOICE:
                parts.append(
                    "choice-" + "-".join(f"{p}{q}" for p, q in self.profile[1])
                )
        if self.linear == LINEAR:
            parts.append("linear")
        elif self.linear == EXACT_LINEAR:
            parts.append("exact-linear")
        if self.duplicates:
            parts.append("star")
        return "-".join(parts) if parts else "any"


def validate(inst: CnfInstance, spec: VariantSpec) -> VerificationReport:
    """Check an instance against a variant spec.

    Returns pass, or fail naming the first violated constraint with a
    concrete witness (clause index, variable id, or clause pair).
    """
    if spec.arity is not None:
        for i, c in enumerate(inst.clauses):
            if len(c.literals) != spec.arity:
                return VerificationReport(
                    False, f"clause {i} has arity {len(c.literals)} != {spec.arity}",
                    ("clause", i),
                )
    if not spec.duplicates:
        for i, c in enumerate(inst.clauses):
            if len({l.var for l in c.literals}) != len(c.literals):
                return VerificationReport(
                    False, f"clause {i} repeats a variable", ("clause", i)
                )
    if spec.monotone == MONOTONE_SAT:
        for i, c in enumerate(inst.clauses):
            if not (c.all_positive() or c.all_negative()):
                return VerificationReport(
                    False, f"clause {i} mixes polarities", ("clause", i)
                )
    elif spec.monotone == MONOTONE_NAE:
        for i, c in enumerate(inst.clauses):
            if not c.all_positive():
                return VerificationReport(
                    False, f"clause {i} contains a negated literal", ("clause", i)
                )
    if spec.profile is not None:
        prof = appearance_profile(inst)
        kind = spec.profile[0]
        for v, (p, q) in enumerate(prof):
            if kind == EXACT and (p, q) != (spec.profile[1], spec.profile[2]):
                return VerificationReport(
                    False,
                    f"variable {v} has profile ({p},{q}), "
                    f"expected ({spec.profile[1]},{spec.profile[2]})",
                    ("variable", v),
                )
            if kind == TOTAL and p + q != spec.profile[1]:
                return VerificationReport(
                    False,
                    f"variable {v} appears {p + q} times, expected {spec.profile[1]}",
                    ("variable", v),
                )
            if kind == CHOICE and (p, q) not in spec.profile[1]:
                return VerificationReport(
                    False,
                    f"variable {v} has profile ({p},{q}), "
                    f"expected one of {spec.profile[1]}",
                    ("variable", v),
                )
    if spec.linear is not None:
        rep = is_linear(inst, exact=(spec.linear == EXACT_LINEAR))
        if not rep.ok:
            return rep
    if spec.distinct_clauses:
        seen: dict[tuple, int] = {}
        for i, c in enumerate(inst.clauses):
            key = c.sorted_key()
            if key in seen:
                return VerificationReport(
                    False,
                    f"clauses {seen[key]} and {i} are identical",
                    ("clause_pair", seen[key], i),
                )
            seen[key] = i
    return PASS


def is_linear(inst: CnfInstance, exact: bool = False) -> VerificationReport:
    """Pass iff every pair of distinct clauses shares at most one variable.

    Exact mode wants exactly one shared variable per pair.  Multiset clauses
    are rejected: linearity is defined over set-flavor formulas.
    """
    if inst.has_multiset_clauses():
        raise ValueError("is_linear is defined for set-flavor clauses only")
    varsets = [c.varset() for c in inst.clauses]
    m = len(varsets)
    for i in range(m):
        for j in range(i + 1, m):
            shared = len(varsets[i] & varsets[j])
            if shared > 1:
                return VerificationReport(
                    False, f"clauses {i} and {j} share {shared} variables",
                    ("clause_pair", i, j),
                )
            if exact and shared != 1:
                return VerificationReport(
                    False, f"clauses {i} and {j} share no variable",
                    ("clause_pair", i, j),
                )
    return PASS


def negate_rename(inst: CnfInstance, variables: Iterable[int]) -> CnfInstance:
    """Flip the polarity of every literal of the selected variables.

    The variable id is retained; satisfiability is preserved bijectively and
    the operation is an involution.
    """
    sel = set(variables)
    for v in sel:
        if not (0 <= v < inst.num_vars):
            raise ValueError(f"variable {v} out of range")
    out = []
    for c in inst.clauses:
        lits = tuple(
            l.negated() if l.var in sel else l for l in c.literals
        )
        out.append(Clause(lits, c.multiset))
    return CnfInstance(inst.num_vars, tuple(out), inst.mode)

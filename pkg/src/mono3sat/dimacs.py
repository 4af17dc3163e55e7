"""Annotated DIMACS CNF: standard body plus comment headers carrying the
satisfaction mode and the duplicate-literal policy.

    c mode sat|nae
    c duplicates allowed|forbidden
    c variant <spec-string>        (optional, informational)
    p cnf <num_vars> <num_clauses>
    <literals> 0

Variables are 1-based on the wire and dense 0-based in memory.
"""

from __future__ import annotations

from .formulas import NAE, SAT, Clause, CnfInstance, Literal


class DimacsError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


def parse_dimacs(text: str) -> CnfInstance:
    mode = SAT
    duplicates = False
    num_vars = None
    num_clauses = None
    clauses: list[Clause] = []
    pending: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            fields = line[1:].split()
            if fields[:1] == ["mode"] and len(fields) == 2:
                if fields[1] not in (SAT, NAE):
                    raise DimacsError(f"unknown mode {fields[1]!r}", lineno)
                mode = fields[1]
            elif fields[:1] == ["duplicates"] and len(fields) == 2:
                if fields[1] not in ("allowed", "forbidden"):
                    raise DimacsError(
                        f"unknown duplicates policy {fields[1]!r}", lineno
                    )
                duplicates = fields[1] == "allowed"
            continue
        if line.startswith("p"):
            fields = line.split()
            if len(fields) != 4 or fields[0] != "p" or fields[1] != "cnf":
                raise DimacsError(f"bad problem line {line!r}", lineno)
            try:
                num_vars = int(fields[2])
                num_clauses = int(fields[3])
            except ValueError:
                raise DimacsError(f"bad problem line {line!r}", lineno) from None
            continue
        if num_vars is None:
            raise DimacsError("clause before 'p cnf' header", lineno)
        try:
            ints = [int(tok) for tok in line.split()]
        except ValueError:
            raise DimacsError(f"non-integer token in {line!r}", lineno) from None
        pending.extend(ints)
        if pending and pending[-1] == 0:
            lits = pending[:-1]
            pending = []
            if any(x == 0 for x in lits):
                raise DimacsError("literal 0 inside a clause", lineno)
            if any(abs(x) > num_vars for x in lits):
                raise DimacsError("literal out of declared range", lineno)
            parsed = tuple(Literal(abs(x) - 1, x < 0) for x in lits)
            if not duplicates and len({l.var for l in parsed}) != len(parsed):
                raise DimacsError(
                    "repeated variable in clause (no 'c duplicates allowed')",
                    lineno,
                )
            clauses.append(Clause(parsed, multiset=duplicates))
    if num_vars is None:
        raise DimacsError("missing 'p cnf' header")
    if pending:
        raise DimacsError("final clause not terminated by 0")
    if num_clauses is not None and len(clauses) != num_clauses:
        raise DimacsError(
            f"header declares {num_clauses} clauses, found {len(clauses)}"
        )
    return CnfInstance(num_vars, tuple(clauses), mode)


def emit_dimacs(inst: CnfInstance, variant: str | None = None) -> str:
    """Canonical text: sorted literals per clause (multiset flavor keeps
    multiplicity), annotations first.  parse(emit(x)) == x structurally."""
    duplicates = inst.has_multiset_clauses()
    lines = [
        f"c mode {inst.mode}",
        f"c duplicates {'allowed' if duplicates else 'forbidden'}",
    ]
    if variant:
        lines.append(f"c variant {variant}")
    lines.append(f"p cnf {inst.num_vars} {inst.num_clauses}")
    for c in inst.clauses:
        nums = sorted(
            (-(l.var + 1) if l.neg else l.var + 1) for l in c.literals
        )
        nums.sort(key=abs)
        lines.append(" ".join(str(x) for x in nums) + " 0")
    return "\n".join(lines) + "\n"

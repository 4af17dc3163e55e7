"""Executable polynomial reductions between the restricted variants.

Every reduction validates its input against the catalogued input variant,
emits a certificate carrying the output instance, a variable back-map for
model pull-back, and a log tracing every introduced variable to the gadget
or structural role that created it.  Gadget-to-clause assignment orders
follow input clause order, so outputs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .formulas import (
    EXACT,
    NAE,
    SAT,
    TOTAL,
    CHOICE,
    MONOTONE_NAE,
    MONOTONE_SAT,
    Clause,
    CnfInstance,
    Literal,
    VariantSpec,
    VerificationReport,
    appearance_profile,
    evaluate,
    negate_rename,
    validate,
)
from .gadgets import FreshAllocator, GadgetInstance, build_gadget
from .oracle import solve_auto, solve_dpll, split_forced


class ReductionInputError(ValueError):
    pass


class BackMapViolation(ValueError):
    pass


@dataclass(frozen=True)
class LogEntry:
    label: str  # gadget kind or structural role ("COPY2", "M_GADGET", ...)
    boundary: tuple[int, ...]
    aux: tuple[int, ...]


@dataclass(frozen=True)
class ReductionCertificate:
    rid: str
    input: CnfInstance
    output: CnfInstance
    # output variable -> (input variable, True when the output variable is
    # intended to carry the negated value)
    back_map: dict[int, tuple[int, bool]]
    gadget_log: tuple[LogEntry, ...]

    def untraced_variables(self) -> list[int]:
        covered = set(self.back_map)
        for e in self.gadget_log:
            covered.update(e.boundary)
            covered.update(e.aux)
        return [v for v in range(self.output.num_vars) if v not in covered]


@dataclass(frozen=True)
class ReductionRow:
    rid: str
    input_mode: str
    output_mode: str
    summary: str
    input_spec: Callable[..., VariantSpec]
    output_spec: Callable[..., VariantSpec]
    needs_k: bool = False
    needs_param: bool = False


def _spec_22() -> VariantSpec:
    return VariantSpec(3, False, None, (EXACT, 2, 2))


def _spec_mono(p: int, q: int) -> VariantSpec:
    return VariantSpec(3, False, MONOTONE_SAT, (EXACT, p, q))


_NAE_MONO = VariantSpec(3, False, MONOTONE_NAE, None)
_NAE_E4 = VariantSpec(3, False, MONOTONE_NAE, (TOTAL, 4))
_NAE_E4_LINEAR = VariantSpec(3, False, MONOTONE_NAE, (TOTAL, 4), "linear")
_NAE_STAR = VariantSpec(3, True, None, None, None, False)
_CHOICE_31 = VariantSpec(3, False, MONOTONE_SAT, (CHOICE, ((3, 1), (1, 3))))

REDUCTIONS: dict[str, ReductionRow] = {}


def _register(row: ReductionRow):
    REDUCTIONS[row.rid] = row


_register(ReductionRow(
    "R1", NAE, NAE,
    "Monotone NAE-3-Sat -> Monotone NAE-3-Sat-E4 (equality rings + padding)",
    lambda: _NAE_MONO, lambda: _NAE_E4))
_register(ReductionRow(
    "R2", NAE, NAE,
    "NAE-3-Sat* -> Monotone NAE-3-Sat-E4 (equality/non-equality rings)",
    lambda: _NAE_STAR, lambda: _NAE_E4))
_register(ReductionRow(
    "R3", NAE, NAE,
    "Monotone NAE-3-Sat-E4 -> linear Monotone NAE-3-Sat-E4",
    lambda: _NAE_E4, lambda: _NAE_E4_LINEAR))
_register(ReductionRow(
    "R4", NAE, SAT,
    "linear Monotone NAE-3-Sat-E4 -> Monotone 3-Sat-(4,4) (clause doubling)",
    lambda: _NAE_E4_LINEAR, lambda: _spec_mono(4, 4)))
_register(ReductionRow(
    "R5", SAT, SAT,
    "3-Sat-(2,2) -> Monotone 3-Sat-(3,3) (variable splitting + A + SBAR)",
    _spec_22, lambda: _spec_mono(3, 3)))
_register(ReductionRow(
    "R6", SAT, SAT,
    "Monotone 3-Sat-(k,k) -> (k+1,k+1) (k+1 disjoint copies + C_inc pairs)",
    lambda k: _spec_mono(k, k), lambda k: _spec_mono(k + 1, k + 1), needs_k=True))
_register(ReductionRow(
    "R7", SAT, SAT,
    "3-Sat-(2,2) -> Monotone 3-Sat-(5,1) (D + F + y-padding rings)",
    _spec_22, lambda: _spec_mono(5, 1)))
_register(ReductionRow(
    "R8", SAT, SAT,
    "Monotone 3-Sat-(k,1) -> (k+1,1) (copies + positive links + negative triples)",
    lambda k: _spec_mono(k, 1), lambda k: _spec_mono(k + 1, 1), needs_k=True))
_register(ReductionRow(
    "R9", SAT, SAT,
    "Monotone 3-Sat-(3,3) -> Monotone 3-Sat*-(2,2) (6-way splitting + STAR22)",
    lambda: _spec_mono(3, 3),
    lambda: VariantSpec(3, True, MONOTONE_SAT, (EXACT, 2, 2))))
_register(ReductionRow(
    "R10", SAT, SAT,
    "Monotone 3-Sat-(3,3) -> Monotone 3-Sat-(2,2), given an unsat (2,2) instance",
    lambda: _spec_mono(3, 3), lambda: _spec_mono(2, 2), needs_param=True))
_register(ReductionRow(
    "R11", SAT, SAT,
    "3-Sat-(2,2) -> Monotone 3-Sat-(3,2) (G + H + padding blocks)",
    _spec_22, lambda: _spec_mono(3, 2)))
_register(ReductionRow(
    "R12", SAT, SAT,
    "Monotone 3-Sat-(3,2) -> (4,2) (appearance increase per variable triple)",
    lambda: _spec_mono(3, 2), lambda: _spec_mono(4, 2)))
_register(ReductionRow(
    "R13", SAT, SAT,
    "3-Sat-(2,2) -> Monotone 3-Sat-E4 with per-variable profile (3,1) or (1,3)",
    _spec_22, lambda: _CHOICE_31))
_register(ReductionRow(
    "R14", SAT, SAT,
    "Monotone E4 {(3,1),(1,3)} -> 3-Sat-E4 uniform (3,1) (negation renaming)",
    lambda: _CHOICE_31, lambda: VariantSpec(3, False, None, (EXACT, 3, 1))))


# ---------------------------------------------------------------------------
# Shared construction helpers


class _Builder:
    """Accumulates the output instance, back-map and trace log."""

    def __init__(self, rid: str, inst: CnfInstance, out_mode: str):
        self.rid = rid
        self.input = inst
        self.out_mode = out_mode
        self.alloc = FreshAllocator(0)
        self.clauses: list[Clause] = []
        self.back_map: dict[int, tuple[int, bool]] = {}
        self.log: list[LogEntry] = []

    def add_gadget(self, kind: str, boundary) -> GadgetInstance:
        g = build_gadget(kind, boundary, self.alloc)
        self.clauses.extend(g.clauses)
        self.log.append(LogEntry(kind, tuple(boundary), g.aux))
        return g

    def note(self, label: str, variables) -> None:
        self.log.append(LogEntry(label, tuple(variables), ()))

    def finish(self, output_spec: VariantSpec) -> ReductionCertificate:
        out = CnfInstance(self.alloc.next_id, tuple(self.clauses), self.out_mode)
        rep = validate(out, output_spec)
        if not rep.ok:
            raise AssertionError(
                f"{self.rid}: output violates its variant spec: {rep.reason}"
            )
        cert = ReductionCertificate(
            self.rid, self.input, out, self.back_map, tuple(self.log)
        )
        untraced = cert.untraced_variables()
        if untraced:
            raise AssertionError(f"{self.rid}: untraced output variables {untraced}")
        return cert


def _appearance_split(inst: CnfInstance):
    """Per variable: ordered (clause, position) lists, unnegated then negated.

    Appearances are numbered by scanning clauses in order and literals
    left to right.
    """
    unneg: list[list[tuple[int, int]]] = [[] for _ in range(inst.num_vars)]
    negd: list[list[tuple[int, int]]] = [[] for _ in range(inst.num_vars)]
    for ci, c in enumerate(inst.clauses):
        for li, lit in enumerate(c.literals):
            (negd if lit.neg else unneg)[lit.var].append((ci, li))
    return unneg, negd


def _replace_appearances(
    inst: CnfInstance,
    copy_of: dict[tuple[int, int], Literal],
    multiset: bool = False,
) -> list[Clause]:
    """Rebuild the input clauses substituting each appearance's copy literal."""
    out = []
    for ci, c in enumerate(inst.clauses):
        lits = tuple(copy_of[(ci, li)] for li in range(len(c.literals)))
        out.append(Clause(lits, multiset or c.multiset))
    return out


def _check_input(row: ReductionRow, inst: CnfInstance, spec: VariantSpec):
    if inst.mode != row.input_mode:
        raise ReductionInputError(
            f"{row.rid} expects a {row.input_mode}-mode instance, got {inst.mode}"
        )
    rep = validate(inst, spec)
    if not rep.ok:
        raise ReductionInputError(f"{row.rid} input invalid: {rep.reason}")


# ---------------------------------------------------------------------------
# R1 / R2 / R3: NAE splitting rings


def _apply_r1(inst: CnfInstance) -> ReductionCertificate:
    b = _Builder("R1", inst, NAE)
    unneg, _ = _appearance_split(inst)
    copy_of: dict[tuple[int, int], Literal] = {}
    ring_copies: list[list[int]] = []
    for i in range(inst.num_vars):
        copies = b.alloc.fresh(len(unneg[i]))
        ring_copies.append(copies)
        for cid, app in zip(copies, unneg[i]):
            copy_of[app] = Literal(cid)
            b.back_map[cid] = (i, False)
    b.clauses.extend(_replace_appearances(inst, copy_of))
    for i, copies in enumerate(ring_copies):
        a = len(copies)
        if a == 0:
            continue
        if a == 1:
            g = build_gadget("EQ_NE", (copies[0], copies[0]), b.alloc)
            # the degenerate ring EQ(c, c) repeats its closing clause; keep one
            seen = set()
            for c in g.clauses:
                key = c.sorted_key()
                if key not in seen:
                    seen.add(key)
                    b.clauses.append(c)
            b.log.append(LogEntry("EQ_NE", g.boundary, g.aux))
        else:
            for j in range(a - 1):
                b.add_gadget("EQ_NE", (copies[j], copies[j + 1]))
            b.add_gadget("EQ_NE", (copies[a - 1], copies[0]))
    _pad_to_four(b)
    return b.finish(_NAE_E4)


def _pad_to_four(b: _Builder):
    counts = [0] * b.alloc.next_id
    for c in b.clauses:
        for lit in c.literals:
            counts[lit.var] += 1
    for v in range(len(counts)):
        assert counts[v] <= 4, f"variable {v} already appears {counts[v]} times"
        for _ in range(4 - counts[v]):
            b.add_gadget("P1", (v,))


def _apply_r2(inst: CnfInstance) -> ReductionCertificate:
    b = _Builder("R2", inst, NAE)
    unneg, negd = _appearance_split(inst)
    copy_of: dict[tuple[int, int], Literal] = {}
    rings: list[tuple[list[int], int]] = []  # (copies, u = unnegated count)
    for i in range(inst.num_vars):
        apps = unneg[i] + negd[i]
        copies = b.alloc.fresh(len(apps))
        rings.append((copies, len(unneg[i])))
        for j, (cid, app) in enumerate(zip(copies, apps)):
            copy_of[app] = Literal(cid)  # negations removed
            b.back_map[cid] = (i, j >= len(unneg[i]))
    b.clauses.extend(_replace_appearances(inst, copy_of, multiset=False))
    for copies, u in rings:
        a = len(copies)
        if a == 0:
            continue
        for j in range(u - 1):
            b.add_gadget("EQ13", (copies[j], copies[j + 1]))
        for j in range(u, a - 1):
            b.add_gadget("EQ13", (copies[j], copies[j + 1]))
        if 0 < u < a:
            b.add_gadget("NE9", (copies[u - 1], copies[u]))
            b.add_gadget("NE9", (copies[a - 1], copies[0]))
        else:
            b.add_gadget("EQ13", (copies[a - 1], copies[0]))
    return b.finish(_NAE_E4)


def _apply_r3(inst: CnfInstance) -> ReductionCertificate:
    b = _Builder("R3", inst, NAE)
    unneg, _ = _appearance_split(inst)
    copy_of: dict[tuple[int, int], Literal] = {}
    quads: list[list[int]] = []
    for i in range(inst.num_vars):
        copies = b.alloc.fresh(4)
        quads.append(copies)
        for cid, app in zip(copies, unneg[i]):
            copy_of[app] = Literal(cid)
            b.back_map[cid] = (i, False)
        for cid in copies:
            b.back_map[cid] = (i, False)
    b.clauses.extend(_replace_appearances(inst, copy_of))
    for copies in quads:
        b.add_gadget("EQ4L", tuple(copies))
    return b.finish(_NAE_E4_LINEAR)


def _apply_r4(inst: CnfInstance) -> ReductionCertificate:
    b = _Builder("R4", inst, SAT)
    b.alloc.fresh(inst.num_vars)
    for v in range(inst.num_vars):
        b.back_map[v] = (v, False)
    for c in inst.clauses:
        b.clauses.append(c)
        b.clauses.append(c.negated())
    return b.finish(_spec_mono(4, 4))


# ---------------------------------------------------------------------------
# R5 / R7 / R11 / R13: splitting 3-Sat-(2,2)


def _split_22(b: _Builder):
    """x_{i,1} takes the negated appearances, x_{i,2} the unnegated ones."""
    inst = b.input
    unneg, negd = _appearance_split(inst)
    copy_of: dict[tuple[int, int], Literal] = {}
    pairs = []
    for i in range(inst.num_vars):
        x1, x2 = b.alloc.fresh(2)
        pairs.append((x1, x2))
        b.back_map[x1] = (i, True)
        b.back_map[x2] = (i, False)
        for app in negd[i]:
            copy_of[app] = Literal(x1)
        for app in unneg[i]:
            copy_of[app] = Literal(x2)
    b.clauses.extend(_replace_appearances(inst, copy_of))
    return pairs


def _apply_r5(inst: CnfInstance) -> ReductionCertificate:
    b = _Builder("R5", inst, SAT)
    pairs = _split_22(b)
    n = len(pairs)
    assert n % 3 == 0  # 4n = 3m forces it
    for g in range(n // 3):
        y = b.alloc.fresh1()
        b.note("PAD_FALSE_Y", (y,))
        for i in range(3 * g, 3 * g + 3):
            x1, x2 = pairs[i]
            b.clauses.append(Clause((Literal(x1), Literal(x2), Literal(y))))
            b.add_gadget("A", (x1, x2))
        b.add_gadget("SBAR", (y, y, y))
    return b.finish(_spec_mono(3, 3))


def _apply_r7(inst: CnfInstance) -> ReductionCertificate:
    b = _Builder("R7", inst, SAT)
    pairs = _split_22(b)
    n = len(pairs)
    q, r = divmod(n, 3)
    assert r == 0
    ys = []
    for x1, x2 in pairs:
        y = b.alloc.fresh1()
        ys.append(y)
        b.note("Y_RING", (y,))
        b.add_gadget("D", (x1, x1, x1, x2, x2, x2))
        b.clauses.append(
            Clause((Literal(x1, True), Literal(x2, True), Literal(y, True)))
        )
        b.add_gadget("F", (y,))
    if q > 1:
        pad = []
        for t in range(q):
            pad.append((ys[3 * t], ys[3 * t + 1], ys[3 * t + 2]))
        for t in range(1, q):
            pad.append((ys[3 * t - 2], ys[3 * t - 1], ys[3 * t]))
        pad.append((ys[n - 2], ys[n - 1], ys[0]))
        assert len(set(map(tuple, map(sorted, pad)))) == len(pad), \
            "y-padding clauses must be pairwise distinct"
        for tri in pad:
            b.clauses.append(Clause(tuple(Literal(v) for v in tri)))
    else:
        b.add_gadget("D", (ys[0], ys[0], ys[1], ys[1], ys[2], ys[2]))
    return b.finish(_spec_mono(5, 1))


def _apply_r11(inst: CnfInstance) -> ReductionCertificate:
    b = _Builder("R11", inst, SAT)
    pairs = _split_22(b)
    n = len(pairs)
    k, r = divmod(n, 3)
    assert r == 0
    blocks = [tuple(b.alloc.fresh(3)) for _ in range(k)]  # (u, v, w)
    for u, v, w in blocks:
        b.note("UVW_BLOCK", (u, v, w))
    for i, (x1, x2) in enumerate(pairs):
        u = blocks[i // 3][0]
        y = b.alloc.fresh1()
        b.note("FORCED_TRUE_Y", (y,))
        b.clauses.append(Clause((Literal(x1), Literal(x2), Literal(u))))
        b.clauses.append(
            Clause((Literal(x1, True), Literal(x2, True), Literal(y, True)))
        )
        b.add_gadget("G", (y, y, y))
        b.add_gadget("H", (y, x1, x2))
    for u, v, w in blocks:
        b.add_gadget("H", (u, v, w))
        b.add_gadget("H", (u, v, w))
        b.add_gadget("G", (v, v, v))
        b.add_gadget("G", (w, w, w))
    return b.finish(_spec_mono(3, 2))


def _apply_r13(inst: CnfInstance) -> ReductionCertificate:
    b = _Builder("R13", inst, SAT)
    pairs = _split_22(b)
    for x1, x2 in pairs:
        y = b.alloc.fresh1()
        z = b.alloc.fresh1()
        b.note("FORCED_FALSE_Y", (y,))
        b.note("FORCED_TRUE_Z", (z,))
        b.clauses.append(Clause((Literal(x1), Literal(x2), Literal(y))))
        b.clauses.append(
            Clause((Literal(x1, True), Literal(x2, True), Literal(z, True)))
        )
        b.add_gadget("BBAR", (y, y, y))
        b.add_gadget("B", (z, z, z))
    return b.finish(_CHOICE_31)


# ---------------------------------------------------------------------------
# R6 / R8: lifting by disjoint copies


def _copies(b: _Builder, k: int):
    """k+1 disjoint copies of the input; copy 0 carries the back-map."""
    inst = b.input
    n = inst.num_vars
    for i in range(k + 1):
        base = b.alloc.fresh(n)[0]
        if i == 0:
            for j in range(n):
                b.back_map[j] = (j, False)
        else:
            b.note(f"COPY{i}", tuple(range(base, base + n)))
        for c in inst.clauses:
            lits = tuple(Literal(base + l.var, l.neg) for l in c.literals)
            b.clauses.append(Clause(lits))
    return n


def _apply_r6(inst: CnfInstance, k: int) -> ReductionCertificate:
    b = _Builder("R6", inst, SAT)
    n = _copies(b, k)
    y_base = b.alloc.fresh(n)[0]
    z_base = b.alloc.fresh(n)[0]
    b.note("LINK_Y", tuple(range(y_base, y_base + n)))
    b.note("LINK_Z", tuple(range(z_base, z_base + n)))
    for i in range(k + 1):
        for j in range(n):
            x = i * n + j
            b.clauses.append(
                Clause((Literal(x), Literal(y_base + j), Literal(z_base + j)))
            )
            b.clauses.append(
                Clause(
                    (Literal(x, True), Literal(y_base + j, True), Literal(z_base + j, True))
                )
            )
    cert = b.finish(_spec_mono(k + 1, k + 1))
    m = inst.num_clauses
    assert cert.output.num_clauses == (k + 1) * (m + 2 * n)
    assert cert.output.num_vars == (k + 3) * n
    return cert


def _apply_r8(inst: CnfInstance, k: int) -> ReductionCertificate:
    b = _Builder("R8", inst, SAT)
    n = _copies(b, k)
    q, r = divmod(n, 3)
    assert r == 0  # forced: each variable once negated, negative 3-clauses
    y_base = b.alloc.fresh(n)[0]
    z_base = b.alloc.fresh(n)[0]
    b.note("LINK_Y", tuple(range(y_base, y_base + n)))
    b.note("LINK_Z", tuple(range(z_base, z_base + n)))
    for i in range(k + 1):
        for j in range(n):
            b.clauses.append(
                Clause(
                    (Literal(i * n + j), Literal(y_base + j), Literal(z_base + j))
                )
            )
    for t in range(q):
        for base in (y_base, z_base):
            b.clauses.append(
                Clause(tuple(Literal(base + 3 * t + s, True) for s in range(3)))
            )
    cert = b.finish(_spec_mono(k + 1, 1))
    m = inst.num_clauses
    assert cert.output.num_clauses == (k + 1) * (m + n) + 2 * q
    assert cert.output.num_vars == (k + 3) * n
    return cert


# ---------------------------------------------------------------------------
# R9: 6-way splitting with the multiset star gadget


def _split_six(b: _Builder, keep_negations: bool):
    """Each positive appearance becomes copy 1/3/5, each negated 2/4/6.

    With keep_negations the negated appearances stay negative literals and
    the star gadget forces all six copies equal, so every copy carries the
    input value.  Without it (chain construction) the negation is dropped:
    the even copies carry the complemented value.
    """
    inst = b.input
    unneg, negd = _appearance_split(inst)
    copy_of: dict[tuple[int, int], Literal] = {}
    sixes = []
    for i in range(inst.num_vars):
        six = b.alloc.fresh(6)
        sixes.append(six)
        for s, cid in enumerate(six):
            b.back_map[cid] = (i, (s % 2 == 1) and not keep_negations)
        for (ci, li), s in zip(unneg[i], (0, 2, 4)):
            copy_of[(ci, li)] = Literal(six[s])
        for (ci, li), s in zip(negd[i], (1, 3, 5)):
            copy_of[(ci, li)] = Literal(six[s], keep_negations)
    return sixes, copy_of


def _apply_r9(inst: CnfInstance) -> ReductionCertificate:
    b = _Builder("R9", inst, SAT)
    sixes, copy_of = _split_six(b, keep_negations=True)
    b.clauses.extend(_replace_appearances(inst, copy_of))
    for six in sixes:
        b.add_gadget("STAR22", tuple(six))
    return b.finish(VariantSpec(3, True, MONOTONE_SAT, (EXACT, 2, 2)))


# ---------------------------------------------------------------------------
# R10: conditional reduction to Monotone 3-Sat-(2,2)


@dataclass(frozen=True)
class MGadget:
    """Clause set over local variables 0..num_vars-1, plus the forced-false
    literal pools (3q positive and 3q negative literals, as multisets)."""

    num_vars: int
    clauses: tuple[Clause, ...]
    pos_pool: tuple[int, ...]  # variables whose positive literal is forced false
    neg_pool: tuple[int, ...]
    q: int


def build_m_gadget(param: CnfInstance, timeout: float | None = None) -> MGadget:
    """The satisfiable core plus forced literals, doubled with its polarity
    flip so the positive and negative pools balance."""
    if solve_auto(param, timeout=timeout).status != "unsat":
        raise ReductionInputError("R10 parameter instance must be unsatisfiable")
    core, forced = split_forced(param, timeout=timeout)
    q = param.num_clauses - len(core)
    if q == 0:
        raise ReductionInputError("parameter instance has no excluded clauses")
    nv = param.num_vars
    kept = [param.clauses[i] for i in core]
    clauses = list(kept)
    for c in kept:  # flipped copy over shifted variables
        clauses.append(
            Clause(tuple(Literal(l.var + nv, not l.neg) for l in c.literals))
        )
    pos_pool: list[int] = []
    neg_pool: list[int] = []
    for lit in forced:
        if lit.neg:
            neg_pool.append(lit.var)
            pos_pool.append(lit.var + nv)  # flipped copy
        else:
            pos_pool.append(lit.var)
            neg_pool.append(lit.var + nv)
    assert len(pos_pool) == len(neg_pool) == 3 * q
    return MGadget(2 * nv, tuple(clauses), tuple(pos_pool), tuple(neg_pool), q)


def _apply_r10(inst: CnfInstance, param: CnfInstance) -> ReductionCertificate:
    rep = validate(param, _spec_mono(2, 2))
    if not rep.ok:
        raise ReductionInputError(
            f"R10 parameter is not a Monotone 3-Sat-(2,2) instance: {rep.reason}"
        )
    return _assemble_r10(inst, build_m_gadget(param))


def _assemble_r10(inst: CnfInstance, mg: MGadget) -> ReductionCertificate:
    q = mg.q
    b = _Builder("R10", inst, SAT)
    n = inst.num_vars
    pos2: list[tuple[int, int]] = []
    neg2: list[tuple[int, int]] = []
    full3: list[Clause] = []
    for copy in range(q):
        sixes, copy_of = _split_six(b, keep_negations=False)
        if copy > 0:
            # only the first copy carries the back-map
            for six in sixes:
                for cid in six:
                    del b.back_map[cid]
                b.note(f"COPY{copy}", tuple(six))
        full3.extend(_replace_appearances(b.input, copy_of))
        for six in sixes:
            x1, x2, x3, x4, x5, x6 = six
            pos2 += [(x1, x2), (x3, x4), (x5, x6)]
            neg2 += [(x2, x3), (x4, x5), (x6, x1)]
            full3.append(Clause((Literal(x1, True), Literal(x2, True), Literal(x6, True))))
            full3.append(Clause((Literal(x3, True), Literal(x4, True), Literal(x5, True))))
    pos_pool: list[int] = []
    neg_pool: list[int] = []
    for _ in range(n):
        base = b.alloc.fresh(mg.num_vars)[0]
        b.note("M_GADGET", tuple(range(base, base + mg.num_vars)))
        for c in mg.clauses:
            full3.append(Clause(tuple(Literal(base + l.var, l.neg) for l in c.literals)))
        pos_pool += [base + v for v in mg.pos_pool]
        neg_pool += [base + v for v in mg.neg_pool]
    assert len(pos_pool) == len(pos2) == 3 * n * q
    assert len(neg_pool) == len(neg2) == 3 * n * q
    for (a, c), pad in zip(pos2, pos_pool):
        full3.append(Clause((Literal(a), Literal(c), Literal(pad))))
    for (a, c), pad in zip(neg2, neg_pool):
        full3.append(Clause((Literal(a, True), Literal(c, True), Literal(pad, True))))
    b.clauses = full3
    return b.finish(_spec_mono(2, 2))


# ---------------------------------------------------------------------------
# R12 / R14


def _apply_r12(inst: CnfInstance) -> ReductionCertificate:
    b = _Builder("R12", inst, SAT)
    n = inst.num_vars
    assert n % 3 == 0  # 2n negated appearances fill negative 3-clauses
    b.alloc.fresh(n)
    for v in range(n):
        b.back_map[v] = (v, False)
    b.clauses.extend(inst.clauses)
    for t in range(0, n, 3):
        b.add_gadget("INC32", (t, t + 1, t + 2))
    return b.finish(_spec_mono(4, 2))


def _apply_r14(inst: CnfInstance) -> ReductionCertificate:
    b = _Builder("R14", inst, SAT)
    prof = appearance_profile(inst)
    flipped = [v for v, (p, q) in enumerate(prof) if (p, q) == (1, 3)]
    out = negate_rename(inst, flipped)
    flipped_set = set(flipped)
    b.alloc.fresh(inst.num_vars)
    for v in range(inst.num_vars):
        b.back_map[v] = (v, v in flipped_set)
    b.clauses.extend(out.clauses)
    return b.finish(VariantSpec(3, False, None, (EXACT, 3, 1)))


_APPLY = {
    "R1": _apply_r1,
    "R2": _apply_r2,
    "R3": _apply_r3,
    "R4": _apply_r4,
    "R5": _apply_r5,
    "R7": _apply_r7,
    "R9": _apply_r9,
    "R11": _apply_r11,
    "R12": _apply_r12,
    "R13": _apply_r13,
    "R14": _apply_r14,
}


def apply_reduction(
    rid: str,
    inst: CnfInstance,
    k: int | None = None,
    param: CnfInstance | None = None,
) -> ReductionCertificate:
    """Run a catalogued reduction, validating input and output variants."""
    if rid not in REDUCTIONS:
        raise KeyError(f"unknown reduction {rid!r}")
    row = REDUCTIONS[rid]
    if row.needs_k:
        if k is None:
            raise ReductionInputError(f"{rid} needs the appearance parameter k")
        _check_input(row, inst, row.input_spec(k))
        return _apply_r6(inst, k) if rid == "R6" else _apply_r8(inst, k)
    if row.needs_param:
        if param is None:
            raise ReductionInputError(
                f"{rid} needs an unsatisfiable Monotone 3-Sat-(2,2) parameter instance"
            )
        _check_input(row, inst, row.input_spec())
        return _apply_r10(inst, param)
    _check_input(row, inst, row.input_spec())
    return _APPLY[rid](inst)


def check_equisat(
    rid: str,
    inst: CnfInstance,
    k: int | None = None,
    param: CnfInstance | None = None,
    timeout: float | None = None,
) -> VerificationReport:
    """Oracle both sides: exhaustive on the input, DPLL on the output."""
    cert = apply_reduction(rid, inst, k=k, param=param)
    left = solve_auto(inst, timeout=timeout)
    right = solve_dpll(cert.output, timeout=timeout)
    if "indeterminate" in (left.status, right.status):
        return VerificationReport(False, "indeterminate: oracle timeout", None)
    if left.status == right.status:
        return VerificationReport(True, f"both {left.status}")
    return VerificationReport(
        False,
        f"{rid}: input is {left.status} but output is {right.status}",
        {"input_status": left.status, "output_status": right.status},
    )


def pull_back(cert: ReductionCertificate, model) -> tuple:
    """Map a satisfying output model back to an input assignment."""
    out = cert.output
    if len(model) != out.num_vars:
        raise ValueError("model length does not match the output instance")
    if not evaluate(out, model):
        raise ValueError("model does not satisfy the output instance")
    values: dict[int, bool] = {}
    for out_v, (in_v, negated) in cert.back_map.items():
        val = bool(model[out_v]) ^ negated
        if in_v in values and values[in_v] != val:
            raise BackMapViolation(
                f"output variables mapping to input {in_v} disagree "
                f"(at output variable {out_v})"
            )
        values[in_v] = val
    assignment = tuple(values.get(i, False) for i in range(cert.input.num_vars))
    if not evaluate(cert.input, assignment):
        raise BackMapViolation(
            "pulled-back assignment does not satisfy the input instance"
        )
    return assignment

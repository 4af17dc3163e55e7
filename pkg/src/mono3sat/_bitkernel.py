"""Pure-Python enumeration kernel.

Assignments over n variables are indexed 0..2^n-1; bit v of the index is the
value of variable v.  Formula truth tables are built chunk-wise as Python
big integers, so the per-assignment work happens inside CPython's C loops.

Both kernels (this one and the compiled one in _kernel.pyx) expose the same
two entry points:

    solve(num_vars, clauses, nae)             -> model index or None
    accepted_patterns(num_aux, num_boundary, clauses, nae) -> set of patterns

clauses are (pos_mask, neg_mask) pairs over local variable ids.  For
accepted_patterns the auxiliary variables occupy ids 0..num_aux-1 and the
boundary ids num_aux..num_aux+num_boundary-1, so assignments with one
boundary pattern form one contiguous index range.
"""

from __future__ import annotations

CHUNK_LOG = 18  # 2^18-bit chunks: large enough to amortize Python overhead

_pattern_cache: dict[int, list[int]] = {}


def _var_patterns(width_log: int) -> list[int]:
    """Truth tables of variables 0..width_log-1 over a 2^width_log space."""
    if width_log in _pattern_cache:
        return _pattern_cache[width_log]
    width = 1 << width_log
    tables = []
    for i in range(width_log):
        period = 1 << (i + 1)
        t = ((1 << (1 << i)) - 1) << (1 << i)
        size = period
        while size < width:
            t |= t << size
            size <<= 1
        tables.append(t)
    _pattern_cache[width_log] = tables
    return tables


def _clause_table(
    pos: int,
    neg: int,
    chunk: int,
    width_log: int,
    tables: list[int],
    full: int,
    nae: bool,
) -> int:
    """Truth table of one clause restricted to a chunk of the space.

    Variables >= width_log are constant inside the chunk; their value is the
    corresponding bit of the chunk index.
    """
    low_mask = (1 << width_log) - 1
    or_t = 0
    or_const = False
    v = 0
    low = (pos | neg) & low_mask
    while low:
        if low & 1:
            if (pos >> v) & 1:
                or_t |= tables[v]
            if (neg >> v) & 1:
                or_t |= full ^ tables[v]
        low >>= 1
        v += 1
    high = (pos | neg) >> width_log
    v = 0
    while high:
        if high & 1:
            bit = (chunk >> v) & 1
            hv = width_log + v
            if (pos >> hv) & 1 and bit:
                or_const = True
            if (neg >> hv) & 1 and not bit:
                or_const = True
        high >>= 1
        v += 1
    or_table = full if or_const else or_t
    if not nae:
        return or_table
    # nae additionally wants at least one false literal
    and_t = full
    and_const_false = False
    v = 0
    low = (pos | neg) & low_mask
    while low:
        if low & 1:
            if (pos >> v) & 1:
                and_t &= tables[v]
            if (neg >> v) & 1:
                and_t &= full ^ tables[v]
        low >>= 1
        v += 1
    high = (pos | neg) >> width_log
    v = 0
    while high:
        if high & 1:
            bit = (chunk >> v) & 1
            hv = width_log + v
            if (pos >> hv) & 1 and not bit:
                and_const_false = True
            if (neg >> hv) & 1 and bit:
                and_const_false = True
        high >>= 1
        v += 1
    and_table = 0 if and_const_false else and_t
    return or_table & (full ^ and_table)


def solve(num_vars: int, clauses: list[tuple[int, int]], nae: bool) -> int | None:
    width_log = min(num_vars, CHUNK_LOG)
    width = 1 << width_log
    full = (1 << width) - 1
    tables = _var_patterns(width_log)
    for chunk in range(1 << (num_vars - width_log)):
        acc = full
        for pos, neg in clauses:
            acc &= _clause_table(pos, neg, chunk, width_log, tables, full, nae)
            if not acc:
                break
        if acc:
            return (chunk << width_log) | ((acc & -acc).bit_length() - 1)
    return None


def accepted_patterns(
    num_aux: int, num_boundary: int, clauses: list[tuple[int, int]], nae: bool
) -> set[int]:
    width_log = min(num_aux, CHUNK_LOG)
    width = 1 << width_log
    full = (1 << width) - 1
    tables = _var_patterns(width_log)
    shift = num_aux - width_log  # chunk -> boundary pattern
    accepted: set[int] = set()
    total = num_aux + num_boundary
    for chunk in range(1 << (total - width_log)):
        pattern = chunk >> shift
        if pattern in accepted:
            continue
        acc = full
        for pos, neg in clauses:
            acc &= _clause_table(pos, neg, chunk, width_log, tables, full, nae)
            if not acc:
                break
        if acc:
            accepted.add(pattern)
    return accepted

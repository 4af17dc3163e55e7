# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernel.

Same contract as _bitkernel: assignments are indexed 0..2^n-1 with bit v of
the index holding variable v, and the space is swept 64 assignments per
machine word.  Variables 0..5 vary inside a word (fixed bit patterns),
higher variables are constant per word.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc

cdef uint64_t[6] _PAT
_PAT[0] = <uint64_t>0xAAAAAAAAAAAAAAAA
_PAT[1] = <uint64_t>0xCCCCCCCCCCCCCCCC
_PAT[2] = <uint64_t>0xF0F0F0F0F0F0F0F0
_PAT[3] = <uint64_t>0xFF00FF00FF00FF00
_PAT[4] = <uint64_t>0xFFFF0000FFFF0000
_PAT[5] = <uint64_t>0xFFFFFFFF00000000

cdef uint64_t ALL = <uint64_t>0xFFFFFFFFFFFFFFFF


cdef struct ClauseData:
    uint64_t low_or
    uint64_t low_and
    int high_off
    int high_cnt


cdef struct Prepared:
    int m
    ClauseData* cl
    int* high_shift
    unsigned char* high_neg


cdef int _prepare(list clauses, Prepared* prep) except -1:
    cdef int m = len(clauses)
    cdef int i, v, total_high = 0
    cdef object pos, neg
    for pos, neg in clauses:
        total_high += bin((pos | neg) >> 6).count("1")
    prep.m = m
    prep.cl = <ClauseData*>malloc(m * sizeof(ClauseData))
    prep.high_shift = <int*>malloc(max(1, total_high) * sizeof(int))
    prep.high_neg = <unsigned char*>malloc(max(1, total_high))
    if prep.cl == NULL or prep.high_shift == NULL or prep.high_neg == NULL:
        raise MemoryError()
    cdef int off = 0
    cdef uint64_t lo, la
    i = 0
    for pos, neg in clauses:
        lo = 0
        la = ALL
        prep.cl[i].high_off = off
        v = 0
        both = pos | neg
        while both:
            if both & 1:
                if v < 6:
                    if (pos >> v) & 1:
                        lo |= _PAT[v]
                        la &= _PAT[v]
                    if (neg >> v) & 1:
                        lo |= ~_PAT[v]
                        la &= ~_PAT[v]
                else:
                    if (pos >> v) & 1:
                        prep.high_shift[off] = v - 6
                        prep.high_neg[off] = 0
                        off += 1
                    if (neg >> v) & 1:
                        prep.high_shift[off] = v - 6
                        prep.high_neg[off] = 1
                        off += 1
            both >>= 1
            v += 1
        prep.cl[i].low_or = lo
        prep.cl[i].low_and = la
        prep.cl[i].high_cnt = off - prep.cl[i].high_off
        i += 1
    return 0


cdef void _release(Prepared* prep) noexcept:
    free(prep.cl)
    free(prep.high_shift)
    free(prep.high_neg)


cdef inline uint64_t _eval_word(
    Prepared* prep, Py_ssize_t w, bint nae, uint64_t width_mask
) noexcept:
    cdef uint64_t acc = width_mask
    cdef uint64_t or_w, and_w, cw
    cdef int i, j, off
    cdef bint or_full, and_zero, lit_true
    for i in range(prep.m):
        or_w = prep.cl[i].low_or
        and_w = prep.cl[i].low_and
        or_full = False
        and_zero = False
        off = prep.cl[i].high_off
        for j in range(prep.cl[i].high_cnt):
            lit_true = ((w >> prep.high_shift[off + j]) & 1) ^ prep.high_neg[off + j]
            if lit_true:
                or_full = True
            else:
                and_zero = True
        if or_full:
            or_w = width_mask
        if and_zero:
            and_w = 0
        if nae:
            cw = or_w & ~and_w
        else:
            cw = or_w
        acc &= cw
        if acc == 0:
            break
    return acc


def solve(int num_vars, list clauses, bint nae):
    """Lowest-index satisfying assignment of the clause masks, or None."""
    cdef Prepared prep
    _prepare(clauses, &prep)
    cdef Py_ssize_t nwords = 1
    cdef uint64_t width_mask = ALL
    if num_vars < 6:
        width_mask = (<uint64_t>1 << (1 << num_vars)) - 1
    else:
        nwords = (<Py_ssize_t>1) << (num_vars - 6)
    cdef Py_ssize_t w
    cdef uint64_t acc
    cdef int b
    try:
        for w in range(nwords):
            acc = _eval_word(&prep, w, nae, width_mask)
            if acc:
                b = 0
                while not (acc >> b) & 1:
                    b += 1
                return (w << 6) | b
        return None
    finally:
        _release(&prep)


def accepted_patterns(int num_aux, int num_boundary, list clauses, bint nae):
    """Boundary patterns with at least one satisfying aux extension."""
    cdef Prepared prep
    _prepare(clauses, &prep)
    cdef int n = num_aux + num_boundary
    cdef uint64_t width_mask = ALL
    if n < 6:
        width_mask = (<uint64_t>1 << (1 << n)) - 1
    cdef Py_ssize_t nwords = 1
    if n >= 6:
        nwords = (<Py_ssize_t>1) << (n - 6)
    cdef Py_ssize_t total_pats = (<Py_ssize_t>1) << num_boundary
    accepted = set()
    cdef Py_ssize_t p, w, base, wpp, k, pats_per_word, first_pat
    cdef uint64_t acc, chunk_mask
    try:
        if num_aux >= 6:
            wpp = (<Py_ssize_t>1) << (num_aux - 6)
            for p in range(total_pats):
                base = p * wpp
                for w in range(base, base + wpp):
                    if _eval_word(&prep, w, nae, width_mask):
                        accepted.add(p)
                        break
        else:
            chunk_mask = (<uint64_t>1 << (1 << num_aux)) - 1
            pats_per_word = (<Py_ssize_t>1) << (6 - num_aux)
            for w in range(nwords):
                acc = _eval_word(&prep, w, nae, width_mask)
                if acc == 0:
                    continue
                first_pat = w * pats_per_word
                for k in range(min(pats_per_word, total_pats - first_pat)):
                    if (acc >> (k << num_aux)) & chunk_mask:
                        accepted.add(first_pat + k)
        return accepted
    finally:
        _release(&prep)

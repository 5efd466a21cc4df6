# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled subset valuation kernels; see ``_kernels_py`` for the contract."""

from libc.stdlib cimport malloc, free
from cpython.array cimport array

ctypedef long long i64


cdef i64[::1] _as_view(table):
    if isinstance(table, array) and table.typecode == 'q':
        return table
    return array('q', table)


cdef int _lowbit(unsigned long m):
    cdef int i = 0
    while not (m >> i) & 1:
        i += 1
    return i


cdef i64* _all_sums(i64[::1] t, int n, int npts) except NULL:
    cdef size_t total = (<size_t>1 << n) * npts
    cdef i64* sums = <i64*>malloc(total * sizeof(i64))
    if sums == NULL:
        raise MemoryError()
    cdef unsigned long m, prev
    cdef int a, low
    for a in range(npts):
        sums[a] = 0
    for m in range(1, <unsigned long>1 << n):
        low = _lowbit(m)
        prev = m & (m - 1)
        for a in range(npts):
            sums[m * npts + a] = sums[prev * npts + a] + t[low * npts + a]
    return sums


cdef inline i64 _row_min(i64* row, int npts):
    cdef i64 best = row[0]
    cdef int a
    for a in range(1, npts):
        if row[a] < best:
            best = row[a]
    return best


def mask_min_sum(table, int n, int npts, unsigned long mask):
    cdef i64[::1] t = _as_view(table)
    cdef i64 best = 0, s
    cdef int a, i
    if npts == 0:
        return 0
    for a in range(npts):
        s = 0
        for i in range(n):
            if (mask >> i) & 1:
                s += t[i * npts + a]
        if a == 0 or s < best:
            best = s
    return best


def subset_min_sums(table, int n, int npts):
    cdef i64[::1] t = _as_view(table)
    cdef i64* sums = _all_sums(t, n, npts)
    cdef unsigned long m
    try:
        return [_row_min(&sums[m * npts], npts) for m in range(<unsigned long>1 << n)]
    finally:
        free(sums)


def mixed_mismatches(t_orig, t_lift, int n, int npts):
    cdef i64[::1] to = _as_view(t_orig)
    cdef i64[::1] tl = _as_view(t_lift)
    cdef i64* so = _all_sums(to, n, npts)
    cdef i64* sl = NULL
    cdef unsigned long m, sub, m1
    cdef i64 best, s, ref
    cdef int a
    bad = []
    try:
        sl = _all_sums(tl, n, npts)
        for m in range(<unsigned long>1 << n):
            ref = _row_min(&so[m * npts], npts)
            sub = m
            while True:
                m1 = m ^ sub
                best = so[m1 * npts] + sl[sub * npts]
                for a in range(1, npts):
                    s = so[m1 * npts + a] + sl[sub * npts + a]
                    if s < best:
                        best = s
                if best != ref:
                    bad.append((m1, sub))
                if sub == 0:
                    break
                sub = (sub - 1) & m
        return bad
    finally:
        free(so)
        if sl != NULL:
            free(sl)

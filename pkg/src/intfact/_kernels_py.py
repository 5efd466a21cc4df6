"""Pure-Python subset valuation kernels (fallback for ``_kernels.pyx``).

``table`` is a flat row-major sequence of ``n * npts`` nonnegative ints;
row ``i`` holds ``v_q(f_i(a))`` for the sample points ``a``.  For a
bitmask ``m`` of rows, the q-part exponent of the fixed divisor of
``prod_{i in m} f_i`` is ``min_a sum_{i in m} table[i][a]``.
"""


def _rows(table, n, npts):
    return [list(table[i * npts : (i + 1) * npts]) for i in range(n)]


def _all_sums(rows, n, npts):
    sums = [None] * (1 << n)
    sums[0] = [0] * npts
    for m in range(1, 1 << n):
        low = (m & -m).bit_length() - 1
        sums[m] = [x + y for x, y in zip(sums[m & (m - 1)], rows[low])]
    return sums


def mask_min_sum(table, n, npts, mask):
    rows = _rows(table, n, npts)
    acc = [0] * npts
    for i in range(n):
        if mask >> i & 1:
            acc = [x + y for x, y in zip(acc, rows[i])]
    return min(acc) if npts else 0


def subset_min_sums(table, n, npts):
    sums = _all_sums(_rows(table, n, npts), n, npts)
    return [min(s) for s in sums]


def mixed_mismatches(t_orig, t_lift, n, npts):
    """Disjoint mask pairs ``(m1, m2)`` whose mixed minimum differs from the original.

    The mixed product takes rows ``m1`` from *t_orig* and rows ``m2`` from
    *t_lift*; it is compared against *t_orig* over ``m1 | m2``.
    """
    so = _all_sums(_rows(t_orig, n, npts), n, npts)
    sl = _all_sums(_rows(t_lift, n, npts), n, npts)
    ref = [min(s) for s in so]
    bad = []
    for m in range(1 << n):
        sub = m
        while True:
            m1 = m ^ sub
            if min(x + y for x, y in zip(so[m1], sl[sub])) != ref[m]:
                bad.append((m1, sub))
            if sub == 0:
                break
            sub = (sub - 1) & m
    return bad

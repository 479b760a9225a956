"""Pure-Python versions of the hot kernels.

These are the reference implementations; ``_kernels.pyx`` mirrors them
line for line in C types.  Every function accepts plain nested sequences or
numpy arrays and returns plain Python objects.
"""

from __future__ import annotations

import sys

from .errors import CapExceeded


def _as_rows(A):
    return [[int(v) for v in row] for row in A]


def _bounds_tables(A, d):
    """Per-depth lists of forms that bound the next coordinate.

    ``upper[k]`` holds ``(j, c)`` with ``c = -A[j][k] > 0`` for forms whose
    positive coefficients all sit before ``k``; ``lower[k]`` holds ``(j, a)``
    for forms whose last positive coefficient is exactly ``a = A[j][k]``.
    """
    m = len(A)
    lastpos = []
    for j in range(m):
        lp = -1
        for k in range(d):
            if A[j][k] > 0:
                lp = k
        lastpos.append(lp)
    upper = [[] for _ in range(d)]
    lower = [[] for _ in range(d)]
    touch = [[] for _ in range(d)]
    for k in range(d):
        for j in range(m):
            a = A[j][k]
            if a != 0:
                touch[k].append((j, a))
            if a < 0 and lastpos[j] < k:
                upper[k].append((j, -a))
            elif a > 0 and lastpos[j] == k:
                lower[k].append((j, a))
    return upper, lower, touch


def _walk(A, d, maxdeg, leaf, cap=None):
    upper, lower, touch = _bounds_tables(A, d)
    nodes = [0]
    vals = [0] * len(A)
    prefix = [0] * d
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10 * d + 100))

    def rec(k, used):
        nodes[0] += 1
        if cap is not None and nodes[0] > cap:
            raise CapExceeded(f"enumeration exceeded {cap} candidate tuples")
        lo = 0
        hi = maxdeg - used
        for j, c in upper[k]:
            b = vals[j] // c
            if b < hi:
                hi = b
        for j, a in lower[k]:
            b = -(vals[j] // a)
            if b > lo:
                lo = b
        if lo > hi:
            return
        if k == d - 1:
            leaf(prefix, used, lo, hi)
            return
        tk = touch[k]
        for j, a in tk:
            vals[j] += a * lo
        for x in range(lo, hi + 1):
            prefix[k] = x
            rec(k + 1, used + x)
            for j, a in tk:
                vals[j] += a
        for j, a in tk:
            vals[j] -= a * (hi + 1)
        prefix[k] = 0

    rec(0, 0)


def count_by_degree(A, d, maxdeg, cap=None):
    """Histogram of points ``x >= 0`` with ``A x >= 0`` by ``sum(x)``.

    Returns a list of ``maxdeg + 1`` counts.
    """
    A = _as_rows(A)
    diff = [0] * (maxdeg + 2)

    def leaf(prefix, used, lo, hi):
        diff[used + lo] += 1
        diff[used + hi + 1] -= 1

    if d == 0:
        return [1] + [0] * maxdeg
    _walk(A, d, maxdeg, leaf, cap)
    hist = []
    acc = 0
    for g in range(maxdeg + 1):
        acc += diff[g]
        hist.append(acc)
    return hist


def enumerate_points(A, d, maxdeg, cap=None):
    """All points ``x >= 0`` with ``A x >= 0`` and ``sum(x) <= maxdeg``."""
    A = _as_rows(A)
    out = []

    def leaf(prefix, used, lo, hi):
        head = prefix[: d - 1]
        if cap is not None and len(out) + hi - lo + 1 > cap:
            raise CapExceeded(f"enumeration exceeded {cap} points")
        for x in range(lo, hi + 1):
            out.append(tuple(head) + (x,))

    if d == 0:
        return [()]
    _walk(A, d, maxdeg, leaf, cap)
    return out


def adjacent_pairs(zero_sets, pos, neg, min_common):
    """Combinatorial adjacency test of the double description method.

    ``zero_sets[r]`` is an int bitmask of the processed inequalities tight at
    ray ``r``.  A pair ``(p, q)`` is adjacent iff the common zero set has at
    least ``min_common`` members and no third ray is tight on all of them.
    """
    z = [int(v) for v in zero_sets]
    pops = [v.bit_count() for v in z]
    nrays = len(z)
    pairs = []
    for p in pos:
        zp = z[p]
        for q in neg:
            c = zp & z[q]
            pc = c.bit_count()
            if pc < min_common:
                continue
            for r in range(nrays):
                if pops[r] >= pc and r != p and r != q and (z[r] & c) == c:
                    break
            else:
                pairs.append((p, q))
    return pairs


def det_adj(M):
    """Exact ``(D, X)`` with ``M @ X == D * I`` for a square integer matrix.

    Fraction-free Gauss-Jordan elimination; ``D`` is ``det(M)`` and ``X`` the
    adjugate.  A singular matrix gives ``D == 0`` and ``X is None``.
    """
    M = _as_rows(M)
    d = len(M)
    a = [M[i] + [1 if j == i else 0 for j in range(d)] for i in range(d)]
    sign = 1
    prev = 1
    w = 2 * d
    for k in range(d):
        piv = k
        while piv < d and a[piv][k] == 0:
            piv += 1
        if piv == d:
            return 0, None
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        rk = a[k]
        akk = rk[k]
        for i in range(d):
            if i == k:
                continue
            ri = a[i]
            aik = ri[k]
            for j in range(w):
                if j != k:
                    ri[j] = (akk * ri[j] - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    # left block is prev * I and prev = det of the row-permuted matrix
    if sign < 0:
        return -prev, [[-v for v in row[d:]] for row in a]
    return prev, [row[d:] for row in a]

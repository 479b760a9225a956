# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels (see ``_pykernels`` for semantics)."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

from scoresheets.errors import CapExceeded

cnp.import_array()

cdef extern from *:
    """
    typedef __int128 s128;
    static inline int popcount64(unsigned long long v) { return __builtin_popcountll(v); }
    """
    ctypedef long long s128
    int popcount64(unsigned long long v) nogil

cdef inline int64_t floordiv(int64_t a, int64_t b) nogil:
    # b > 0
    cdef int64_t q = a / b
    if (a % b != 0) and (a < 0):
        q -= 1
    return q


cdef class _Tables:
    cdef public object up_off, up_j, up_c, lo_off, lo_j, lo_a, t_off, t_j, t_a

    def __init__(self, A, int d):
        m = A.shape[0]
        lastpos = np.full(m, -1, dtype=np.int64)
        for j in range(m):
            for k in range(d):
                if A[j, k] > 0:
                    lastpos[j] = k
        up = [[] for _ in range(d)]
        lo = [[] for _ in range(d)]
        tc = [[] for _ in range(d)]
        for k in range(d):
            for j in range(m):
                a = int(A[j, k])
                if a != 0:
                    tc[k].append((j, a))
                if a < 0 and lastpos[j] < k:
                    up[k].append((j, -a))
                elif a > 0 and lastpos[j] == k:
                    lo[k].append((j, a))
        self.up_off, self.up_j, self.up_c = _csr(up)
        self.lo_off, self.lo_j, self.lo_a = _csr(lo)
        self.t_off, self.t_j, self.t_a = _csr(tc)


def _csr(lists):
    off = np.zeros(len(lists) + 1, dtype=np.int64)
    js = []
    cs = []
    for k, items in enumerate(lists):
        off[k + 1] = off[k] + len(items)
        for j, c in items:
            js.append(j)
            cs.append(c)
    return off, np.array(js, dtype=np.int64), np.array(cs, dtype=np.int64)


cdef object _walk(cnp.ndarray[int64_t, ndim=2] A, int d, int64_t maxdeg,
                  int mode, int64_t cap):
    """mode 0: histogram by degree; mode 1: collect points."""
    cdef _Tables T = _Tables(A, d)
    cdef int64_t[:] up_off = T.up_off, up_j = T.up_j, up_c = T.up_c
    cdef int64_t[:] lo_off = T.lo_off, lo_j = T.lo_j, lo_a = T.lo_a
    cdef int64_t[:] t_off = T.t_off, t_j = T.t_j, t_a = T.t_a
    cdef int m = A.shape[0]
    cdef cnp.ndarray[int64_t, ndim=1] vals_arr = np.zeros(max(m, 1), dtype=np.int64)
    cdef int64_t[:] vals = vals_arr
    cdef int64_t[:] x = np.zeros(d, dtype=np.int64)
    cdef int64_t[:] hiarr = np.zeros(d, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] diff_arr = np.zeros(maxdeg + 2, dtype=np.int64)
    cdef int64_t[:] diff = diff_arr
    cdef int64_t cap_rows = 1024
    cdef cnp.ndarray[int64_t, ndim=2] pts_arr = np.zeros((cap_rows if mode == 1 else 1, d), dtype=np.int64)
    cdef int64_t[:, :] pts = pts_arr
    cdef int64_t npts = 0
    cdef int64_t nodes = 0
    cdef int k = 0
    cdef int64_t used = 0
    cdef int64_t lo, hi, b, xv, a
    cdef Py_ssize_t t, i
    cdef bint enter = True

    while True:
        if enter:
            nodes += 1
            if nodes > cap:
                raise CapExceeded(f"enumeration exceeded {cap} candidate tuples")
            lo = 0
            hi = maxdeg - used
            for t in range(up_off[k], up_off[k + 1]):
                b = floordiv(vals[up_j[t]], up_c[t])
                if b < hi:
                    hi = b
            for t in range(lo_off[k], lo_off[k + 1]):
                b = -floordiv(vals[lo_j[t]], lo_a[t])
                if b > lo:
                    lo = b
            if lo > hi or k == d - 1:
                if lo <= hi:
                    if mode == 0:
                        diff[used + lo] += 1
                        diff[used + hi + 1] -= 1
                    else:
                        if npts + hi - lo + 1 > cap:
                            raise CapExceeded(f"enumeration exceeded {cap} points")
                        for xv in range(lo, hi + 1):
                            if npts >= cap_rows:
                                cap_rows *= 2
                                pts_arr = np.resize(pts_arr, (cap_rows, d))
                                pts = pts_arr
                            for i in range(d - 1):
                                pts[npts, i] = x[i]
                            pts[npts, d - 1] = xv
                            npts += 1
                enter = False
                k -= 1
                if k < 0:
                    break
                continue
            x[k] = lo
            hiarr[k] = hi
            for t in range(t_off[k], t_off[k + 1]):
                vals[t_j[t]] += t_a[t] * lo
            used += lo
            k += 1
        else:
            if x[k] < hiarr[k]:
                x[k] += 1
                for t in range(t_off[k], t_off[k + 1]):
                    vals[t_j[t]] += t_a[t]
                used += 1
                k += 1
                enter = True
            else:
                for t in range(t_off[k], t_off[k + 1]):
                    vals[t_j[t]] -= t_a[t] * x[k]
                used -= x[k]
                x[k] = 0
                k -= 1
                if k < 0:
                    break
    if mode == 0:
        hist = np.cumsum(diff_arr[:maxdeg + 1])
        return [int(v) for v in hist]
    return pts_arr[:npts].copy()


def count_by_degree(A, int d, int64_t maxdeg, int64_t cap=-1):
    if d == 0:
        return [1] + [0] * maxdeg
    A = np.ascontiguousarray(A, dtype=np.int64).reshape(-1, d)
    if cap < 0:
        cap = 2 ** 62
    return _walk(A, d, maxdeg, 0, cap)


def enumerate_points(A, int d, int64_t maxdeg, int64_t cap=-1):
    if d == 0:
        return np.zeros((1, 0), dtype=np.int64)
    A = np.ascontiguousarray(A, dtype=np.int64).reshape(-1, d)
    if cap < 0:
        cap = 2 ** 62
    return _walk(A, d, maxdeg, 1, cap)


def adjacent_pairs(zero_words, pos, neg, int min_common):
    """``zero_words`` is a (rays x words) uint64 bitmask matrix."""
    cdef uint64_t[:, :] Z = np.ascontiguousarray(zero_words, dtype=np.uint64)
    cdef int64_t[:] P = np.ascontiguousarray(pos, dtype=np.int64)
    cdef int64_t[:] N = np.ascontiguousarray(neg, dtype=np.int64)
    cdef Py_ssize_t R = Z.shape[0], W = Z.shape[1]
    cdef Py_ssize_t ip, iq, r, w
    cdef int64_t p, q
    cdef int pc
    cdef bint ok, sup
    cdef uint64_t c
    cdef uint64_t[:] common = np.zeros(max(W, 1), dtype=np.uint64)
    cdef int64_t[:] pops = np.zeros(R, dtype=np.int64)
    for r in range(R):
        pc = 0
        for w in range(W):
            pc += popcount64(Z[r, w])
        pops[r] = pc
    out = []
    for ip in range(P.shape[0]):
        p = P[ip]
        for iq in range(N.shape[0]):
            q = N[iq]
            pc = 0
            for w in range(W):
                c = Z[p, w] & Z[q, w]
                common[w] = c
                pc += popcount64(c)
            if pc < min_common:
                continue
            ok = True
            for r in range(R):
                if r == p or r == q or pops[r] < pc:
                    continue
                sup = True
                for w in range(W):
                    if (Z[r, w] & common[w]) != common[w]:
                        sup = False
                        break
                if sup:
                    ok = False
                    break
            if ok:
                out.append((p, q))
    return out


def det_adj(M):
    """int64 fraction-free Gauss-Jordan; raises OverflowError past int64."""
    cdef cnp.ndarray[int64_t, ndim=2] Mi = np.ascontiguousarray(M, dtype=np.int64)
    cdef Py_ssize_t d = Mi.shape[0]
    cdef Py_ssize_t w = 2 * d
    cdef cnp.ndarray[int64_t, ndim=2] arr = np.zeros((d, w), dtype=np.int64)
    cdef int64_t[:, :] a = arr
    cdef Py_ssize_t i, j, k, piv
    cdef int64_t akk, aik, tmp, prev = 1
    cdef s128 num, q
    cdef s128 lim = <s128>9223372036854775807
    cdef int sign = 1
    for i in range(d):
        for j in range(d):
            a[i, j] = Mi[i, j]
        a[i, d + i] = 1
    for k in range(d):
        piv = k
        while piv < d and a[piv, k] == 0:
            piv += 1
        if piv == d:
            return 0, None
        if piv != k:
            for j in range(w):
                tmp = a[k, j]
                a[k, j] = a[piv, j]
                a[piv, j] = tmp
            sign = -sign
        akk = a[k, k]
        for i in range(d):
            if i == k:
                continue
            aik = a[i, k]
            for j in range(w):
                if j == k:
                    continue
                num = <s128>akk * a[i, j] - <s128>aik * a[k, j]
                q = num / prev
                if q > lim or q < -lim:
                    raise OverflowError("det_adj exceeded int64")
                a[i, j] = <int64_t>q
            a[i, k] = 0
        prev = akk
    X = arr[:, d:].copy()
    if sign < 0:
        return -int(prev), -X
    return int(prev), X

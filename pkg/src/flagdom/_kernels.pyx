# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: bitset subset search and subset-code extraction."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int popcount64(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef int lex_less(int64_t[:] a, int na, int64_t[:] b, int nb) nogil:
    cdef int i
    cdef int m = na if na < nb else nb
    for i in range(m):
        if a[i] != b[i]:
            return a[i] < b[i]
    return na < nb


def best_subset(masks, pool, int t):
    """Best (size, colour, subset) over subsets of ``pool`` with 1..t elements.

    Same contract as the pure-Python fallback; needs at most 64 vertices.
    """
    cdef cnp.ndarray[cnp.uint64_t, ndim=2] m = np.ascontiguousarray(
        np.array([[int(x) for x in row] for row in masks], dtype=np.uint64))
    cdef cnp.ndarray[cnp.int64_t, ndim=1] p = np.array(sorted(int(v) for v in pool), dtype=np.int64)
    cdef int np_ = p.shape[0]
    cdef int tt = t if t < np_ else np_
    cdef cnp.ndarray[cnp.int64_t, ndim=1] idx = np.zeros(max(tt, 1), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] cur = np.zeros(max(tt, 1), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] best = np.zeros(max(tt, 1), dtype=np.int64)
    cdef int best_n = 0, best_size = -1, best_c = 0
    cdef int c, s, i, j, size
    cdef uint64_t acc
    cdef int64_t[:] cur_v = cur
    cdef int64_t[:] best_v = best
    if tt == 0:
        return 0, 1, ()
    for c in range(3):
        for s in range(1, tt + 1):
            for i in range(s):
                idx[i] = i
            while True:
                acc = 0
                for i in range(s):
                    cur[i] = p[idx[i]]
                    acc |= m[c, cur[i]]
                size = popcount64(acc)
                if size > best_size or (size == best_size and c == best_c and lex_less(cur_v, s, best_v, best_n)):
                    best_size = size
                    best_c = c
                    best_n = s
                    for i in range(s):
                        best[i] = cur[i]
                # next combination in lexicographic order
                i = s - 1
                while i >= 0 and idx[i] == np_ - s + i:
                    i -= 1
                if i < 0:
                    break
                idx[i] += 1
                for j in range(i + 1, s):
                    idx[j] = idx[j - 1] + 1
    result = []
    for i in range(best_n):
        result.append(int(best[i]))
    return best_size, best_c + 1, tuple(result)


def subset_codes(colmat, subsets):
    """Base-3 class code (first edge least significant) of each vertex subset."""
    cdef cnp.ndarray[cnp.uint8_t, ndim=2] cm = np.ascontiguousarray(colmat, dtype=np.uint8)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] sb = np.ascontiguousarray(subsets, dtype=np.int64)
    cdef Py_ssize_t n = sb.shape[0], r, a, b
    cdef int k = sb.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(n, dtype=np.int64)
    cdef int64_t code, mult
    with nogil:
        for r in range(n):
            code = 0
            mult = 1
            for a in range(k):
                for b in range(a + 1, k):
                    code += (cm[sb[r, a], sb[r, b]] - 1) * mult
                    mult *= 3
            out[r] = code
    return out

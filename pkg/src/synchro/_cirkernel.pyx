# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled refinement kernel: the fast twin of synchro._cirkernel_py.

Same contract as the pure kernel: identical colorings, ranks and operation
counts. The per-row signature buffer and the dedup keys are handled in C;
combine-memo misses call back into Python for the real monoid operation.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdlib cimport free, malloc
from libc.string cimport memset

import numpy as np

KERNEL_NAME = "compiled"


def cir_iteration_codes(p_old, int r_old, indptr, cols, wcodes, dict memo, combine):
    """One refinement sweep over integer-coded rows; see the pure twin."""
    cdef int[:] po = p_old
    cdef int[:] ip = indptr
    cdef int[:] co = cols
    cdef int[:] wc = wcodes
    cdef Py_ssize_t n = po.shape[0]

    p_new_arr = np.empty(n, dtype=np.int32)
    cdef int[:] pn = p_new_arr

    cdef int width = r_old + 1
    cdef int* v = <int*> malloc(sizeof(int) * width)
    if v == NULL:
        raise MemoryError()

    cdef dict table = {}
    cdef int r_new = 0
    cdef long long ops = 0
    cdef Py_ssize_t r, e
    cdef int k, a, b, lo, hi
    cdef object pair, c, key, idx

    try:
        for r in range(n):
            memset(v, 0, sizeof(int) * width)
            v[0] = po[r]
            lo = ip[r]
            hi = ip[r + 1]
            for e in range(lo, hi):
                k = po[co[e]] + 1
                a = v[k]
                b = wc[e]
                if a == 0:
                    v[k] = b
                else:
                    pair = (a, b) if a <= b else (b, a)
                    c = memo.get(pair)
                    if c is None:
                        c = combine(a, b)
                        memo[pair] = c
                    v[k] = <int> c
            ops += width + (hi - lo)
            key = PyBytes_FromStringAndSize(<char*> v, sizeof(int) * width)
            idx = table.get(key)
            if idx is None:
                table[key] = r_new
                pn[r] = r_new
                r_new += 1
            else:
                pn[r] = <int> idx
    finally:
        free(v)
    return p_new_arr, r_new, int(ops)

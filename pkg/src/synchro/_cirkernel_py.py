"""Pure-Python refinement kernel: the fallback twin of synchro._cirkernel.

Both kernels take the same arguments and must produce identical colorings,
ranks and operation counts; the compiled one only goes faster.
"""
from __future__ import annotations

import numpy as np

KERNEL_NAME = "pure"


def cir_iteration_codes(p_old, r_old, indptr, cols, wcodes, memo, combine):
    """One refinement sweep over integer-coded rows.

    Splits every color class by the (old color, per-color weight sums) key of
    its rows. ``p_old`` is a 0-based int32 coloring; returns
    ``(p_new, r_new, ops)`` where ops counts touched signature slots plus
    visited edges -- the |C|*(rank+1) + |E| work of one sweep.
    """
    n = int(p_old.shape[0])
    po = p_old.tolist()
    ip = indptr.tolist()
    co = cols.tolist()
    wc = wcodes.tolist()
    p_new = np.empty(n, dtype=np.int32)
    table: dict[tuple, int] = {}
    r_new = 0
    ops = 0
    width = r_old + 1
    for r in range(n):
        v = [0] * width
        v[0] = po[r]
        lo, hi = ip[r], ip[r + 1]
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
                v[k] = c
        ops += width + (hi - lo)
        key = tuple(v)
        idx = table.get(key)
        if idx is None:
            table[key] = r_new
            p_new[r] = r_new
            r_new += 1
        else:
            p_new[r] = idx
    return p_new, r_new, ops

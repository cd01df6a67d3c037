"""Integer-coded sparse view of a network for the refinement kernels.

Every distinct (monoid, element) pair appearing in a network is interned
to a dense integer code; code 0 always stands for "no edge", i.e. the
identity of whichever monoid a signature slot lives in. Slots are only
ever compared within one column of the weighted adjacency structure, and
one column lives in one monoid, so sharing code 0 across monoids can
never make unequal values look equal.

Code equality is exactly element equality, which is what lets the hot
refinement loop (and balance checking) run on plain ints. The pairwise
combine results are memoized; a memo miss falls back to the real monoid
operation and interns the result.
"""
from __future__ import annotations

import numpy as np

from .network import Network


class CodedNetwork:
    """CSR-style arrays of the non-identity entries plus the intern pool."""

    __slots__ = (
        "n",
        "n_edges",
        "types",
        "indptr",
        "cols",
        "wcodes",
        "_pool",
        "_specs",
        "_values",
        "memo",
    )

    def __init__(self, net: Network):
        self.n = net.n
        self.types = np.asarray(net.cell_types, dtype=np.int32)
        self._pool: dict[tuple, int] = {}
        self._specs: list = [None]  # spec per code; index 0 is the shared identity
        self._values: list = [None]
        self.memo: dict[tuple[int, int], int] = {}

        indptr = [0]
        cols: list[int] = []
        wcodes: list[int] = []
        for c in range(net.n):
            i = net.cell_types[c]
            for d, weight in net.row_items(c):
                spec = net.registry.require(i, net.cell_types[d])
                cols.append(d)
                wcodes.append(self.code(spec, weight))
            indptr.append(len(cols))
        self.indptr = np.asarray(indptr, dtype=np.int32)
        self.cols = np.asarray(cols, dtype=np.int32)
        self.wcodes = np.asarray(wcodes, dtype=np.int32)
        self.n_edges = len(cols)

    def code(self, spec, value) -> int:
        """Intern a carrier value; identities of every monoid map to 0."""
        if value == spec.identity:
            return 0
        key = (spec.key(), spec.encode(value))
        code = self._pool.get(key)
        if code is None:
            code = len(self._values)
            self._pool[key] = code
            self._specs.append(spec)
            self._values.append(value)
        return code

    def decode(self, code: int, spec=None):
        """The carrier value behind a code; 0 decodes to the slot's identity."""
        if code == 0:
            return spec.identity if spec is not None else None
        return self._values[code]

    def combine_codes(self, a: int, b: int) -> int:
        """Callback for the kernels on a combine-memo miss."""
        if a == 0:
            return b
        if b == 0:
            return a
        spec = self._specs[a]
        return self.code(spec, spec.combine(self._values[a], self._values[b]))

    def row_signature_codes(self, p0: np.ndarray, rank: int, row: int) -> tuple[int, ...]:
        """Per-color combined weight codes of one row under a 0-based coloring."""
        v = [0] * rank
        memo = self.memo
        combine = self.combine_codes
        for e in range(self.indptr[row], self.indptr[row + 1]):
            k = int(p0[self.cols[e]])
            a = v[k]
            b = int(self.wcodes[e])
            if a == 0:
                v[k] = b
            else:
                key = (a, b) if a <= b else (b, a)
                c = memo.get(key)
                if c is None:
                    c = combine(a, b)
                    memo[key] = c
                v[k] = c
        return tuple(v)


def coded(net: Network) -> CodedNetwork:
    """The per-network coded view, built once and cached on the network."""
    view = net._coded
    if view is None:
        view = CodedNetwork(net)
        net._coded = view
    return view

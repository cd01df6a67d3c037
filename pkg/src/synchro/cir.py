"""Coarsest invariant refinement: the balanced partition finer than a seed.

Starting from a seed coloring, each sweep splits every color class by the
per-color parallel sums of its rows, keyed on (old color, sums) through a
hash table. Ranks strictly increase until one confirming sweep leaves the
coloring unchanged; the fixed point is balanced and is the coarsest
balanced partition finer than the seed.

The sweep itself runs in a kernel operating on interned integer codes.
A compiled kernel is used when the extension module is importable; set
SYNCHRO_PURE=1 to force the pure-Python twin. Both produce identical
results, including operation counts.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

from . import _cirkernel_py
from .coding import coded
from .errors import PartitionError
from .network import Network
from .partition import Partition, is_finer

if os.environ.get("SYNCHRO_PURE", "") not in ("", "0"):
    _kernel = _cirkernel_py
else:
    try:
        from . import _cirkernel as _kernel  # type: ignore[attr-defined]
    except ImportError:
        _kernel = _cirkernel_py


def kernel_name() -> str:
    """Which refinement kernel is active: "compiled" or "pure"."""
    return _kernel.KERNEL_NAME


@dataclass(frozen=True)
class CirTrace:
    """Everything one refinement run did.

    ``iterations`` records the output of every sweep including the final
    confirming one, so ranks strictly increase and then repeat once;
    ``refining_iterations`` is the count the convergence bound
    |C| - rank(seed) applies to.
    """

    seed: Partition
    iterations: tuple[tuple[Partition, int], ...]
    ops: tuple[int, ...]

    @property
    def converged(self) -> Partition:
        return self.iterations[-1][0]

    @property
    def refining_iterations(self) -> int:
        return len(self.iterations) - 1

    @property
    def total_ops(self) -> int:
        return sum(self.ops)


def _require_below_types(net: Network, partition: Partition) -> None:
    if len(partition) != net.n:
        raise PartitionError(
            f"partition covers {len(partition)} cells, network has {net.n}"
        )
    if not is_finer(partition, net.type_partition()):
        raise PartitionError("partition mixes cells of different types")


def _iterate(view, p0, r_old: int, kernel):
    return kernel.cir_iteration_codes(
        p0, r_old, view.indptr, view.cols, view.wcodes, view.memo, view.combine_codes
    )


def cir_iteration(net: Network, partition: Partition) -> Partition:
    """One refinement sweep; balanced inputs are fixed points."""
    _require_below_types(net, partition)
    view = coded(net)
    p_new, _, _ = _iterate(view, partition.as_array0(), partition.rank, _kernel)
    return Partition.from_colors(int(c) + 1 for c in p_new)


def _cir_with_kernel(net: Network, seed: Partition, kernel) -> CirTrace:
    _require_below_types(net, seed)
    view = coded(net)
    p = seed.as_array0()
    r = seed.rank
    iterations: list[tuple[Partition, int]] = []
    ops: list[int] = []
    while True:
        p_new, r_new, sweep_ops = _iterate(view, p, r, kernel)
        part = Partition.from_colors(int(c) + 1 for c in p_new)
        iterations.append((part, r_new))
        ops.append(sweep_ops)
        if r_new == r:
            break
        p, r = p_new, r_new
    return CirTrace(seed=seed, iterations=tuple(iterations), ops=tuple(ops))


def cir(net: Network, seed: Partition) -> CirTrace:
    """Refine ``seed`` to the coarsest balanced partition finer than it."""
    return _cir_with_kernel(net, seed, _kernel)


def top(net: Network) -> Partition:
    """The maximal balanced partition: refinement of the type partition."""
    return cir(net, net.type_partition()).converged

"""Deciding balance and building quotient networks.

A coloring is balanced when same-colored cells receive, color by color,
equal parallel sums of incoming weights. Equality is decided on interned
integer codes, so it is exact for every shipped monoid. The quotient of a
network over a balanced coloring is the smaller network whose row for a
color is the shared per-color sum vector of that color's cells.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cir import _kernel, _iterate
from .coding import coded
from .errors import NotBalancedError, PartitionError
from .network import Network
from .partition import Partition, compose, is_finer


@dataclass(frozen=True)
class RowSignature:
    """Per-color parallel sums of one cell's incoming weights.

    ``sums[k]`` is the merged weight arriving from color k+1; None marks a
    column whose type pair has no registered monoid (no such edges can
    exist, so nothing distinguishes the cells there).
    """

    cell: str
    owner_color: int
    sums: tuple


@dataclass(frozen=True)
class BalanceResult:
    balanced: bool
    counterexample: tuple[str, str, int] | None = None  # (cell, cell, color)


@dataclass(frozen=True)
class QuotientResult:
    """A quotient network plus the coloring that produced it."""

    quotient: Network
    relation: Partition
    color_cells: tuple[str, ...]  # quotient cell id per color, in color order


def _require_below_types(net: Network, partition: Partition) -> None:
    if len(partition) != net.n:
        raise PartitionError(
            f"partition covers {len(partition)} cells, network has {net.n}"
        )
    if not is_finer(partition, net.type_partition()):
        raise PartitionError("partition mixes cells of different types")


def _color_types(net: Network, partition: Partition) -> list[int]:
    """Cell type index of each color (well defined below the type partition)."""
    first = [None] * partition.rank
    for idx, c in enumerate(partition.colors):
        if first[c - 1] is None:
            first[c - 1] = net.cell_types[idx]
    return first  # type: ignore[return-value]


def row_signature(net: Network, partition: Partition, cell: str) -> RowSignature:
    """The per-color weight sums of one row; the trivial coloring gives the row itself."""
    _require_below_types(net, partition)
    view = coded(net)
    row = net.index(cell)
    codes = view.row_signature_codes(partition.as_array0(), partition.rank, row)
    ctypes = _color_types(net, partition)
    i = net.cell_types[row]
    sums = []
    for k, code in enumerate(codes):
        spec = net.registry.get(i, ctypes[k])
        sums.append(view.decode(code, spec))
    return RowSignature(cell=cell, owner_color=partition.colors[row], sums=tuple(sums))


def is_balanced(net: Network, partition: Partition) -> BalanceResult:
    """Decide balance; on failure report the first offending cell pair.

    The counterexample is the first (in cell order) pair of same-colored
    cells whose sum vectors differ, together with the 1-based color where
    they first disagree.
    """
    _require_below_types(net, partition)
    view = coded(net)
    p0 = partition.as_array0()
    p_new, _, _ = _iterate(view, p0, partition.rank, _kernel)
    rep_new: dict[int, int] = {}
    rep_cell: dict[int, int] = {}
    for idx in range(net.n):
        old = int(p0[idx])
        new = int(p_new[idx])
        if old not in rep_new:
            rep_new[old] = new
            rep_cell[old] = idx
        elif rep_new[old] != new:
            c = rep_cell[old]
            sig_c = view.row_signature_codes(p0, partition.rank, c)
            sig_d = view.row_signature_codes(p0, partition.rank, idx)
            color = next(k + 1 for k in range(partition.rank) if sig_c[k] != sig_d[k])
            return BalanceResult(
                balanced=False,
                counterexample=(net.cells[c], net.cells[idx], color),
            )
    return BalanceResult(balanced=True)


def _merged_id(members) -> str:
    """Canonical id of a merged cell: sorted flattened member parts.

    Sorting after splitting on "+" makes a quotient of a quotient produce
    the same ids as the single quotient over the composed coloring.
    """
    parts: list[str] = []
    for m in members:
        parts.extend(m.split("+"))
    return "+".join(sorted(parts))


def quotient(net: Network, partition: Partition) -> QuotientResult:
    """The network on color classes; raises NotBalancedError with a witness pair."""
    result = is_balanced(net, partition)
    if not result.balanced:
        raise NotBalancedError(result.counterexample)
    view = coded(net)
    p0 = partition.as_array0()
    classes = partition.classes()
    color_cells = tuple(_merged_id(net.cells[i] for i in cls) for cls in classes)
    ctypes = _color_types(net, partition)
    cell_types = [net.type_names[t] for t in ctypes]

    edges = []
    for k, cls in enumerate(classes):
        rep = cls[0]
        codes = view.row_signature_codes(p0, partition.rank, rep)
        i = net.cell_types[rep]
        for l, code in enumerate(codes):
            if code == 0:
                continue
            spec = net.registry.require(i, ctypes[l])
            edges.append((color_cells[k], color_cells[l], view.decode(code, spec)))

    q = Network.build(color_cells, cell_types, net.type_names, net.registry, edges)
    return QuotientResult(quotient=q, relation=partition, color_cells=color_cells)


def quotient_relation_holds(net: Network, qres: QuotientResult) -> bool:
    """Entrywise check that every cell's sum vector equals its color's quotient row."""
    partition = qres.relation
    q = qres.quotient
    for idx, cell in enumerate(net.cells):
        sig = row_signature(net, partition, cell)
        k = partition.colors[idx]
        for l in range(partition.rank):
            expected = q.entry(qres.color_cells[k - 1], qres.color_cells[l])
            got = sig.sums[l]
            if not (expected == got or (expected is None and got is None)):
                return False
    return True


@dataclass(frozen=True)
class TransitivityReport:
    ok: bool
    via_two_steps: Network
    direct: Network
    composed: Partition


def check_transitivity(net: Network, first: Partition, second: Partition) -> TransitivityReport:
    """Quotient twice versus quotient once by the composed coloring.

    ``second`` colors the quotient cells of ``quotient(net, first)``. Both
    routes must give the same network cell-for-cell; quotient ids compose
    to identical strings by construction.
    """
    step1 = quotient(net, first)
    step2 = quotient(step1.quotient, second)
    combined = compose(first, second)
    direct = quotient(net, combined)
    return TransitivityReport(
        ok=step2.quotient == direct.quotient,
        via_two_steps=step2.quotient,
        direct=direct.quotient,
        composed=combined,
    )

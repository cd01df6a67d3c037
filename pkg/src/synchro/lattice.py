"""The lattice of balanced partitions: join, meet, full enumeration.

All balanced colorings of a network form a lattice under refinement. The
join merges classes through chains across the two inputs (a union-find
pass) and is provably balanced; the meet refines the common refinement of
the inputs back to a balanced coloring. Enumeration walks down from the
maximal balanced partition, refining every single-class bipartition --
exhaustive search over all set partitions is kept as the oracle for small
instances.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

import numpy as np

from .balance import is_balanced
from .cir import _iterate, _kernel, cir, top
from .coding import coded
from .errors import NotBalancedError, SizeLimitError
from .network import Network
from .partition import Partition, common_refinement, format_partition, is_finer

DEFAULT_BUDGET = 100_000


class _UnionFind:
    """Disjoint sets over 0..n-1 with path compression."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[rj] = ri


def _require_balanced(net: Network, partition: Partition, side: str) -> None:
    result = is_balanced(net, partition)
    if not result.balanced:
        raise NotBalancedError(
            result.counterexample, f"{side} partition is not balanced"
        )


def join(net: Network, a: Partition, b: Partition) -> Partition:
    """Least upper bound: merge cells connected by chains through a or b."""
    _require_balanced(net, a, "first")
    _require_balanced(net, b, "second")
    uf = _UnionFind(net.n)
    for part in (a, b):
        first_of: dict[int, int] = {}
        for idx, color in enumerate(part.colors):
            if color in first_of:
                uf.union(first_of[color], idx)
            else:
                first_of[color] = idx
    result = Partition.from_colors(uf.find(i) for i in range(net.n))
    if not is_balanced(net, result).balanced:
        raise AssertionError(
            "join of balanced partitions came out unbalanced; this is a bug, "
            "not a property of the input"
        )
    return result


def meet(net: Network, a: Partition, b: Partition) -> Partition:
    """Greatest lower bound: refine the common refinement until balanced."""
    _require_balanced(net, a, "first")
    _require_balanced(net, b, "second")
    return cir(net, common_refinement(a, b)).converged


def _set_partitions(items: list[int]):
    """All set partitions of ``items`` as lists of classes (Bell-many)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in _set_partitions(rest):
        for i in range(len(sub)):
            yield sub[:i] + [[first] + sub[i]] + sub[i + 1 :]
        yield [[first]] + sub


def brute_force_balanced(net: Network, limit: int = 12) -> set[Partition]:
    """Oracle enumeration: test every partition below the type partition.

    Candidates are products of set partitions of each type class, so the
    count is a product of Bell numbers; refuses networks above ``limit``
    cells.
    """
    if net.n > limit:
        raise SizeLimitError(
            f"brute force enumeration limited to {limit} cells, network has {net.n}"
        )
    view = coded(net)
    type_classes = net.type_partition().classes()
    balanced: set[Partition] = set()
    per_block = [list(_set_partitions(cls)) for cls in type_classes]
    for blocks in product(*per_block):
        classes = [cls for block in blocks for cls in block]
        partition = Partition.from_classes(classes, net.n)
        p0 = partition.as_array0()
        p_new, r_new, _ = _iterate(view, p0, partition.rank, _kernel)
        if r_new == partition.rank:
            balanced.add(partition)
    return balanced


def _bipartitions(cls: list[int]):
    """The 2^(k-1) - 1 proper two-way splits of one class."""
    k = len(cls)
    for mask in range(1, 1 << (k - 1)):
        left, right = [cls[0]], []
        for pos in range(1, k):
            if mask & (1 << (pos - 1)):
                right.append(cls[pos])
            else:
                left.append(cls[pos])
        yield left, right


@dataclass(frozen=True)
class BalancedLattice:
    """All balanced partitions plus the cover relation of refinement."""

    elements: tuple[Partition, ...]
    covers: tuple[tuple[int, int], ...]  # (finer index, coarser index)
    top: Partition
    bottom: Partition
    complete: bool

    def __contains__(self, partition: Partition) -> bool:
        return partition in set(self.elements)


COVER_LIMIT = 4096


def _hasse_covers(elements: list[Partition]) -> list[tuple[int, int]]:
    """Cover pairs (finer index, coarser index) of the refinement order.

    Left empty above COVER_LIMIT elements: the quadratic order relation and
    its transitive reduction stop being worth computing for lattices nobody
    can draw anyway.
    """
    n = len(elements)
    if n <= 1 or n > COVER_LIMIT:
        return []
    size = len(elements[0])
    mat = np.asarray([p.colors for p in elements], dtype=np.int32)
    below = np.zeros((n, n), dtype=bool)
    for i, p in enumerate(elements):
        first: dict[int, int] = {}
        rep = [0] * size
        for c, color in enumerate(p.colors):
            if color not in first:
                first[color] = c
            rep[c] = first[color]
        # i is finer than j iff partition j is constant on every class of i
        below[i] = (mat == mat[:, rep]).all(axis=1)
    np.fill_diagonal(below, False)
    reach = below.astype(np.float32)
    two_step = (reach @ reach) > 0.5
    covers = below & ~two_step
    return [(int(i), int(j)) for i, j in np.argwhere(covers)]


def enumerate_balanced(net: Network, budget: int = DEFAULT_BUDGET) -> BalancedLattice:
    """Walk the lattice top-down by splitting one class at a time.

    Every child of a known balanced partition is seeded as "split one class
    in two, keep the rest" and refined back to balanced; repeating to a
    fixed point finds the whole lattice. A budget guards the worst case
    where essentially every partition is balanced; exceeding it returns the
    partial set flagged ``complete=False``.
    """
    maximal = top(net)
    seen: set[Partition] = {maximal}
    frontier = [maximal]
    complete = True
    while frontier:
        next_frontier = []
        for parent in frontier:
            classes = parent.classes()
            for ci, cls in enumerate(classes):
                if len(cls) < 2:
                    continue
                for left, right in _bipartitions(cls):
                    seeded = classes[:ci] + [left, right] + classes[ci + 1 :]
                    seed = Partition.from_classes(seeded, net.n)
                    found = cir(net, seed).converged
                    if found not in seen:
                        seen.add(found)
                        next_frontier.append(found)
                        if len(seen) > budget:
                            complete = False
                            next_frontier = []
                            frontier = []
                            break
                if not complete:
                    break
            if not complete:
                break
        frontier = next_frontier

    elements = sorted(seen, key=lambda p: (p.rank, p.colors))
    return BalancedLattice(
        elements=tuple(elements),
        covers=tuple(_hasse_covers(elements)),
        top=maximal,
        bottom=Partition.trivial(net.n),
        complete=complete,
    )


def lattice_to_json(lat: BalancedLattice, cells) -> dict:
    return {
        "elements": [format_partition(p, cells) for p in lat.elements],
        "covers": [list(pair) for pair in lat.covers],
        "complete": lat.complete,
    }


def lattice_json(lat: BalancedLattice, cells, pretty: bool = False) -> str:
    obj = lattice_to_json(lat, cells)
    if pretty:
        return json.dumps(obj, indent=2) + "\n"
    return json.dumps(obj, separators=(",", ":"))


def lattice_dot(lat: BalancedLattice, cells) -> str:
    """Hasse diagram, finer partitions below coarser ones."""
    lines = ["digraph lattice {", "  rankdir=BT;"]
    for idx, p in enumerate(lat.elements):
        label = format_partition(p, cells).replace('"', '\\"')
        lines.append(f'  n{idx} [shape=box, label="{label}"];')
    for i, j in lat.covers:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"

"""Networks of typed cells with a monoid-valued in-adjacency matrix.

A network is immutable once built: cells (string ids), a type per cell,
a monoid registry per ordered type pair, and for every ordered cell pair
(target, source) the parallel sum of all edges from source into target.
Absent pairs mean the identity ("no edge"); only non-identity entries are
stored, so iteration over in-neighborhoods is proportional to the number
of edges.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import MonoidMismatch, PartitionError, SchemaError
from .monoid import MonoidRegistry, MonoidSpec, spec_from_json
from .partition import Partition


@dataclass(frozen=True)
class RowView:
    """The in-edges of one cell: (source cell id, merged weight) pairs."""

    cell: str
    entries: tuple[tuple[str, object], ...]


class Network:
    """Immutable weighted multi-edge network over a family of monoids."""

    __slots__ = ("cells", "type_names", "cell_types", "registry", "_rows", "_index", "_coded")

    def __init__(self, cells, type_names, cell_types, registry, rows):
        self.cells: tuple[str, ...] = tuple(cells)
        self.type_names: tuple[str, ...] = tuple(type_names)
        self.cell_types: tuple[int, ...] = tuple(cell_types)  # 0-based indices
        self.registry: MonoidRegistry = registry
        self._rows: tuple[dict[int, object], ...] = tuple(dict(r) for r in rows)
        self._index = {cell: i for i, cell in enumerate(self.cells)}
        self._coded = None

    @classmethod
    def build(cls, cells, cell_types, type_names, registry: MonoidRegistry, edges) -> "Network":
        """Construct a network from an edge list.

        ``edges`` holds (target id, source id, weight) triples; repeated
        (target, source) pairs merge by the parallel sum of their monoid.
        """
        cells = [str(c) for c in cells]
        if not cells:
            raise SchemaError("network must have >=1 cell")
        if len(set(cells)) != len(cells):
            dupes = sorted({c for c in cells if cells.count(c) > 1})
            raise SchemaError(f"duplicate cell ids: {dupes}")
        type_names = [str(t) for t in type_names]
        if not type_names or len(set(type_names)) != len(type_names):
            raise SchemaError("type names must be nonempty and unique")
        name_to_idx = {name: i for i, name in enumerate(type_names)}
        cell_types = list(cell_types)
        if len(cell_types) != len(cells):
            raise SchemaError("need exactly one type per cell")
        type_idx = []
        for cell, tname in zip(cells, cell_types):
            if tname not in name_to_idx:
                raise SchemaError(f"cell {cell!r} has unknown type {tname!r}")
            type_idx.append(name_to_idx[tname])

        index = {cell: i for i, cell in enumerate(cells)}
        rows: list[dict[int, object]] = [dict() for _ in cells]
        for target, source, weight in edges:
            if target not in index:
                raise SchemaError(f"edge targets unknown cell {target!r}")
            if source not in index:
                raise SchemaError(f"edge comes from unknown cell {source!r}")
            c, d = index[target], index[source]
            spec = registry.get(type_idx[c], type_idx[d])
            if spec is None:
                raise SchemaError(
                    f"no monoid registered for edges {type_names[type_idx[d]]!r} -> "
                    f"{type_names[type_idx[c]]!r} (edge {source!r} -> {target!r})"
                )
            if not spec.contains(weight):
                raise MonoidMismatch(
                    f"edge {source!r} -> {target!r}: weight {weight!r} is not in "
                    f"{spec.describe()}"
                )
            row = rows[c]
            if d in row:
                row[d] = spec.combine(row[d], weight)
            else:
                row[d] = weight
        for c, row in enumerate(rows):
            for d in [d for d, w in row.items() if registry.require(type_idx[c], type_idx[d]).is_identity(w)]:
                del row[d]  # merged to "no edge"
        return cls(cells, type_names, type_idx, registry, rows)

    # -- basic queries ------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.cells)

    def index(self, cell: str) -> int:
        try:
            return self._index[cell]
        except KeyError:
            raise SchemaError(f"unknown cell {cell!r}") from None

    def type_pair(self, c: int, d: int) -> tuple[int, int]:
        return self.cell_types[c], self.cell_types[d]

    def spec_for(self, c: int, d: int) -> MonoidSpec | None:
        return self.registry.get(self.cell_types[c], self.cell_types[d])

    def entry(self, target: str, source: str):
        """Merged weight from source into target; identity when no edge."""
        c, d = self.index(target), self.index(source)
        row = self._rows[c]
        if d in row:
            return row[d]
        spec = self.spec_for(c, d)
        return spec.identity if spec is not None else None

    def row_items(self, c: int):
        """Non-identity entries of row ``c`` as (source index, weight) pairs."""
        return sorted(self._rows[c].items())

    def row_view(self, cell: str) -> RowView:
        c = self.index(cell)
        return RowView(cell, tuple((self.cells[d], w) for d, w in self.row_items(c)))

    def in_neighborhood(self, cell: str) -> set[str]:
        """Cells with a non-identity merged weight into ``cell``."""
        c = self.index(cell)
        return {self.cells[d] for d in self._rows[c]}

    def edge_count(self) -> int:
        return sum(len(r) for r in self._rows)

    def type_partition(self) -> Partition:
        return Partition.from_colors(t + 1 for t in self.cell_types)

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return (
            self.cells == other.cells
            and self.type_names == other.type_names
            and self.cell_types == other.cell_types
            and self.registry == other.registry
            and self._rows == other._rows
        )

    def __repr__(self):
        return f"Network({self.n} cells, {self.edge_count()} merged edges)"


def in_neighborhood(net: Network, cell: str) -> set[str]:
    return net.in_neighborhood(cell)


# -- JSON wire format -------------------------------------------------------
#
# { "types": [...names], "cells": [{"id","type"}...],
#   "monoids": [{"target_type","source_type","kind",...params}],
#   "edges": [{"to","from","weight": <tagged element>}] }


def network_from_json(obj) -> Network:
    if not isinstance(obj, dict):
        raise SchemaError("network document must be a JSON object")
    for field in ("types", "cells", "monoids", "edges"):
        if field not in obj:
            raise SchemaError(f"missing top-level field {field!r}")
        if not isinstance(obj[field], list):
            raise SchemaError(f"field {field!r} must be a list")

    type_names = obj["types"]
    if not all(isinstance(t, str) for t in type_names):
        raise SchemaError("'types' must be a list of strings")
    if not type_names:
        raise SchemaError("'types' must not be empty")
    name_to_idx = {name: i for i, name in enumerate(type_names)}

    cells, cell_types = [], []
    for pos, entry in enumerate(obj["cells"]):
        if not isinstance(entry, dict) or set(entry) != {"id", "type"}:
            raise SchemaError(f"cells[{pos}] must be {{\"id\", \"type\"}}")
        if not isinstance(entry["id"], str) or not isinstance(entry["type"], str):
            raise SchemaError(f"cells[{pos}]: id and type must be strings")
        cells.append(entry["id"])
        cell_types.append(entry["type"])
    if not cells:
        raise SchemaError("network must have >=1 cell")

    table: dict[tuple[int, int], MonoidSpec] = {}
    for pos, entry in enumerate(obj["monoids"]):
        if not isinstance(entry, dict):
            raise SchemaError(f"monoids[{pos}] must be an object")
        entry = dict(entry)
        try:
            tt = entry.pop("target_type")
            st = entry.pop("source_type")
        except KeyError as exc:
            raise SchemaError(f"monoids[{pos}] misses {exc.args[0]!r}") from None
        if tt not in name_to_idx or st not in name_to_idx:
            raise SchemaError(f"monoids[{pos}]: unknown type in pair ({tt!r}, {st!r})")
        pair = (name_to_idx[tt], name_to_idx[st])
        if pair in table:
            raise SchemaError(f"monoids[{pos}]: duplicate entry for pair ({tt!r}, {st!r})")
        try:
            table[pair] = spec_from_json(entry)
        except SchemaError as exc:
            raise SchemaError(f"monoids[{pos}]: {exc}") from None
    registry = MonoidRegistry(table)

    cell_pos = {cell: pos for pos, cell in enumerate(cells)}
    edges = []
    for pos, entry in enumerate(obj["edges"]):
        if not isinstance(entry, dict) or set(entry) != {"to", "from", "weight"}:
            raise SchemaError(f"edges[{pos}] must be {{\"to\", \"from\", \"weight\"}}")
        target, source = entry["to"], entry["from"]
        if target not in cell_pos:
            raise SchemaError(f"edges[{pos}]: unknown target cell {target!r}")
        if source not in cell_pos:
            raise SchemaError(f"edges[{pos}]: unknown source cell {source!r}")
        t_name = cell_types[cell_pos[target]]
        s_name = cell_types[cell_pos[source]]
        spec = registry.get(name_to_idx[t_name], name_to_idx[s_name])
        if spec is None:
            raise SchemaError(
                f"edges[{pos}]: no monoid declared for pair ({t_name!r}, {s_name!r})"
            )
        try:
            weight = spec.element_from_json(entry["weight"])
        except SchemaError as exc:
            raise SchemaError(f"edges[{pos}].weight: {exc}") from None
        edges.append((target, source, weight))

    return Network.build(cells, cell_types, type_names, registry, edges)


def parse_network(text: str) -> Network:
    """Parse the JSON wire format; errors carry the offending field."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return network_from_json(obj)


def network_to_json(net: Network) -> dict:
    monoids = []
    for (i, j), spec in net.registry.pairs():
        entry = {"target_type": net.type_names[i], "source_type": net.type_names[j]}
        entry.update(spec.to_json())
        monoids.append(entry)
    edges = []
    for c in range(net.n):
        i = net.cell_types[c]
        for d, weight in net.row_items(c):
            spec = net.registry.require(i, net.cell_types[d])
            edges.append(
                {
                    "to": net.cells[c],
                    "from": net.cells[d],
                    "weight": spec.element_to_json(weight),
                }
            )
    return {
        "types": list(net.type_names),
        "cells": [
            {"id": cell, "type": net.type_names[t]}
            for cell, t in zip(net.cells, net.cell_types)
        ],
        "monoids": monoids,
        "edges": edges,
    }


def serialize_network(net: Network, pretty: bool = False) -> str:
    obj = network_to_json(net)
    if pretty:
        return json.dumps(obj, indent=2) + "\n"
    return json.dumps(obj, separators=(",", ":"))


# -- GraphViz export --------------------------------------------------------

_SHAPES = ("circle", "box", "diamond", "hexagon", "ellipse", "trapezium")
_FILLS = (
    "#66c2a5", "#fc8d62", "#8da0cb", "#e78ac3", "#a6d854",
    "#ffd92f", "#e5c494", "#b3b3b3", "#80b1d3", "#fb8072",
)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(net: Network, coloring: Partition | None = None) -> str:
    """GraphViz digraph: node shape by cell type, fill by color class."""
    if coloring is not None and len(coloring) != net.n:
        raise PartitionError(
            f"coloring has {len(coloring)} entries for a {net.n}-cell network"
        )
    lines = ["digraph network {", "  rankdir=LR;"]
    for c, cell in enumerate(net.cells):
        shape = _SHAPES[net.cell_types[c] % len(_SHAPES)]
        if coloring is None:
            fill = _FILLS[0]
        else:
            fill = _FILLS[(coloring.colors[c] - 1) % len(_FILLS)]
        lines.append(
            f"  {_quote(cell)} [shape={shape}, style=filled, fillcolor={_quote(fill)}];"
        )
    for c in range(net.n):
        i = net.cell_types[c]
        for d, weight in net.row_items(c):
            spec = net.registry.require(i, net.cell_types[d])
            label = spec.display(weight)
            lines.append(
                f"  {_quote(net.cells[d])} -> {_quote(net.cells[c])} "
                f"[label={_quote(label)}];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"

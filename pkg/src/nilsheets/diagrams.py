"""Dynkin-type diagrams attached to a list of roots.

Nodes ``i`` and ``j`` are joined by ``<b_i, b_j^vee><b_j, b_i^vee>`` lines,
dotted when the scalar product is positive; a node is long (drawn black) when
its root is long.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .rootsystem import RootSystem

__all__ = ["DiagramSpec", "diagram_of", "parse_spec", "format_spec"]


@dataclass(frozen=True)
class DiagramSpec:
    node_count: int
    edges: frozenset = field(default_factory=frozenset)      # {(i, j, lines)} with i < j
    dotted: frozenset = field(default_factory=frozenset)     # {(i, j)}
    long_nodes: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        for i, j, k in self.edges:
            if not (0 <= i < j < self.node_count) or k not in (1, 2, 3):
                raise ValueError(f"bad edge {(i, j, k)}")
        lined = {(i, j) for i, j, _ in self.edges}
        if not set(self.dotted) <= lined:
            raise ValueError("dotted edge without lines")
        if any(not 0 <= v < self.node_count for v in self.long_nodes):
            raise ValueError("long node out of range")

    def lines(self) -> dict:
        return {(i, j): k for i, j, k in self.edges}

    def degree(self, v: int) -> int:
        return sum(1 for i, j, _ in self.edges if v in (i, j))


def diagram_of(rs: RootSystem, roots: Sequence[Sequence[int]]) -> DiagramSpec:
    """Diagram of a list of root coordinate vectors, nodes in list order."""
    edges, dotted = set(), set()
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            k = rs.pairing(roots[i], roots[j]) * rs.pairing(roots[j], roots[i])
            if k:
                edges.add((i, j, k))
                if rs.inner(roots[i], roots[j]) > 0:
                    dotted.add((i, j))
    long_nodes = {i for i, r in enumerate(roots) if rs.is_long(r)}
    return DiagramSpec(len(roots), frozenset(edges), frozenset(dotted), frozenset(long_nodes))


def parse_spec(text: str, node_count: int) -> DiagramSpec:
    """Parse ``"1-2:1d,2-3:2;long=3"`` (1-based nodes, ``d`` = dotted)."""
    text = text.strip()
    edge_part, _, long_part = text.partition(";")
    edges, dotted = set(), set()
    for tok in filter(None, (t.strip() for t in edge_part.split(","))):
        pair, _, k = tok.partition(":")
        a, b = (int(x) - 1 for x in pair.split("-"))
        dot = k.endswith("d")
        k = int(k.rstrip("d"))
        i, j = min(a, b), max(a, b)
        edges.add((i, j, k))
        if dot:
            dotted.add((i, j))
    longs = set()
    long_part = long_part.strip()
    if long_part:
        key, _, vals = long_part.partition("=")
        if key.strip() != "long":
            raise ValueError(f"bad spec {text!r}")
        longs = {int(v) - 1 for v in vals.split(",") if v.strip()}
    return DiagramSpec(node_count, frozenset(edges), frozenset(dotted), frozenset(longs))


def format_spec(spec: DiagramSpec) -> str:
    parts = []
    for i, j, k in sorted(spec.edges):
        parts.append(f"{i + 1}-{j + 1}:{k}{'d' if (i, j) in spec.dotted else ''}")
    longs = ",".join(str(v + 1) for v in sorted(spec.long_nodes))
    return ",".join(parts) + ";long=" + longs

"""Graphs of infinite-cyclic groups.

A :class:`GbsGraph` is the source of truth for a GBS group: every vertex
carries a copy of Z generated by ``a_v`` and every edge ``e: o -> t`` with
labels ``(p, q)`` glues ``a_o^p`` to ``a_t^q``.

Edge letters follow the Baumslag-Solitar convention: the letter ``e``
conjugates ``a_o^p`` onto ``a_t^q``, i.e. ``e a_o^p e^-1 = a_t^q``.  Read as
an edge path, the letter ``e`` therefore steps from the terminus ``t`` back
to the origin ``o`` and ``e^-1`` steps from ``o`` to ``t``.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    Disconnected,
    DuplicateName,
    GraphSyntaxError,
    LabelZero,
    UnknownVertex,
)

NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_NAME_RE = re.compile(rf"^{NAME}$")
_VERTEX_RE = re.compile(rf"^vertex\s+({NAME})$")
_BASE_RE = re.compile(rf"^base\s+({NAME})$")
_EDGE_RE = re.compile(
    rf"^edge\s+({NAME})\s*:\s*({NAME})\s*->\s*({NAME})\s*"
    r"\[\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\]$"
)

# A signed edge letter: (edge name, +1 or -1).
Letter = tuple[str, int]


@dataclass(frozen=True)
class Edge:
    name: str
    origin: str
    terminus: str
    label_origin: int
    label_terminus: int

    @property
    def is_loop(self) -> bool:
        return self.origin == self.terminus

    def step(self, sign: int) -> tuple[str, str]:
        """(from, to) vertices of the letter ``self^sign``."""
        if sign > 0:
            return self.terminus, self.origin
        return self.origin, self.terminus

    def entry_label(self, sign: int) -> int:
        """Label at the vertex reached by ``self^sign``.

        Powers of the vertex generator divisible by this label can be moved
        leftward across the letter.
        """
        return self.label_origin if sign > 0 else self.label_terminus

    def exit_label(self, sign: int) -> int:
        """Label at the vertex the letter ``self^sign`` leaves."""
        return self.label_terminus if sign > 0 else self.label_origin


@dataclass(frozen=True)
class GbsGraph:
    """Finite graph of infinite-cyclic groups.

    Construction checks names, endpoints and labels.  Connectivity is only
    enforced by :func:`parse_graph` and :func:`spanning_tree` so that
    :func:`validate_graph` can report on disconnected inputs.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = ()
    base: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if not self.vertices:
            raise GraphSyntaxError("graph has no vertices")
        seen = set()
        for name in (*self.vertices, *(e.name for e in self.edges)):
            if not _NAME_RE.match(name):
                raise GraphSyntaxError(f"invalid name {name!r}")
            if name in seen:
                raise DuplicateName(name)
            seen.add(name)
        for e in self.edges:
            for v in (e.origin, e.terminus):
                if v not in self.vertices:
                    raise UnknownVertex(v)
            if e.label_origin == 0 or e.label_terminus == 0:
                raise LabelZero(e.name)
        if self.base is None:
            object.__setattr__(self, "base", self.vertices[0])
        elif self.base not in self.vertices:
            raise UnknownVertex(self.base)

    @classmethod
    def build(cls, vertices, edges, base=None) -> GbsGraph:
        """Shorthand: ``edges`` as ``(name, o, t, p, q)`` tuples."""
        return cls(tuple(vertices), tuple(Edge(*e) for e in edges), base)

    @cached_property
    def edge_map(self) -> dict[str, Edge]:
        return {e.name: e for e in self.edges}

    def edge(self, name: str) -> Edge:
        return self.edge_map[name]

    def is_vertex(self, name: str) -> bool:
        return name in self._vertex_set

    def is_edge(self, name: str) -> bool:
        return name in self.edge_map

    @cached_property
    def _vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    @cached_property
    def letters_from(self) -> dict[str, tuple[Letter, ...]]:
        """Signed letters leaving each vertex, in declaration order."""
        out: dict[str, list[Letter]] = {v: [] for v in self.vertices}
        for e in self.edges:
            for sign in (1, -1):
                src, _ = e.step(sign)
                out[src].append((e.name, sign))
        return {v: tuple(ls) for v, ls in out.items()}

    def reachable(self) -> list[str]:
        seen = {self.base}
        order = [self.base]
        queue = deque([self.base])
        while queue:
            v = queue.popleft()
            for name, sign in self.letters_from[v]:
                _, w = self.edge_map[name].step(sign)
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    queue.append(w)
        return order

    @property
    def is_connected(self) -> bool:
        return len(self.reachable()) == len(self.vertices)

    @cached_property
    def tree(self) -> frozenset[str]:
        return frozenset(_bfs_tree(self)[0])

    @cached_property
    def tree_paths(self) -> dict[str, tuple[Letter, ...]]:
        """Letters of the tree path from the base to each vertex."""
        return _bfs_tree(self)[1]

    @cached_property
    def non_tree_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.edges if e.name not in self.tree)

    @property
    def betti(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [
                {"name": e.name, "from": e.origin, "to": e.terminus,
                 "labels": [str(e.label_origin), str(e.label_terminus)]}
                for e in self.edges
            ],
            "base": self.base,
        }

    def __str__(self) -> str:
        return serialize_graph(self)


def _bfs_tree(g: GbsGraph):
    tree: list[str] = []
    paths: dict[str, tuple[Letter, ...]] = {g.base: ()}
    queue = deque([g.base])
    while queue:
        v = queue.popleft()
        for e in g.edges:
            if e.is_loop or v not in (e.origin, e.terminus):
                continue
            w = e.terminus if v == e.origin else e.origin
            if w in paths:
                continue
            sign = -1 if v == e.origin else 1
            tree.append(e.name)
            paths[w] = paths[v] + ((e.name, sign),)
            queue.append(w)
    missing = [v for v in g.vertices if v not in paths]
    if missing:
        raise Disconnected(missing)
    return tree, paths


def spanning_tree(g: GbsGraph) -> frozenset[str]:
    """Breadth-first spanning tree rooted at the base.

    Vertices are expanded in queue order and edges scanned in declaration
    order, so the result depends only on the graph text.
    """
    return g.tree


def parse_graph(text: str) -> GbsGraph:
    vertices: list[str] = []
    edges: list[Edge] = []
    base = None
    base_line = None
    names: dict[str, int] = {}
    edge_lines: dict[str, int] = {}

    def claim(name, lineno):
        if name in names:
            raise DuplicateName(name, lineno)
        names[name] = lineno

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _VERTEX_RE.match(line):
            claim(m.group(1), lineno)
            vertices.append(m.group(1))
        elif m := _EDGE_RE.match(line):
            name, o, t, p, q = m.groups()
            claim(name, lineno)
            if int(p) == 0 or int(q) == 0:
                raise LabelZero(name, lineno)
            edges.append(Edge(name, o, t, int(p), int(q)))
            edge_lines[name] = lineno
        elif m := _BASE_RE.match(line):
            if base is not None:
                raise GraphSyntaxError("base declared twice", lineno)
            base, base_line = m.group(1), lineno
        else:
            raise GraphSyntaxError(f"cannot parse {line!r}", lineno)

    if not vertices:
        raise GraphSyntaxError("no vertices declared")
    declared = set(vertices)
    for e in edges:
        for v in (e.origin, e.terminus):
            if v not in declared:
                raise UnknownVertex(v, edge_lines[e.name])
    if base is not None and base not in declared:
        raise UnknownVertex(base, base_line)
    g = GbsGraph(tuple(vertices), tuple(edges), base)
    unreachable = [v for v in g.vertices if v not in set(g.reachable())]
    if unreachable:
        raise Disconnected(unreachable)
    return g


def serialize_graph(g: GbsGraph) -> str:
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [
        f"edge {e.name}: {e.origin} -> {e.terminus} "
        f"[{e.label_origin}, {e.label_terminus}]"
        for e in g.edges
    ]
    if g.base != g.vertices[0]:
        lines.append(f"base {g.base}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ValidationReport:
    connected: bool
    vertex_count: int
    edge_count: int
    betti: int | None
    base: str
    unreachable: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.connected

    def to_json(self) -> dict:
        return {
            "connected": self.connected,
            "vertices": self.vertex_count,
            "edges": self.edge_count,
            "betti": self.betti,
            "base": self.base,
            "unreachable": list(self.unreachable),
        }


def validate_graph(g: GbsGraph) -> ValidationReport:
    reached = set(g.reachable())
    unreachable = tuple(v for v in g.vertices if v not in reached)
    connected = not unreachable
    return ValidationReport(
        connected=connected,
        vertex_count=len(g.vertices),
        edge_count=len(g.edges),
        betti=g.betti if connected else None,
        base=g.base,
        unreachable=unreachable,
    )


def bs_graph(m: int, n: int, vertex="a", edge="t") -> GbsGraph:
    """One vertex, one loop: the Baumslag-Solitar group BS(m, n)."""
    return GbsGraph.build([vertex], [(edge, vertex, vertex, m, n)])

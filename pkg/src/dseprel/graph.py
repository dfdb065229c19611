"""Finite directed graphs (loops and cycles allowed) and the edge-list format.

Format, one item per line::

    # comment
    a -> b
    node z      # isolated vertex

Vertex order is first appearance in the text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .relation import Relation, VertexSubset, identity

__all__ = [
    "Graph",
    "GraphFormatError",
    "Classification",
    "parse_edge_list",
    "serialize_edge_list",
    "classify",
    "undirected_extension",
    "ancestral_closure",
    "restrict",
]

_NAME = re.compile(r"[^\s#\->]+")


class GraphFormatError(ValueError):
    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Graph:
    names: tuple[str, ...]
    edges: Relation

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            raise ValueError("vertex names must be unique")
        if self.edges.size != len(self.names):
            raise ValueError(
                f"edge relation has size {self.edges.size} for {len(self.names)} vertices"
            )

    @classmethod
    def from_edges(cls, names: Iterable[str], pairs: Iterable[tuple[str, str]]) -> Graph:
        names = tuple(names)
        index = {name: i for i, name in enumerate(names)}
        rel = Relation.from_pairs(len(names), ((index[a], index[b]) for a, b in pairs))
        return cls(names, rel)

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown vertex {name!r}") from None

    def subset(self, names: Iterable[str]) -> VertexSubset:
        return VertexSubset.of(self.n, (self.index(name) for name in names))

    def subset_names(self, subset: VertexSubset) -> list[str]:
        return [self.names[v] for v in subset]

    def __str__(self) -> str:
        return serialize_edge_list(self)


def _check_name(lineno: int, token: str) -> str:
    if not token:
        raise GraphFormatError(lineno, "empty vertex name")
    if not _NAME.fullmatch(token):
        raise GraphFormatError(lineno, f"invalid vertex name {token!r}")
    return token


def parse_edge_list(text: str) -> Graph:
    names: dict[str, int] = {}
    edges: list[tuple[int, int]] = []

    def intern(name: str) -> int:
        return names.setdefault(name, len(names))

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" in line:
            src, _, dst = line.partition("->")
            a = _check_name(lineno, src.strip())
            b = _check_name(lineno, dst.strip())
            edges.append((intern(a), intern(b)))
            continue
        parts = line.split()
        if parts[0] == "node":
            if len(parts) != 2:
                raise GraphFormatError(lineno, "expected 'node NAME'")
            intern(_check_name(lineno, parts[1]))
            continue
        raise GraphFormatError(lineno, f"cannot parse {raw.strip()!r}")

    return Graph(tuple(names), Relation.from_pairs(len(names), edges))


def _render(g: Graph, declared: Iterable[int]) -> str:
    lines = [f"node {g.names[v]}" for v in declared]
    lines += [f"{g.names[a]} -> {g.names[b]}" for a, b in g.edges.pairs()]
    return "\n".join(lines) + ("\n" if lines else "")


def serialize_edge_list(g: Graph) -> str:
    """Render ``g`` so that parsing the text gives back ``g`` exactly.

    Isolated vertices are declared first, then edges in row-major order.
    When that layout would change the vertex order on re-parse, every vertex
    is declared up front instead.
    """
    m = g.edges.matrix
    isolated = [v for v in range(g.n) if not m[v].any() and not m[:, v].any()]
    text = _render(g, isolated)
    if parse_edge_list(text).names == g.names:
        return text
    return _render(g, range(g.n))


class Classification(NamedTuple):
    directed: bool
    undirected: bool
    has_loops: bool


def classify(g: Graph) -> Classification:
    e = g.edges
    both = e & e.T
    return Classification(
        directed=not both,
        undirected=e == e.T,
        has_loops=bool(identity(g.n) & e),
    )


def undirected_extension(g: Graph) -> Graph:
    return Graph(g.names, g.edges | g.edges.T)


def ancestral_closure(g: Graph, w: VertexSubset) -> VertexSubset:
    """Vertices that reach ``w`` along directed edges, ``w`` included."""
    return g.edges.star().foreset(w)


def restrict(g: Graph, s: VertexSubset) -> Graph:
    """Induced subgraph on ``s``; names are kept, order preserved."""
    keep = np.flatnonzero(s.mask)
    sub = g.edges.matrix[np.ix_(keep, keep)]
    return Graph(tuple(g.names[v] for v in keep), Relation(sub))


def loop_vertices(g: Graph) -> VertexSubset:
    return VertexSubset(np.diag(g.edges.matrix))

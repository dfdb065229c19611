"""Edge paths, undirected (orientation-carrying) paths and their activity.

An :class:`UndirectedPath` of length ``n`` visits ``n + 1`` vertices.  Step
``i`` goes from ``vertices[i]`` to ``vertices[i + 1]`` and has orientation
``+1`` when that pair is an edge, ``-1`` when the reversed pair is an edge.
A length-0 path sits at a single vertex and only exists where that vertex
has no loop.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graph import Graph, ancestral_closure
from .relation import Relation, VertexSubset

__all__ = [
    "PLUS",
    "MINUS",
    "EdgePath",
    "UndirectedPath",
    "InvalidPath",
    "endpoints",
    "intermediates",
    "concatenate",
    "junction_open",
    "is_active",
    "enumerate_undirected_paths",
    "exists_active_path_bounded",
    "active_targets_bounded",
    "endpoint_relation",
    "deployment_filter",
    "all_paths_upto",
    "completeness_bound",
    "format_path",
    "path_to_records",
    "path_from_records",
    "path_to_json",
]

PLUS, MINUS = 1, -1


class InvalidPath(ValueError):
    pass


@dataclass(frozen=True)
class EdgePath:
    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.vertices:
            raise InvalidPath("a path visits at least one vertex")

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def steps(self) -> tuple[tuple[int, int], ...]:
        if self.length == 0:
            v = self.vertices[0]
            return ((v, v),)
        return tuple(zip(self.vertices, self.vertices[1:]))

    def validate(self, edges: Relation) -> None:
        if self.length == 0:
            v = self.vertices[0]
            if (v, v) in edges:
                raise InvalidPath(f"no length-0 path at looped vertex {v}")
            return
        for a, b in zip(self.vertices, self.vertices[1:]):
            if (a, b) not in edges:
                raise InvalidPath(f"({a}, {b}) is not an edge")

    def is_valid(self, edges: Relation) -> bool:
        try:
            self.validate(edges)
        except InvalidPath:
            return False
        return True


@dataclass(frozen=True)
class UndirectedPath:
    vertices: tuple[int, ...]
    orientations: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not self.vertices:
            raise InvalidPath("a path visits at least one vertex")
        if len(self.orientations) != len(self.vertices) - 1:
            raise InvalidPath("need exactly one orientation per step")
        if any(o not in (PLUS, MINUS) for o in self.orientations):
            raise InvalidPath("orientations are +1 or -1")

    @classmethod
    def at(cls, v: int) -> UndirectedPath:
        return cls((v,), ())

    @classmethod
    def from_steps(
        cls, steps: Sequence[tuple[int, int]], orientations: Sequence[int]
    ) -> UndirectedPath:
        if not steps:
            raise InvalidPath("no steps")
        for (_, head), (tail, _) in zip(steps, steps[1:]):
            if head != tail:
                raise InvalidPath("consecutive steps do not chain")
        return cls((steps[0][0],) + tuple(h for _, h in steps), tuple(orientations))

    @property
    def length(self) -> int:
        return len(self.orientations)

    @property
    def steps(self) -> tuple[tuple[int, int], ...]:
        if self.length == 0:
            v = self.vertices[0]
            return ((v, v),)
        return tuple(zip(self.vertices, self.vertices[1:]))

    @property
    def word(self) -> tuple[int, ...]:
        """Orientation word, ``(+1,)`` for a length-0 path."""
        return self.orientations or (PLUS,)

    def as_edge_path(self) -> EdgePath:
        """Forget orientations; valid in the undirected extension."""
        return EdgePath(self.vertices)

    def validate(self, edges: Relation) -> None:
        if self.length == 0:
            v = self.vertices[0]
            if (v, v) in edges:
                raise InvalidPath(f"no length-0 path at looped vertex {v}")
            return
        for a, b, o in zip(self.vertices, self.vertices[1:], self.orientations):
            pair = (a, b) if o == PLUS else (b, a)
            if pair not in edges:
                raise InvalidPath(f"step ({a}, {b}) with orientation {o:+d} is not an edge")

    def is_valid(self, edges: Relation) -> bool:
        try:
            self.validate(edges)
        except InvalidPath:
            return False
        return True


def endpoints(p: EdgePath | UndirectedPath) -> tuple[int, int]:
    return p.vertices[0], p.vertices[-1]


def intermediates(p: EdgePath | UndirectedPath) -> frozenset[int]:
    return frozenset(p.vertices[1:-1])


def concatenate(p: UndirectedPath, q: UndirectedPath) -> UndirectedPath:
    """Join ``p`` then ``q``; length-0 operands act as identities."""
    if p.vertices[-1] != q.vertices[0]:
        raise InvalidPath(
            f"cannot concatenate: head {p.vertices[-1]} != tail {q.vertices[0]}"
        )
    return UndirectedPath(p.vertices + q.vertices[1:], p.orientations + q.orientations)


def junction_open(o_in: int, o_out: int, v: int, w: VertexSubset, w_star: VertexSubset) -> bool:
    """Whether two consecutive steps meeting at ``v`` let the path through."""
    if o_in == PLUS and o_out == MINUS:
        return v in w_star
    return v not in w


def is_active(
    p: UndirectedPath, g: Graph, w: VertexSubset, w_star: VertexSubset | None = None
) -> bool:
    p.validate(g.edges)
    if p.length <= 1:
        return True
    if w_star is None:
        w_star = ancestral_closure(g, w)
    o = p.orientations
    return all(
        junction_open(o[i], o[i + 1], p.vertices[i + 1], w, w_star)
        for i in range(p.length - 1)
    )


def _moves(g: Graph, v: int) -> list[tuple[int, int]]:
    """Oriented single steps out of ``v``, ordered by (target, +1 before -1)."""
    m = g.edges.matrix
    out = []
    for u in range(g.n):
        if m[v, u]:
            out.append((u, PLUS))
        if m[u, v]:
            out.append((u, MINUS))
    return out


def _undirected_distances_to(g: Graph, y: int) -> list[float]:
    sym = g.edges | g.edges.T
    dist = [float("inf")] * g.n
    dist[y] = 0
    queue = deque([y])
    while queue:
        v = queue.popleft()
        for u in sym.predecessors(v):
            if dist[u] == float("inf"):
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def enumerate_undirected_paths(g: Graph, x: int, y: int, max_len: int) -> Iterator[UndirectedPath]:
    """All undirected paths from ``x`` to ``y`` of length at most ``max_len``.

    Ordered by length, then lexicographically on ``(vertex, orientation)``
    per step with ``+1`` before ``-1``.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    if x == y and (x, x) not in g.edges:
        yield UndirectedPath.at(x)
    dist = _undirected_distances_to(g, y)
    moves = [_moves(g, v) for v in range(g.n)]

    def extend(verts: list[int], orients: list[int], remaining: int) -> Iterator[UndirectedPath]:
        v = verts[-1]
        if remaining == 0:
            if v == y:
                yield UndirectedPath(tuple(verts), tuple(orients))
            return
        for u, o in moves[v]:
            if dist[u] > remaining - 1:
                continue
            verts.append(u)
            orients.append(o)
            yield from extend(verts, orients, remaining - 1)
            verts.pop()
            orients.pop()

    for length in range(1, max_len + 1):
        yield from extend([x], [], length)


def active_targets_bounded(
    g: Graph, x: int, w: VertexSubset, max_len: int, w_star: VertexSubset | None = None
) -> VertexSubset:
    """Endpoints ``y`` of active paths from ``x`` of length at most ``max_len``.

    Depth-first over path prefixes.  Two prunings keep this tractable and do
    not change the answer: a prefix that is already blocked is never
    extended (activity only looks at consecutive step pairs), and a path
    never re-enters a (vertex, last orientation) pair it already visited,
    because cutting out that loop leaves an active path with the same end
    that is strictly shorter.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    if w_star is None:
        w_star = ancestral_closure(g, w)
    found = [False] * g.n
    if (x, x) not in g.edges:
        found[x] = True
    moves = [_moves(g, v) for v in range(g.n)]
    on_path: set[tuple[int, int]] = set()

    def extend(v: int, o_in: int, depth: int) -> None:
        found[v] = True
        if depth == max_len:
            return
        for u, o in moves[v]:
            if (u, o) in on_path or not junction_open(o_in, o, v, w, w_star):
                continue
            on_path.add((u, o))
            extend(u, o, depth + 1)
            on_path.discard((u, o))

    if max_len >= 1:
        for u, o in moves[x]:
            on_path.add((u, o))
            extend(u, o, 1)
            on_path.discard((u, o))
    return VertexSubset(found)


def exists_active_path_bounded(
    g: Graph,
    x: int,
    y: int,
    w: VertexSubset,
    max_len: int,
    *,
    exhaustive: bool = False,
) -> bool:
    """Is some undirected path from ``x`` to ``y`` of length <= ``max_len`` active?

    With ``exhaustive=True`` every path from :func:`enumerate_undirected_paths`
    is tested with :func:`is_active`; otherwise the pruned search of
    :func:`active_targets_bounded` is used.  Both give the same answer.
    """
    w_star = ancestral_closure(g, w)
    if exhaustive:
        return any(
            is_active(p, g, w, w_star) for p in enumerate_undirected_paths(g, x, y, max_len)
        )
    if x == y and (x, x) not in g.edges:
        return True
    return y in active_targets_bounded(g, x, w, max_len, w_star)


def completeness_bound(g: Graph) -> int:
    return 2 * g.n + 2


def endpoint_relation(paths: Iterable[UndirectedPath | EdgePath], n: int) -> Relation:
    return Relation.from_pairs(n, (endpoints(p) for p in paths))


def deployment_filter(
    paths: Iterable[UndirectedPath], relation: Relation
) -> Iterator[UndirectedPath]:
    """The paths whose endpoint pair lies in ``relation``."""
    for p in paths:
        if endpoints(p) in relation:
            yield p


def all_paths_upto(g: Graph, max_len: int) -> Iterator[UndirectedPath]:
    for x in range(g.n):
        for y in range(g.n):
            yield from enumerate_undirected_paths(g, x, y, max_len)


# serialization


def format_path(p: UndirectedPath, names: Sequence[str]) -> str:
    """``a -[+]-> c -[-]-> b``; a length-0 path prints as its vertex."""
    parts = [names[p.vertices[0]]]
    for v, o in zip(p.vertices[1:], p.orientations):
        parts.append(f"-[{'+' if o == PLUS else '-'}]->")
        parts.append(names[v])
    return " ".join(parts)


def path_to_records(p: UndirectedPath, names: Sequence[str]) -> list[dict]:
    return [
        {"tail": names[a], "head": names[b], "orient": o}
        for (a, b), o in zip(p.steps, p.word)
    ]


def path_from_records(records: list[dict], g: Graph) -> UndirectedPath:
    """Inverse of :func:`path_to_records`.

    A single record ``(v, v, +1)`` is the length-0 path unless ``v`` has a
    loop, in which case it is the loop step.
    """
    steps = [(g.index(r["tail"]), g.index(r["head"])) for r in records]
    orients = [int(r["orient"]) for r in records]
    if len(steps) == 1 and steps[0][0] == steps[0][1] and orients == [PLUS]:
        v = steps[0][0]
        if (v, v) not in g.edges:
            return UndirectedPath.at(v)
    p = UndirectedPath.from_steps(steps, orients)
    p.validate(g.edges)
    return p


def path_to_json(p: UndirectedPath, names: Sequence[str]) -> str:
    return json.dumps(path_to_records(p, names))

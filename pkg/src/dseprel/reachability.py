"""Worklist decision procedure over (vertex, last orientation) states.

A state ``(v, +1)`` means some active path from the source arrives at ``v``
along an edge pointing into ``v``; ``(v, -1)`` means it arrives against an
edge out of ``v``.  Transitions apply the same junction rule as path
activity, so the reachable states are exactly the ends of active paths of
length at least one.
"""

from __future__ import annotations

from collections import deque
from typing import NamedTuple

from .graph import Graph, ancestral_closure
from .relation import VertexSubset

__all__ = ["OrientState", "active_reach", "d_connected_reach", "reachable_targets"]


class OrientState(NamedTuple):
    vertex: int
    last_orient: int


def active_reach(
    g: Graph, x: int, w: VertexSubset, w_star: VertexSubset | None = None
) -> set[OrientState]:
    if w_star is None:
        w_star = ancestral_closure(g, w)
    m = g.edges.matrix
    children = [g.edges.successors(v) for v in range(g.n)]
    parents = [g.edges.predecessors(v) for v in range(g.n)]

    seen: set[OrientState] = set()
    queue: deque[OrientState] = deque()

    def push(state: OrientState) -> None:
        if state not in seen:
            seen.add(state)
            queue.append(state)

    for u in range(g.n):
        if m[x, u]:
            push(OrientState(u, 1))
        if m[u, x]:
            push(OrientState(u, -1))

    while queue:
        v, o = queue.popleft()
        passes = v not in w
        if passes:
            for u in children[v]:
                push(OrientState(u, 1))
        if (o == -1 and passes) or (o == 1 and v in w_star):
            for u in parents[v]:
                push(OrientState(u, -1))
    return seen


def d_connected_reach(g: Graph, x: int, y: int, w: VertexSubset) -> bool:
    if x == y:
        return True
    states = active_reach(g, x, w)
    return OrientState(y, 1) in states or OrientState(y, -1) in states


def reachable_targets(g: Graph, x: int, w: VertexSubset, w_star: VertexSubset | None = None) -> VertexSubset:
    """All ``y`` with ``d_connected_reach(g, x, y, w)``."""
    mask = [False] * g.n
    mask[x] = True
    for v, _ in active_reach(g, x, w, w_star):
        mask[v] = True
    return VertexSubset(mask)

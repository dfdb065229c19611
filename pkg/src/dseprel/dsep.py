"""Conditional d-separation decided by binary-relation algebra.

For a graph with edge relation ``E`` and conditioning set ``W``:

* parental        ``P  = diag(not W) E``
* ascendent       ``B  = E P*``                  (and its converse ``B'``)
* common cause    ``K  = (P+)' P+``
* cousinhood      ``C  = (diag(W) K diag(W))+ | diag(W)``
* active          ``A  = I | B | B' | K | (B | K) C (B' | K)``

``x`` and ``y`` are d-separated given ``W`` exactly when ``(x, y)`` is not
in ``A``.  The starred variants replace ``W`` by its ancestral closure inside
the cousinhood relation; they give the same ``A`` and split it by the
orientation of the last step of a connecting active path.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Literal

from .graph import Graph, ancestral_closure
from .relation import Relation, VertexSubset, diagonal, identity
from .upath import MINUS, PLUS, UndirectedPath, concatenate

__all__ = [
    "ConditionalRelationBundle",
    "build_bundle",
    "d_separated",
    "d_separated_sets",
    "witness_active_path",
    "witness_bound",
    "plain_separation",
    "directed_path_avoiding",
    "RELATION_NAMES",
]

RELATION_NAMES = (
    "parental",
    "ascendent",
    "ascendent-conv",
    "common-cause",
    "cousinhood",
    "cousinhood-star",
    "active",
    "active-star",
    "active-plus",
    "active-minus",
)


@dataclass(frozen=True)
class ConditionalRelationBundle:
    graph: Graph
    given: VertexSubset
    given_ancestral: VertexSubset
    parental: Relation
    ascendent: Relation
    ascendent_conv: Relation
    common_cause: Relation
    cousinhood: Relation
    cousinhood_star: Relation
    active: Relation
    active_star: Relation
    active_plus: Relation
    active_minus: Relation

    @cached_property
    def parental_plus(self) -> Relation:
        return self.parental.plus()

    @cached_property
    def parental_star(self) -> Relation:
        return self.parental.star()

    def relation(self, name: str) -> Relation:
        if name not in RELATION_NAMES:
            raise KeyError(f"unknown relation {name!r}")
        return getattr(self, name.replace("-", "_"))

    def separated(self, x: int, y: int) -> bool:
        return (x, y) not in self.active

    def separated_sets(self, b: VertexSubset, c: VertexSubset) -> bool:
        return not (diagonal(b) @ self.active @ diagonal(c))

    def witness(self, x: int, y: int) -> UndirectedPath | None:
        return _WitnessBuilder(self).build(x, y)


def build_bundle(g: Graph, w: VertexSubset) -> ConditionalRelationBundle:
    if w.size != g.n:
        raise ValueError(f"conditioning set over {w.size} vertices, graph has {g.n}")
    e = g.edges
    w_star = ancestral_closure(g, w)
    d_w, d_not_w, d_w_star = diagonal(w), diagonal(~w), diagonal(w_star)

    parental = d_not_w @ e
    p_plus = parental.plus()
    ascendent = e @ parental.star()
    ascendent_conv = ascendent.T
    common_cause = p_plus.T @ p_plus
    cousinhood = (d_w @ common_cause @ d_w).plus() | d_w
    cousinhood_star = (d_w_star @ common_cause @ d_w_star).plus() | d_w_star

    left = ascendent | common_cause
    right = ascendent_conv | common_cause
    base = identity(g.n) | ascendent | ascendent_conv | common_cause
    through_star = left @ cousinhood_star
    return ConditionalRelationBundle(
        graph=g,
        given=w,
        given_ancestral=w_star,
        parental=parental,
        ascendent=ascendent,
        ascendent_conv=ascendent_conv,
        common_cause=common_cause,
        cousinhood=cousinhood,
        cousinhood_star=cousinhood_star,
        active=base | left @ cousinhood @ right,
        active_star=base | through_star @ right,
        active_plus=ascendent | common_cause | through_star @ common_cause,
        active_minus=ascendent_conv | through_star @ ascendent_conv,
    )


def d_separated(g: Graph, x: int, y: int, w: VertexSubset) -> bool:
    return build_bundle(g, w).separated(x, y)


def d_separated_sets(g: Graph, b: VertexSubset, c: VertexSubset, w: VertexSubset) -> bool:
    """No pair in ``b x c`` is d-connected given ``w`` (no disjointness needed)."""
    return build_bundle(g, w).separated_sets(b, c)


def witness_active_path(g: Graph, x: int, y: int, w: VertexSubset) -> UndirectedPath | None:
    return build_bundle(g, w).witness(x, y)


def witness_bound(bundle: ConditionalRelationBundle, x: int, y: int) -> VertexSubset:
    """Where intermediates of a constructed witness must lie.

    Vertices reaching ``x`` or ``y`` by a nonempty parental chain, together
    with vertices reaching ``W`` by a possibly empty one.
    """
    ends = VertexSubset.of(bundle.graph.n, {x, y})
    return bundle.parental_plus.foreset(ends) | bundle.parental_star.foreset(bundle.given)


def _distances_to(rel: Relation, target: int) -> list[float]:
    dist = [float("inf")] * rel.size
    dist[target] = 0
    queue = deque([target])
    while queue:
        v = queue.popleft()
        for u in rel.predecessors(v):
            if dist[u] == float("inf"):
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def _descend(rel: Relation, start: int, target: int, dist: list[float]) -> list[int]:
    """Greedy walk along ``rel`` down the distance gradient, lowest index first."""
    verts = [start]
    while verts[-1] != target:
        v = verts[-1]
        verts.append(next(u for u in rel.successors(v) if dist[u] == dist[v] - 1))
    return verts


def _walk(first: Relation, rest: Relation, start: int, target: int, dist: list[float]) -> list[int]:
    """Shortest walk taking one ``first`` step then ``rest`` steps.

    ``dist`` holds distances to ``target`` under ``rest``.
    """
    options = [u for u in first.successors(start) if dist[u] < float("inf")]
    u = min(options, key=lambda u: (dist[u], u))
    return [start] + _descend(rest, u, target, dist)


class _WitnessBuilder:
    """Turns a relational fact ``x A y`` into an explicit active path."""

    def __init__(self, bundle: ConditionalRelationBundle) -> None:
        self.b = bundle
        self.e = bundle.graph.edges
        self.p = bundle.parental
        self._dist: dict[int, list[float]] = {}

    def dist(self, target: int) -> list[float]:
        if target not in self._dist:
            self._dist[target] = _distances_to(self.p, target)
        return self._dist[target]

    def _first_then_parental(self, first: Relation, start: int, target: int) -> list[int]:
        return _walk(first, self.p, start, target, self.dist(target))

    def ascendent_path(self, x: int, y: int) -> UndirectedPath:
        verts = self._first_then_parental(self.e, x, y)
        return UndirectedPath(tuple(verts), (PLUS,) * (len(verts) - 1))

    def ascendent_conv_path(self, x: int, y: int) -> UndirectedPath:
        verts = self._first_then_parental(self.e, y, x)[::-1]
        return UndirectedPath(tuple(verts), (MINUS,) * (len(verts) - 1))

    def common_cause_path(self, x: int, y: int) -> UndirectedPath:
        dx, dy = self.dist(x), self.dist(y)

        def plus_dist(z: int, d: list[float]) -> float:
            return 1 + min((d[u] for u in self.p.successors(z)), default=float("inf"))

        z = min(range(self.b.graph.n), key=lambda z: (plus_dist(z, dx) + plus_dist(z, dy), z))
        left = self._first_then_parental(self.p, z, x)[::-1]
        right = self._first_then_parental(self.p, z, y)
        return UndirectedPath(
            tuple(left + right[1:]),
            (MINUS,) * (len(left) - 1) + (PLUS,) * (len(right) - 1),
        )

    def cousin_path(self, d1: int, d2: int) -> UndirectedPath:
        """Chain of common-cause links through ancestors of ``W``."""
        if d1 == d2:
            return UndirectedPath.at(d1)
        link = diagonal(self.b.given_ancestral)
        link = link @ self.b.common_cause @ link
        hops = _walk(link, link, d1, d2, _distances_to(link, d2))
        path = UndirectedPath.at(d1)
        for a, c in zip(hops, hops[1:]):
            path = concatenate(path, self.common_cause_path(a, c))
        return path

    def build(self, x: int, y: int) -> UndirectedPath | None:
        b = self.b
        if x == y:
            if (x, x) in self.e:
                return UndirectedPath((x, x), (PLUS,))
            return UndirectedPath.at(x)
        if (x, y) in b.ascendent:
            return self.ascendent_path(x, y)
        if (x, y) in b.ascendent_conv:
            return self.ascendent_conv_path(x, y)
        if (x, y) in b.common_cause:
            return self.common_cause_path(x, y)
        if (x, y) not in b.active_star:
            return None

        left = b.ascendent | b.common_cause
        right = b.ascendent_conv | b.common_cause
        cs = b.cousinhood_star
        d1, d2 = next(
            (d1, d2)
            for d1 in left.successors(x)
            for d2 in cs.successors(d1)
            if (d2, y) in right
        )
        first = (
            self.ascendent_path(x, d1)
            if (x, d1) in b.ascendent
            else self.common_cause_path(x, d1)
        )
        last = (
            self.ascendent_conv_path(d2, y)
            if (d2, y) in b.ascendent_conv
            else self.common_cause_path(d2, y)
        )
        return concatenate(concatenate(first, self.cousin_path(d1, d2)), last)


def directed_path_avoiding(g: Graph, x: int, y: int, w: VertexSubset) -> bool:
    """Brute force: a directed path ``x -> ... -> y`` (length >= 1) whose
    intermediate vertices all lie outside ``w``.  Simple paths suffice."""
    stack = [(x, frozenset({x}))]
    while stack:
        v, used = stack.pop()
        for u in g.edges.successors(v):
            if u == y:
                return True
            if u in w or u in used:
                continue
            stack.append((u, used | {u}))
    return False


def plain_separation(
    g: Graph,
    x: int,
    y: int,
    w: VertexSubset,
    variant: Literal["literal", "corrected"] = "corrected",
) -> bool:
    """Every directed path from ``x`` to ``y`` passes through ``w``.

    ``literal`` evaluates ``(E diag(not W) E)+``, which only relates walks of
    even length; ``corrected`` evaluates ``E (diag(not W) E)*``.
    """
    e = g.edges
    d_not_w = diagonal(~w)
    if variant == "literal":
        rel = (e @ d_not_w @ e).plus()
    elif variant == "corrected":
        rel = e @ (d_not_w @ e).star()
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return (x, y) not in rel

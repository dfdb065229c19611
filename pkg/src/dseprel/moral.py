"""Moral graphs and m-separation on the ancestral subgraph.

For pairwise disjoint ``B``, ``C``, ``W`` the ancestral set is
``S = E*(B | C | W)`` and the moral relation of the induced subgraph is the
symmetrised edge relation plus "marriages" between co-parents.  ``B`` and
``C`` are morally blocked when no moral path from ``B`` to ``C`` inside
``S`` has all its intermediate vertices outside ``W``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph
from .relation import Relation, VertexSubset, diagonal
from .upath import MINUS, PLUS, EdgePath, UndirectedPath, is_active

__all__ = [
    "NotDisjoint",
    "MoralContext",
    "moral_relation",
    "moral_of",
    "build_moral_context",
    "morally_blocked",
    "morally_blocked_bruteforce",
    "moral_path_from_active",
]


class NotDisjoint(ValueError):
    pass


def moral_of(edges: Relation) -> Relation:
    half = edges | edges @ edges.T
    return half | half.T


def moral_relation(g: Graph) -> Relation:
    return moral_of(g.edges)


@dataclass(frozen=True)
class MoralContext:
    ancestral: VertexSubset
    edges: Relation
    moral: Relation


def _require_disjoint(b: VertexSubset, c: VertexSubset, w: VertexSubset) -> None:
    for (la, a), (lb, bb) in [(("B", b), ("C", c)), (("B", b), ("W", w)), (("C", c), ("W", w))]:
        overlap = a & bb
        if overlap:
            raise NotDisjoint(f"{la} and {lb} share vertices {overlap.members()}")


def build_moral_context(
    g: Graph, b: VertexSubset, c: VertexSubset, w: VertexSubset
) -> MoralContext:
    """Relations are kept over the full universe, zero outside ``S x S``."""
    _require_disjoint(b, c, w)
    s = g.edges.star().foreset(b | c | w)
    e_s = g.edges.restrict(s)
    return MoralContext(ancestral=s, edges=e_s, moral=moral_of(e_s))


def morally_blocked(g: Graph, b: VertexSubset, c: VertexSubset, w: VertexSubset) -> bool:
    ctx = build_moral_context(g, b, c, w)
    m = ctx.moral
    connect = diagonal(b) @ m @ (diagonal(~w) @ m).star() @ diagonal(c)
    return not connect


def morally_blocked_bruteforce(
    g: Graph, b: VertexSubset, c: VertexSubset, w: VertexSubset
) -> bool:
    """Simple-path search in the moral subgraph; repeated vertices never help
    because the constraint on intermediates is per vertex."""
    m = build_moral_context(g, b, c, w).moral
    for start in b:
        stack = [(start, frozenset({start}))]
        while stack:
            v, used = stack.pop()
            for u in m.successors(v):
                if u in c:
                    return False
                if u in w or u in used:
                    continue
                stack.append((u, used | {u}))
    return True


def moral_path_from_active(
    g: Graph,
    p: UndirectedPath,
    w: VertexSubset,
) -> EdgePath:
    """Moral path with the endpoints of the active path ``p``.

    Every collider junction is bypassed by the marriage edge between its two
    neighbours; every other step is kept.
    """
    if not is_active(p, g, w):
        raise ValueError("path is not active")
    verts = [p.vertices[0]]
    o = p.orientations
    for i in range(1, p.length + 1):
        v = p.vertices[i]
        is_collider = i < p.length and o[i - 1] == PLUS and o[i] == MINUS
        if is_collider:
            continue
        verts.append(v)
    return EdgePath(tuple(verts))

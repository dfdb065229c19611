"""Conditional d-separation on finite directed graphs that may contain cycles and loops."""

from __future__ import annotations

from .dsep import (
    RELATION_NAMES,
    ConditionalRelationBundle,
    build_bundle,
    d_separated,
    d_separated_sets,
    plain_separation,
    witness_active_path,
)
from .graph import Graph, GraphFormatError, classify, parse_edge_list, serialize_edge_list
from .moral import morally_blocked, moral_relation
from .reachability import active_reach, d_connected_reach
from .relation import Relation, VertexSubset
from .upath import UndirectedPath, format_path, is_active

__all__ = [
    "RELATION_NAMES",
    "ConditionalRelationBundle",
    "Graph",
    "GraphFormatError",
    "Relation",
    "UndirectedPath",
    "VertexSubset",
    "active_reach",
    "build_bundle",
    "classify",
    "d_connected_reach",
    "d_separated",
    "d_separated_sets",
    "format_path",
    "is_active",
    "moral_relation",
    "morally_blocked",
    "parse_edge_list",
    "plain_separation",
    "serialize_edge_list",
    "witness_active_path",
]

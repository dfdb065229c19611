"""Differential testing of the separation procedures on random and exhaustive graphs.

Random graphs come from numpy's PCG64 generator.  Trial ``k`` of a run with
seed ``s`` draws from ``PCG64(SeedSequence([s mod 2**64, k]))``, so every
trial is reproducible on its own and trials can run in any order.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass, field
from typing import Iterator

import numpy as np

from .dsep import ConditionalRelationBundle, build_bundle, witness_bound
from .graph import Graph, serialize_edge_list
from .moral import morally_blocked, morally_blocked_bruteforce
from .reachability import reachable_targets
from .relation import Relation, VertexSubset
from .upath import active_targets_bounded, completeness_bound, endpoints, format_path, intermediates, is_active

__all__ = [
    "trial_rng",
    "random_graph",
    "random_subset",
    "random_partition",
    "all_graphs",
    "all_subsets",
    "disjoint_triples",
    "witness_problem",
    "check_pairs",
    "check_moral",
    "CrosscheckSummary",
    "run_crosscheck",
]

MASK64 = (1 << 64) - 1
ENUMERATION_AUTO_LIMIT = 6


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed & MASK64, trial])))


def vertex_names(n: int) -> tuple[str, ...]:
    return tuple(f"v{i}" for i in range(n))


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    """Each ordered pair, loops included, is an edge with probability ``p``."""
    return Graph(vertex_names(n), Relation(rng.random((n, n)) < p))


def random_subset(rng: np.random.Generator, n: int, p: float = 0.5) -> VertexSubset:
    return VertexSubset(rng.random(n) < p)


def random_partition(
    rng: np.random.Generator, n: int
) -> tuple[VertexSubset, VertexSubset, VertexSubset]:
    """Disjoint ``(B, C, W)``; each vertex lands in one of them or in none."""
    labels = rng.integers(0, 4, size=n)
    return tuple(VertexSubset(labels == k) for k in range(3))  # type: ignore[return-value]


def all_graphs(n: int) -> Iterator[Graph]:
    names = vertex_names(n)
    for code in range(1 << (n * n)):
        bits = [(code >> k) & 1 for k in range(n * n)]
        yield Graph(names, Relation(np.array(bits, dtype=bool).reshape(n, n)))


def all_subsets(n: int) -> Iterator[VertexSubset]:
    for code in range(1 << n):
        yield VertexSubset([(code >> k) & 1 for k in range(n)])


def disjoint_triples(n: int) -> Iterator[tuple[VertexSubset, VertexSubset, VertexSubset]]:
    for labels in itertools.product(range(4), repeat=n):
        arr = np.array(labels)
        yield tuple(VertexSubset(arr == k) for k in range(3))  # type: ignore[misc]


def _names(g: Graph, s: VertexSubset) -> list[str]:
    return g.subset_names(s)


def _counterexample(kind: str, g: Graph, w: VertexSubset, **extra) -> dict:
    return {"kind": kind, "graph": serialize_edge_list(g), "given": _names(g, w), **extra}


def witness_problem(bundle: ConditionalRelationBundle, x: int, y: int) -> str | None:
    """Why the constructed witness for a connected pair is unacceptable, if it is."""
    g = bundle.graph
    path = bundle.witness(x, y)
    if path is None:
        return "no witness for a connected pair"
    if endpoints(path) != (x, y):
        return "witness has wrong endpoints"
    if not path.is_valid(g.edges):
        return "witness is not a valid path"
    if not is_active(path, g, bundle.given, bundle.given_ancestral):
        return "witness is blocked"
    bound = witness_bound(bundle, x, y)
    if not all(v in bound for v in intermediates(path)):
        return "witness intermediates escape the parental bound"
    return None


@dataclass
class PairCheck:
    pairs: int = 0
    witnesses: int = 0
    failures: list[dict] = field(default_factory=list)


def check_pairs(
    g: Graph,
    w: VertexSubset,
    *,
    max_len: int | None = None,
    enumeration: bool = True,
    witnesses: bool = True,
) -> PairCheck:
    """Compare every ordered pair across the relational, reachability and
    (optionally) bounded enumeration procedures."""
    if max_len is None:
        max_len = completeness_bound(g)
    out = PairCheck()
    bundle = build_bundle(g, w)
    w_star = bundle.given_ancestral
    for x in range(g.n):
        reach = reachable_targets(g, x, w, w_star)
        enum = active_targets_bounded(g, x, w, max_len, w_star) if enumeration else None
        for y in range(g.n):
            out.pairs += 1
            verdicts = {"relational": bundle.separated(x, y), "reachability": y not in reach}
            if enum is not None:
                verdicts["enumeration"] = y not in enum
            if len(set(verdicts.values())) > 1:
                out.failures.append(
                    _counterexample("pair", g, w, x=g.names[x], y=g.names[y], verdicts=verdicts)
                )
                continue
            if witnesses and not verdicts["relational"]:
                out.witnesses += 1
                problem = witness_problem(bundle, x, y)
                if problem is not None:
                    path = bundle.witness(x, y)
                    out.failures.append(
                        _counterexample(
                            "witness", g, w, x=g.names[x], y=g.names[y], problem=problem,
                            witness=None if path is None else format_path(path, g.names),
                        )
                    )
    return out


def check_moral(g: Graph, b: VertexSubset, c: VertexSubset, w: VertexSubset) -> dict | None:
    """Moral vs d-separation on disjoint sets; returns a counterexample or None."""
    verdicts = {
        "moral": morally_blocked(g, b, c, w),
        "moral_bruteforce": morally_blocked_bruteforce(g, b, c, w),
        "d_separated": build_bundle(g, w).separated_sets(b, c),
    }
    if len(set(verdicts.values())) > 1:
        return _counterexample("moral", g, w, B=_names(g, b), C=_names(g, c), verdicts=verdicts)
    return None


@dataclass
class CrosscheckSummary:
    seed: int
    vertices: int
    edge_prob: float
    trials: int
    enumeration: bool
    pairs_checked: int = 0
    moral_checks: int = 0
    exhaustive_instances: int = 0
    disagreements: int = 0
    first_counterexample: dict | None = None

    def record(self, failure: dict) -> None:
        self.disagreements += 1
        if self.first_counterexample is None:
            self.first_counterexample = failure

    def to_dict(self) -> dict:
        return asdict(self)

    def to_text(self) -> str:
        lines = [
            f"seed: {self.seed}",
            f"vertices: {self.vertices}",
            f"edge_prob: {self.edge_prob}",
            f"trials: {self.trials}",
            "methods: relational, reachability" + (", enumeration" if self.enumeration else ""),
            f"pairs_checked: {self.pairs_checked}",
            f"moral_checks: {self.moral_checks}",
            f"exhaustive_instances: {self.exhaustive_instances}",
            f"disagreements: {self.disagreements}",
        ]
        ce = self.first_counterexample
        if ce is None:
            lines.append("first_counterexample: none")
        else:
            lines.append(f"first_counterexample: {ce['kind']}")
            for key, value in ce.items():
                if key in ("kind", "graph"):
                    continue
                lines.append(f"  {key}: {value}")
            lines.append("  graph:")
            lines += [f"    {line}" for line in ce["graph"].splitlines()]
        return "\n".join(lines) + "\n"


def run_crosscheck(
    vertices: int,
    edge_prob: float,
    trials: int,
    seed: int,
    *,
    max_vertices_exhaustive: int | None = None,
    enumeration: bool | None = None,
) -> CrosscheckSummary:
    if vertices < 1:
        raise ValueError("need at least one vertex")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")
    if trials < 1:
        raise ValueError("need at least one trial")
    if max_vertices_exhaustive is not None and not 0 <= max_vertices_exhaustive <= 4:
        raise ValueError("exhaustive sweeps are limited to 4 vertices")
    if enumeration is None:
        enumeration = vertices <= ENUMERATION_AUTO_LIMIT

    summary = CrosscheckSummary(
        seed=seed, vertices=vertices, edge_prob=edge_prob, trials=trials, enumeration=enumeration
    )
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        g = random_graph(rng, vertices, edge_prob)
        w = random_subset(rng, vertices)
        result = check_pairs(g, w, enumeration=enumeration)
        summary.pairs_checked += result.pairs
        for failure in result.failures:
            summary.record(failure)
        b, c, w_moral = random_partition(rng, vertices)
        summary.moral_checks += 1
        failure = check_moral(g, b, c, w_moral)
        if failure is not None:
            summary.record(failure)

    for n in range(1, (max_vertices_exhaustive or 0) + 1):
        for g in all_graphs(n):
            for w in all_subsets(n):
                result = check_pairs(g, w)
                summary.exhaustive_instances += 1
                summary.pairs_checked += result.pairs
                for failure in result.failures:
                    summary.record(failure)
            for b, c, w in disjoint_triples(n):
                summary.moral_checks += 1
                failure = check_moral(g, b, c, w)
                if failure is not None:
                    summary.record(failure)
    return summary

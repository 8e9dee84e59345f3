"""Seed-set selection: six heuristic top-k algorithms plus two baselines.

Every algorithm accepts an optional centrality vector that reorders or
reweights its internal choices; ``None`` falls back to the classic form
(degree ordering, unit voting ability, uniform nominator choice).  All
ties anywhere break by ascending node id so runs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .centrality import CentralityVector, compute_centrality
from .errors import SeedSelectionError, UnknownNameError
from .graphs import WeightedGraph


@dataclass
class SeedSet:
    """Ordered distinct node ids plus how they were chosen."""

    nodes: list[int]
    algorithm: str
    centrality: str | None = None
    graph_id: str = ""

    @property
    def k(self) -> int:
        return len(self.nodes)


def _top_by_score(candidates, scores, k) -> list[int]:
    ranked = sorted(candidates, key=lambda u: (-scores[u], u))
    return ranked[:k]


def _scores_or_degree(graph, vector: CentralityVector | None) -> np.ndarray:
    if vector is None:
        return graph.degree_array()
    return vector.scores


def _centrality_name(vector: CentralityVector | None) -> str | None:
    return None if vector is None else vector.metric


def k_highest(
    graph: WeightedGraph, vector: CentralityVector, k: int
) -> SeedSet:
    """The k best-scoring nodes outright."""
    if k > graph.n:
        raise SeedSelectionError(f"k={k} exceeds {graph.n} nodes")
    nodes = _top_by_score(range(graph.n), vector.scores, k)
    return SeedSet(nodes, "k_highest", vector.metric)


def single_influencer(graph: WeightedGraph, vector: CentralityVector) -> SeedSet:
    """The single best-scoring node."""
    if graph.n == 0:
        raise SeedSelectionError("empty graph has no influencer")
    nodes = _top_by_score(range(graph.n), vector.scores, 1)
    return SeedSet(nodes, "single_influencer", vector.metric)


def random_seeds(graph: WeightedGraph, k: int, rng: np.random.Generator) -> SeedSet:
    """Uniform draw of k distinct nodes."""
    if k > graph.n:
        raise SeedSelectionError(f"k={k} exceeds {graph.n} nodes")
    nodes = [int(u) for u in rng.choice(graph.n, size=k, replace=False)]
    return SeedSet(nodes, "random")


# -- locally-leading-node selection ----------------------------------------------


def _local_index(graph, second_order: bool) -> list[int]:
    """Count of (extended-)neighborhood members with strictly larger degree.

    Dense-matrix formulation: predicted graphs are near-complete, where
    per-node set expansion of two-hop neighborhoods dominates the whole
    experiment loop.
    """
    deg = graph.degree_array()
    reach = graph.adjacency_matrix()
    if second_order:
        reach = reach + reach @ reach
        np.fill_diagonal(reach, 0.0)
    bigger = deg[None, :] > deg[:, None]
    return ((reach > 0) & bigger).sum(axis=1).tolist()


def lir(
    graph: WeightedGraph, vector: CentralityVector | None, k: int
) -> SeedSet:
    """Local leaders first: nodes no neighbor of which has larger degree.

    When fewer than k leaders exist, strata with index 1, 2, ... extend the
    pool, each sorted by the selection score.
    """
    li = _local_index(graph, second_order=False)
    scores = _scores_or_degree(graph, vector)
    eligible = [u for u in range(graph.n) if graph.degree(u) > 0]
    if k > len(eligible):
        raise SeedSelectionError(
            f"k={k} exceeds {len(eligible)} nodes with at least one edge"
        )
    chosen: list[int] = []
    for level in sorted(set(li[u] for u in eligible)):
        stratum = [u for u in eligible if li[u] == level]
        chosen.extend(_top_by_score(stratum, scores, len(stratum)))
        if len(chosen) >= k:
            break
    return SeedSet(chosen[:k], "lir", _centrality_name(vector))


def lir2(
    graph: WeightedGraph,
    vector: CentralityVector | None,
    k: int,
    strict_literal: bool = False,
) -> SeedSet:
    """Leaders over first- and second-order neighborhoods, grouped by index.

    ``strict_literal`` restricts the comparison pool to direct neighbors
    (the printed formula), collapsing the extension back onto plain LIR
    grouping.
    """
    if k > graph.n:
        raise SeedSelectionError(f"k={k} exceeds {graph.n} nodes")
    li2 = _local_index(graph, second_order=not strict_literal)
    scores = _scores_or_degree(graph, vector)
    chosen: list[int] = []
    for level in sorted(set(li2)):
        stratum = [u for u in range(graph.n) if li2[u] == level]
        chosen.extend(_top_by_score(stratum, scores, len(stratum)))
        if len(chosen) >= k:
            break
    return SeedSet(chosen[:k], "lir2", _centrality_name(vector))


# -- randomized nomination ---------------------------------------------------------


def _weighted_pick(rng, items, weights) -> int:
    total = sum(weights)
    if total <= 0:
        probs = None  # uniform
    else:
        probs = [w / total for w in weights]
    return int(items[rng.choice(len(items), p=probs)])


def joint_nomination(
    graph: WeightedGraph,
    vector: CentralityVector | None,
    k: int,
    rng: np.random.Generator,
) -> SeedSet:
    """Collect k distinct nominees via nominator/co-nominator rounds.

    Nominators are drawn proportionally to centrality score (uniform when
    none given), co-nominators proportionally to edge weight, and nominees
    from the common neighborhood proportionally to the product of their
    edge weights to both.  A nominator whose co-nominators share no
    neighbor with it nominates one of its neighbors directly.
    """
    if k < 1:
        raise SeedSelectionError("k must be >= 1")
    if k > graph.n:
        raise SeedSelectionError(f"k={k} exceeds {graph.n} nodes")
    nominator_weights = None
    if vector is not None:
        scores = vector.scores.astype(float)
        low = scores.min() if len(scores) else 0.0
        if low <= 0:
            scores = scores - low + 1e-9  # sampling needs positive mass
        nominator_weights = scores / scores.sum()
    adj = graph.adjacency_sets()
    nominees: list[int] = []
    seen: set[int] = set()
    max_rounds = 50 * k
    for _ in range(max_rounds):
        if len(nominees) >= k:
            break
        u = int(rng.choice(graph.n, p=nominator_weights))
        candidates = sorted(adj[u])
        if not candidates:
            continue
        pick = None
        pool = list(candidates)
        while pool:
            v = _weighted_pick(rng, pool, [float(graph.weight(u, x)) for x in pool])
            shared = sorted(adj[u] & adj[v])
            if shared:
                weights = [
                    float(graph.weight(u, x)) * float(graph.weight(v, x))
                    for x in shared
                ]
                pick = _weighted_pick(rng, shared, weights)
                break
            pool.remove(v)
        if pick is None:
            # no co-nominator shares a neighbor: nominate a neighbor directly
            pick = _weighted_pick(
                rng, candidates, [float(graph.weight(u, x)) for x in candidates]
            )
        if pick not in seen:
            seen.add(pick)
            nominees.append(pick)
    if len(nominees) < k:
        raise SeedSelectionError(
            f"joint nomination found {len(nominees)} of {k} nominees "
            f"within {max_rounds} rounds"
        )
    return SeedSet(nominees, "joint_nomination", _centrality_name(vector))


def voterank(
    graph: WeightedGraph, vector: CentralityVector | None, k: int
) -> SeedSet:
    """k rounds of voting; each node votes with its remaining ability.

    Voting ability starts at 1 (or at the node's centrality score), is
    zeroed on election, and neighbors of the elected lose 1/<s>, floored
    at 0.  Elected nodes neither vote nor receive votes.
    """
    if k > graph.n:
        raise SeedSelectionError(f"k={k} exceeds {graph.n} nodes")
    n = graph.n
    va = (
        np.ones(n)
        if vector is None
        else np.array(vector.scores, dtype=np.float64, copy=True)
    )
    penalty = 1 / float(graph.avg_strength()) if graph.num_edges else 0.0
    chosen: list[int] = []
    in_l = np.zeros(n, dtype=bool)
    for _ in range(k):
        score = np.zeros(n)
        for u in range(n):
            if in_l[u]:
                continue
            for v in graph.neighbors(u):
                if not in_l[v]:
                    score[v] += va[u]
        winner = min(
            (u for u in range(n) if not in_l[u]), key=lambda u: (-score[u], u)
        )
        chosen.append(winner)
        in_l[winner] = True
        va[winner] = 0.0
        for v in graph.neighbors(winner):
            va[v] = max(va[v] - penalty, 0.0)
    return SeedSet(chosen, "voterank", _centrality_name(vector))


# -- coloring-based selection ---------------------------------------------------------


def welsh_powell(graph: WeightedGraph) -> list[int]:
    """Greedy proper coloring in descending-degree order; colors from 0."""
    order = sorted(range(graph.n), key=lambda u: (-graph.degree(u), u))
    color = [-1] * graph.n
    for u in order:
        taken = {color[v] for v in graph.neighbors(u) if color[v] >= 0}
        c = 0
        while c in taken:
            c += 1
        color[u] = c
    return color


def graph_coloring_select(
    graph: WeightedGraph, vector: CentralityVector, k: int
) -> SeedSet:
    """Top-k by score inside the largest color class of a greedy coloring."""
    color = welsh_powell(graph)
    if not color:
        raise SeedSelectionError("empty graph cannot be colored")
    counts: dict[int, int] = {}
    for c in color:
        counts[c] = counts.get(c, 0) + 1
    best = min(counts, key=lambda c: (-counts[c], c))
    members = [u for u in range(graph.n) if color[u] == best]
    if k > len(members):
        raise SeedSelectionError(
            f"k={k} exceeds the largest independent set ({len(members)} nodes)"
        )
    nodes = _top_by_score(members, vector.scores, k)
    return SeedSet(nodes, "graph_coloring", vector.metric)


# -- registry dispatch -------------------------------------------------------------------

ALGORITHMS = (
    "k_highest",
    "single_influencer",
    "random",
    "lir",
    "lir2",
    "joint_nomination",
    "voterank",
    "graph_coloring",
)

_NEEDS_CENTRALITY = {"k_highest", "single_influencer", "graph_coloring"}


def select_seeds(
    graph: WeightedGraph,
    algorithm: str,
    k: int,
    centrality: str | None = None,
    centrality_weighted: bool = False,
    rng: np.random.Generator | None = None,
    graph_id: str = "",
    **centrality_params,
) -> SeedSet:
    """Run one registry algorithm, computing its centrality vector if needed."""
    if algorithm not in ALGORITHMS:
        raise UnknownNameError(
            f"unknown algorithm {algorithm!r}; expected one of {sorted(ALGORITHMS)}"
        )
    name = centrality
    if name is None and algorithm in _NEEDS_CENTRALITY:
        name = "degree"
    vector = (
        compute_centrality(graph, name, centrality_weighted, **centrality_params)
        if name is not None
        else None
    )
    if algorithm == "k_highest":
        seeds = k_highest(graph, vector, k)
    elif algorithm == "single_influencer":
        seeds = single_influencer(graph, vector)
    elif algorithm == "random":
        if rng is None:
            raise SeedSelectionError("random selection needs an rng")
        seeds = random_seeds(graph, k, rng)
    elif algorithm == "lir":
        seeds = lir(graph, vector, k)
    elif algorithm == "lir2":
        seeds = lir2(graph, vector, k)
    elif algorithm == "joint_nomination":
        if rng is None:
            raise SeedSelectionError("joint nomination needs an rng")
        seeds = joint_nomination(graph, vector, k, rng)
    elif algorithm == "voterank":
        seeds = voterank(graph, vector, k)
    else:
        seeds = graph_coloring_select(graph, vector, k)
    seeds.graph_id = graph_id
    return seeds

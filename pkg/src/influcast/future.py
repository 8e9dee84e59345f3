"""Predict a graph's future state and pick the influencers it will have.

Normalized similarity scores are read as per-time-unit connection
probabilities; over a horizon of t units a candidate pair connects unless
all t independent trials fail, giving the added edge weight 1 - (1-p)^t.
Original edges pass through untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import WeightedGraph
from .linkpred import DEFAULT_EPSILON, normalize, score_all_pairs
from .topk import SeedSet, select_seeds


@dataclass
class PredictedGraph:
    """Original graph plus probability-weighted predicted edges."""

    graph: WeightedGraph
    predicted_edges: dict[tuple[int, int], float]
    metric: str
    horizon: int


def _future_weight(p: float, t: int) -> float:
    if t == 1:
        return p  # exact single-step identity, no pow round-off
    return 1.0 - (1.0 - p) ** t


def predict_future_graph(
    graph: WeightedGraph,
    metric: str,
    weighted: bool = False,
    epsilon: float = DEFAULT_EPSILON,
    t: int = 1,
    score_floor: float = 0.0,
) -> PredictedGraph:
    """Add every positively-scored non-adjacent pair as a future edge.

    ``score_floor`` optionally drops pairs whose normalized score does not
    exceed it (memory control on dense candidate sets; 0 keeps everything).
    """
    if t < 1:
        raise ValueError(f"horizon t must be >= 1, got {t}")
    table = normalize(score_all_pairs(graph, metric, weighted, epsilon))
    added = {
        pair: _future_weight(p, t)
        for pair, p in sorted(table.scores.items())
        if p > score_floor
    }
    future = graph.with_extra_edges([(u, v, w) for (u, v), w in added.items()])
    return PredictedGraph(future, added, metric, t)


def future_top_k(
    graph: WeightedGraph,
    metric: str,
    algorithm: str,
    k: int,
    weighted: bool = False,
    epsilon: float = DEFAULT_EPSILON,
    t: int = 1,
    centrality: str | None = None,
    centrality_weighted: bool = True,
    rng: np.random.Generator | None = None,
    **centrality_params,
) -> SeedSet:
    """Predict the future graph, then select seeds on it."""
    predicted = predict_future_graph(graph, metric, weighted, epsilon, t)
    return select_seeds(
        predicted.graph,
        algorithm,
        k,
        centrality=centrality,
        centrality_weighted=centrality_weighted,
        rng=rng,
        graph_id=f"predicted:{metric}:t={t}",
        **centrality_params,
    )

"""Path-based similarity scores for non-adjacent node pairs.

Seven metric families, each with an optional weighted form (Jaccard has
none).  The per-pair functions are the readable reference implementations
and preserve exact number types; ``score_all_pairs`` is the batch driver
used by the future-graph predictor and evaluates the same formulas through
dense matrix products.

Two-edge paths u-x-v contribute their weight sum b = w(u,x) + w(x,v); for
three-edge paths u-i-j-v the two overlapping segments contribute
b(u,i,j) = w(u,i) + w(i,j) and b(i,j,v) = w(i,j) + w(j,v).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import UnknownNameError
from .graphs import WeightedGraph

DEFAULT_EPSILON = 1e-3


@dataclass
class SimilarityTable:
    """Sparse map from non-adjacent unordered pairs (u < v) to scores > 0."""

    metric: str
    weighted: bool
    epsilon: float
    scores: dict[tuple[int, int], float] = field(default_factory=dict)
    normalized: bool = False


def _common(graph, u, v):
    adj = graph.adjacency_sets()
    return sorted(adj[u] & adj[v])


def common_neighbors(graph: WeightedGraph, u: int, v: int, weighted: bool = False):
    """Count of shared neighbors; weighted: half the two-edge path weight sums."""
    shared = _common(graph, u, v)
    if not weighted:
        return len(shared)
    return sum((graph.weight(u, x) + graph.weight(x, v)) / 2 for x in shared)


def jaccard(graph: WeightedGraph, u: int, v: int):
    """Shared neighbors over the neighborhood union; 0 when the union is empty."""
    adj = graph.adjacency_sets()
    union = adj[u] | adj[v]
    if not union:
        return 0
    return len(adj[u] & adj[v]) / len(union)


def local_path(
    graph: WeightedGraph,
    u: int,
    v: int,
    epsilon: float = DEFAULT_EPSILON,
    weighted: bool = False,
):
    """Common neighbors plus an epsilon-discounted three-edge path term."""
    base = common_neighbors(graph, u, v, weighted)
    paths = graph.three_edge_paths(u, v)
    if not weighted:
        return base + epsilon * len(paths)
    extra = sum(
        (graph.weight(u, i) + graph.weight(i, j))
        * (graph.weight(i, j) + graph.weight(j, v))
        / 4
        for _, i, j, _ in paths
    )
    return base + epsilon * extra


def resource_allocation(graph: WeightedGraph, u: int, v: int, weighted: bool = False):
    """Shared neighbors discounted by their degree (weighted: by strength)."""
    shared = _common(graph, u, v)
    if not weighted:
        return sum(1 / graph.degree(x) for x in shared)
    return sum(
        (graph.weight(u, x) + graph.weight(x, v)) / graph.strength(x) for x in shared
    )


def quasi_local_ra(
    graph: WeightedGraph,
    u: int,
    v: int,
    epsilon: float = DEFAULT_EPSILON,
    weighted: bool = False,
):
    """Resource allocation plus epsilon-discounted three-edge path terms."""
    base = resource_allocation(graph, u, v, weighted)
    paths = graph.three_edge_paths(u, v)
    if not weighted:
        extra = sum(1 / (graph.degree(i) * graph.degree(j)) for _, i, j, _ in paths)
    else:
        extra = sum(
            (graph.weight(u, i) + graph.weight(i, j))
            * (graph.weight(i, j) + graph.weight(j, v))
            / (graph.strength(i) * graph.strength(j))
            for _, i, j, _ in paths
        )
    return base + epsilon * extra


def ra_squared(graph: WeightedGraph, u: int, v: int, weighted: bool = False):
    """Resource allocation with a squared-degree penalty on shared neighbors.

    Approximates the chance that a shared neighbor introduces the specific
    pair among its ~k^2/2 neighbor pairs, hence the 2/k^2 terms.
    """
    shared = _common(graph, u, v)
    if not weighted:
        return sum(2 / graph.degree(x) ** 2 for x in shared)
    return sum(
        (graph.weight(u, x) + graph.weight(x, v)) / graph.strength(x) ** 2
        for x in shared
    )


def quasi_local_ra_squared(
    graph: WeightedGraph,
    u: int,
    v: int,
    epsilon: float = DEFAULT_EPSILON,
    weighted: bool = False,
):
    """Squared-penalty resource allocation with three-edge path terms."""
    base = ra_squared(graph, u, v, weighted)
    paths = graph.three_edge_paths(u, v)
    if not weighted:
        extra = sum(
            4 / (graph.degree(i) ** 2 * graph.degree(j) ** 2) for _, i, j, _ in paths
        )
    else:
        extra = sum(
            (graph.weight(u, i) + graph.weight(i, j))
            * (graph.weight(i, j) + graph.weight(j, v))
            / (graph.strength(i) ** 2 * graph.strength(j) ** 2)
            for _, i, j, _ in paths
        )
    return base + epsilon * extra


#: metric name -> (per-pair function, takes epsilon, has weighted form)
METRICS = {
    "cn": (common_neighbors, False, True),
    "jaccard": (jaccard, False, False),
    "local_path": (local_path, True, True),
    "ra": (resource_allocation, False, True),
    "qra": (quasi_local_ra, True, True),
    "ra2": (ra_squared, False, True),
    "qr2": (quasi_local_ra_squared, True, True),
}


def pair_score(
    graph: WeightedGraph,
    metric: str,
    u: int,
    v: int,
    weighted: bool = False,
    epsilon: float = DEFAULT_EPSILON,
):
    """Evaluate one registry metric on a single pair."""
    fn, takes_eps, has_weighted = _lookup(metric)
    if weighted and not has_weighted:
        raise UnknownNameError(f"metric {metric!r} has no weighted form")
    kwargs = {}
    if takes_eps:
        kwargs["epsilon"] = epsilon
    if has_weighted:
        kwargs["weighted"] = weighted
    return fn(graph, u, v, **kwargs)


def _lookup(metric):
    try:
        return METRICS[metric]
    except KeyError:
        raise UnknownNameError(
            f"unknown metric {metric!r}; expected one of {sorted(METRICS)}"
        ) from None


def score_all_pairs(
    graph: WeightedGraph,
    metric: str,
    weighted: bool = False,
    epsilon: float = DEFAULT_EPSILON,
) -> SimilarityTable:
    """Score every non-adjacent unordered pair; zero scores stay implicit.

    Matrix formulation of the per-pair definitions.  For non-adjacent pairs
    every length-3 walk u-i-j-v is automatically simple (a repeated vertex
    would require the edge uv), so plain matrix products count exactly the
    three-edge simple paths.
    """
    _, _, has_weighted = _lookup(metric)
    if weighted and not has_weighted:
        raise UnknownNameError(f"metric {metric!r} has no weighted form")
    n = graph.n
    A = graph.adjacency_matrix()
    k = graph.degree_array()
    inv_k = np.divide(1.0, k, out=np.zeros(n), where=k > 0)

    if weighted:
        W = graph.weight_matrix()
        s = graph.strength_array()
        inv_s = np.divide(1.0, s, out=np.zeros(n), where=s > 0)

    def three_path_sum(inv):
        # sum over paths u-i-j-v of b(u,i,j) * b(i,j,v) * inv_i * inv_j
        Wc = W * inv[None, :]
        Ac = A * inv[None, :]
        W2c = (W * W) * inv[None, :]
        return Wc @ Wc @ A + Wc @ Ac @ W + Ac @ W2c @ A + Ac @ Wc @ W

    if metric == "cn":
        M = ((W @ A + A @ W) / 2) if weighted else (A @ A)
    elif metric == "jaccard":
        C = A @ A
        union = k[:, None] + k[None, :] - C
        M = np.divide(C, union, out=np.zeros_like(C), where=union > 0)
    elif metric == "local_path":
        if weighted:
            M = (W @ A + A @ W) / 2 + (epsilon / 4) * three_path_sum(np.ones(n))
        else:
            M = A @ A + epsilon * (A @ A @ A)
    elif metric == "ra":
        if weighted:
            M = W @ (A * inv_s[:, None]) + A @ (W * inv_s[:, None])
        else:
            M = (A * inv_k[None, :]) @ A
    elif metric == "qra":
        if weighted:
            M = W @ (A * inv_s[:, None]) + A @ (W * inv_s[:, None])
            M = M + epsilon * three_path_sum(inv_s)
        else:
            T = A * inv_k[None, :]
            M = T @ A + epsilon * (T @ T @ A)
    elif metric == "ra2":
        if weighted:
            inv_s2 = inv_s * inv_s
            M = W @ (A * inv_s2[:, None]) + A @ (W * inv_s2[:, None])
        else:
            M = 2 * (A * (inv_k * inv_k)[None, :]) @ A
    elif metric == "qr2":
        if weighted:
            inv_s2 = inv_s * inv_s
            M = W @ (A * inv_s2[:, None]) + A @ (W * inv_s2[:, None])
            M = M + epsilon * three_path_sum(inv_s2)
        else:
            T = A * (inv_k * inv_k)[None, :]
            M = 2 * (T @ A) + 4 * epsilon * (T @ T @ A)
    else:  # pragma: no cover - guarded by _lookup
        raise UnknownNameError(metric)

    scores = {}
    iu, iv = np.triu_indices(n, k=1)
    vals = M[iu, iv]
    present = A[iu, iv] > 0
    keep = (vals > 0) & ~present
    for u, v, val in zip(iu[keep], iv[keep], vals[keep]):
        scores[(int(u), int(v))] = float(val)
    return SimilarityTable(metric, weighted, epsilon, scores, normalized=False)


def normalize(table: SimilarityTable) -> SimilarityTable:
    """Divide every score by the table maximum, mapping into (0, 1]."""
    if table.normalized:
        raise ValueError("table is already normalized")
    if not table.scores:
        return replace(table, normalized=True)
    top = max(table.scores.values())
    scaled = {pair: score / top for pair, score in table.scores.items()}
    return replace(table, scores=scaled, normalized=True)

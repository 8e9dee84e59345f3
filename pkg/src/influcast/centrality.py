"""Per-node structural importance scores, unweighted and weighted modes.

All metrics return a :class:`CentralityVector`.  Iterative solvers pin
tolerance 1e-10 (max-norm of the iterate delta), 1000 iterations, all-ones
start, and raise :class:`ConvergenceError` carrying the last iterate when
the budget runs out.  Two numerical details deviate from a textbook power
iteration, both required for bipartite graphs where the plain iteration
oscillates forever between two states:

* eigenvector centrality iterates the shifted operator A + I, which keeps
  the same principal eigenvector while breaking the +/-lambda symmetry;
* random-walk scores at damping 1 average each iterate with its
  predecessor (the lazy walk), which keeps the same fixed point.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, UnknownNameError
from .graphs import UNREACHABLE, WeightedGraph

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 1000


@dataclass
class CentralityVector:
    """Scores per node for one named metric plus the parameters used."""

    metric: str
    weighted: bool
    scores: np.ndarray
    params: dict = field(default_factory=dict)

    def top_nodes(self) -> list[int]:
        """Node ids by descending score, ties broken by ascending id."""
        order = sorted(range(len(self.scores)), key=lambda u: (-self.scores[u], u))
        return order


@dataclass(frozen=True)
class BridgeStructure:
    """Bridge from i into j's neighborhood: members, width, sufficiency."""

    source: int
    target: int
    nodes: frozenset[int]
    width: int
    threshold: int

    @property
    def sufficient(self) -> bool:
        return self.width >= self.threshold


def _vector(metric, weighted, values, **params):
    return CentralityVector(
        metric, weighted, np.asarray(values, dtype=np.float64), params
    )


# -- local metrics -----------------------------------------------------------


def degree_centrality(graph: WeightedGraph, weighted: bool = False) -> CentralityVector:
    values = (
        [graph.strength(u) for u in range(graph.n)]
        if weighted
        else [graph.degree(u) for u in range(graph.n)]
    )
    return _vector("degree", weighted, values)


def coreness(graph: WeightedGraph, weighted: bool = False) -> CentralityVector:
    """Shell decomposition: peel nodes in increasing residual degree/strength.

    Weighted mode assigns floor(residual strength) at removal time and
    subtracts edge weights from heavier neighbors instead of decrementing.
    """
    n = graph.n
    resid = [
        graph.strength(u) if weighted else graph.degree(u) for u in range(n)
    ]
    core = [0] * n
    done = [False] * n
    heap = [(resid[u], u) for u in range(n)]
    heapq.heapify(heap)
    while heap:
        r, v = heapq.heappop(heap)
        if done[v] or r > resid[v]:
            continue
        done[v] = True
        core[v] = math.floor(resid[v]) if weighted else resid[v]
        for u in graph.neighbors(v):
            if not done[u] and resid[u] > resid[v]:
                resid[u] -= graph.weight(u, v) if weighted else 1
                heapq.heappush(heap, (resid[u], u))
    return _vector("coreness", weighted, core)


def _h_operator(values) -> int:
    """Largest h such that at least h of the values are >= h."""
    best = 0
    for rank, x in enumerate(sorted(values, reverse=True), start=1):
        if x >= rank:
            best = rank
        else:
            break
    return best


def h_index(
    graph: WeightedGraph, order: int = 10, weighted: bool = False
) -> CentralityVector:
    """Iterated H operator over neighbor values, seeded with degree/strength."""
    if order < 0:
        raise ValueError("order must be >= 0")
    current = [
        graph.strength(u) if weighted else graph.degree(u) for u in range(graph.n)
    ]
    for _ in range(order):
        current = [
            _h_operator([current[v] for v in graph.neighbors(u)])
            for u in range(graph.n)
        ]
    return _vector("h_index", weighted, current, order=order)


def w_lobby(graph: WeightedGraph) -> CentralityVector:
    """Largest k with at least k neighbors of strength >= k."""
    values = [
        _h_operator([graph.strength(v) for v in graph.neighbors(u)])
        for u in range(graph.n)
    ]
    return _vector("w_lobby", True, values)


def localrank(graph: WeightedGraph) -> CentralityVector:
    """Sum of |N(w)| + |N_2(w)| over the two-step neighborhood expansion."""
    reach = [
        graph.degree(w) + len(graph.neighbors(w, order=2)) for w in range(graph.n)
    ]
    values = [
        sum(reach[w] for v in graph.neighbors(u) for w in graph.neighbors(v))
        for u in range(graph.n)
    ]
    return _vector("localrank", False, values)


def clustering_coefficient(graph: WeightedGraph, u: int) -> float:
    """Fraction of realised links among u's neighbors, over k(k-1).

    Undirected edges among neighbors are counted once, matching the
    ordered-pair denominator; nodes with degree < 2 get 0.
    """
    k = graph.degree(u)
    if k < 2:
        return 0.0
    nbrs = sorted(graph.neighbors(u))
    links = sum(
        1
        for a_idx, a in enumerate(nbrs)
        for b in nbrs[a_idx + 1 :]
        if graph.has_edge(a, b)
    )
    return links / (k * (k - 1))


def clusterrank(
    graph: WeightedGraph, alpha: float = 10.0, weighted: bool = False
) -> CentralityVector:
    """Neighbor mass discounted exponentially by the local clustering."""
    values = []
    for u in range(graph.n):
        mass = sum(
            (float(graph.strength(j)) if weighted else graph.degree(j)) + 1
            for j in graph.neighbors(u)
        )
        values.append(alpha ** (-clustering_coefficient(graph, u)) * mass)
    return _vector("clusterrank", weighted, values, alpha=alpha)


# -- path-based metrics --------------------------------------------------------


def closeness(graph: WeightedGraph) -> CentralityVector:
    """Mean reciprocal travel time to all other nodes; unreachable adds 0."""
    n = graph.n
    values = []
    for u in range(n):
        if n < 2:
            values.append(0.0)
            continue
        dist = graph.distances_from([u])
        total = sum(
            1 / d for v, d in enumerate(dist) if v != u and d != UNREACHABLE
        )
        values.append(total / (n - 1))
    return _vector("closeness", True, values)


def betweenness(graph: WeightedGraph) -> CentralityVector:
    """Fraction of minimum-travel-time paths through each interior node.

    Brandes accumulation over travel-time shortest paths; every co-minimal
    path counts, pairs are unordered, endpoints excluded, no normalisation.
    """
    n = graph.n
    bc = np.zeros(n)
    for source in range(n):
        dist = [UNREACHABLE] * n
        sigma = [0] * n
        preds: list[list[int]] = [[] for _ in range(n)]
        dist[source] = 0
        sigma[source] = 1
        settled = []
        heap = [(0, source)]
        while heap:
            d, v = heapq.heappop(heap)
            if d > dist[v]:
                continue
            settled.append(v)
            for w in sorted(graph.neighbors(v)):
                nd = d + 1 / graph.weight(v, w)
                if nd < dist[w]:
                    dist[w] = nd
                    sigma[w] = sigma[v]
                    preds[w] = [v]
                    heapq.heappush(heap, (nd, w))
                elif nd == dist[w]:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = [0.0] * n
        for w in reversed(settled):
            for v in preds[w]:
                delta[v] += sigma[v] / sigma[w] * (1 + delta[w])
            if w != source:
                bc[w] += delta[w]
    # each unordered pair was accumulated from both endpoints
    return _vector("betweenness", True, bc / 2)


# -- spectral / iterative metrics ----------------------------------------------


def eigenvector(
    graph: WeightedGraph, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> CentralityVector:
    """Principal eigenvector of the weight matrix, scaled to unit maximum."""
    n = graph.n
    if n == 0:
        return _vector("eigenvector", True, [])
    if graph.num_edges == 0:
        return _vector("eigenvector", True, np.zeros(n))
    W = graph.weight_matrix()
    x = np.ones(n)
    for _ in range(max_iter):
        y = W @ x + x  # shifted operator, same eigenvectors
        y /= y.max()
        if np.max(np.abs(y - x)) < tol:
            return _vector("eigenvector", True, y / y.max(), tol=tol)
        x = y
    raise ConvergenceError(
        f"eigenvector centrality did not converge in {max_iter} iterations",
        last_iterate=x,
    )


def _walk_matrix(graph: WeightedGraph, weighted: bool) -> np.ndarray:
    """Column-stochastic transition matrix; isolated nodes give zero columns."""
    if weighted:
        M = graph.weight_matrix()
        norms = graph.strength_array()
    else:
        M = graph.adjacency_matrix()
        norms = graph.degree_array()
    inv = np.divide(1.0, norms, out=np.zeros(graph.n), where=norms > 0)
    return M * inv[None, :]


def pagerank(
    graph: WeightedGraph,
    d: float = 1.0,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    weighted: bool = False,
) -> CentralityVector:
    """Fixed point of score(u) = (1-d) + d * sum over neighbors of score/k.

    Weighted mode redistributes by w(u,v)/s_v.  At d=1 the update is
    averaged with the previous iterate so bipartite structures converge;
    isolated nodes end at (1-d).
    """
    if not (0 <= d <= 1):
        raise ValueError(f"damping {d} outside [0, 1]")
    M = _walk_matrix(graph, weighted)
    x = np.ones(graph.n)
    for _ in range(max_iter):
        y = (1 - d) + d * (M @ x)
        if d == 1.0:
            y = 0.5 * (x + y)
        if np.max(np.abs(y - x)) < tol:
            return _vector("pagerank", weighted, y, d=d, tol=tol)
        x = y
    raise ConvergenceError(
        f"pagerank did not converge in {max_iter} iterations", last_iterate=x
    )


def leaderrank(
    graph: WeightedGraph,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    weighted: bool = False,
) -> CentralityVector:
    """Random-walk scores with a ground node tied to every other node.

    Original nodes start at 1, the ground node at 0; at convergence the
    ground score is split evenly back over the original nodes.
    """
    n = graph.n
    if n == 0:
        return _vector("leaderrank", weighted, [])
    ground_edges = [(u, n, 1.0) for u in range(n)]
    augmented = WeightedGraph(n + 1, list(graph.edges()) + ground_edges)
    M = _walk_matrix(augmented, weighted)
    x = np.append(np.ones(n), 0.0)
    for _ in range(max_iter):
        y = 0.5 * (x + M @ x)  # lazy walk: ground star alone is bipartite
        if np.max(np.abs(y - x)) < tol:
            scores = y[:n] + y[n] / n
            return _vector("leaderrank", weighted, scores, tol=tol)
        x = y
    raise ConvergenceError(
        f"leaderrank did not converge in {max_iter} iterations", last_iterate=x
    )


# -- contagion-aware metrics -----------------------------------------------------


def balanced_index(
    graph: WeightedGraph,
    a: float = 1 / 3,
    b: float = 1 / 3,
    c: float = 1 / 3,
    theta: float = 0.3,
    weighted: bool = False,
) -> CentralityVector:
    """Mix of own resistance, degree, and mass of nearly-converted neighbors.

    Resistance is theta times degree (unweighted) or strength (weighted).
    The third term counts neighbors j whose resistance is already met:
    literally r_j == 1 in the unweighted form, r_j <= w(i,j) weighted.
    """
    if min(a, b, c) < 0 or abs(a + b + c - 1) > 1e-9:
        raise ValueError(f"weights ({a},{b},{c}) must be nonnegative and sum to 1")
    if not (0 <= theta <= 1):
        raise ValueError(f"theta {theta} outside [0, 1]")
    values = []
    for i in range(graph.n):
        if weighted:
            r_i = theta * float(graph.strength(i))
            tail = sum(
                float(graph.strength(j)) - float(graph.weight(i, j))
                for j in graph.neighbors(i)
                if theta * float(graph.strength(j)) <= float(graph.weight(i, j))
            )
            values.append(a * r_i + b * float(graph.strength(i)) + c * tail)
        else:
            r_i = theta * graph.degree(i)
            tail = sum(
                graph.degree(j) - 1
                for j in graph.neighbors(i)
                if theta * graph.degree(j) == 1
            )
            values.append(a * r_i + b * graph.degree(i) + c * tail)
    return _vector("balanced_index", weighted, values, a=a, b=b, c=c, theta=theta)


def _bridge_widths(graph: WeightedGraph) -> np.ndarray:
    """width[i, j] = number of j-neighbors within two hops of i."""
    n = graph.n
    A = graph.adjacency_matrix()
    ball2 = np.zeros((n, n))
    for i in range(n):
        members = {i} | graph.neighbors(i) | graph.neighbors(i, order=2)
        if graph.degree(i) == 0:
            members = set()  # no neighbor can vouch for an isolated node
        ball2[i, list(members)] = 1.0
    return ball2 @ A


def resistance_thresholds(graph: WeightedGraph, theta: float) -> list[int]:
    """Per-node conversion widths: ceil(theta * strength), at least 1."""
    return [
        max(1, math.ceil(theta * float(graph.strength(j)))) for j in range(graph.n)
    ]


def bridge_structure(
    graph: WeightedGraph, i: int, j: int, theta: float
) -> BridgeStructure:
    """Bridge from i to j: j-neighbors adjacent to or inside N(i) + {i}."""
    near = {i} | graph.neighbors(i) | graph.neighbors(i, order=2)
    if graph.degree(i) == 0:
        near = set()
    nodes = frozenset(graph.neighbors(j) & near)
    threshold = max(1, math.ceil(theta * float(graph.strength(j))))
    return BridgeStructure(i, j, nodes, len(nodes), threshold)


def sufficient_bridge_counts(graph: WeightedGraph, theta: float) -> list[int]:
    """Per-node count of positive-width bridges wide enough to convert.

    Diagnostic companion to complex-path centrality; nothing consumes it.
    """
    widths = _bridge_widths(graph)
    thresholds = resistance_thresholds(graph, theta)
    return [
        sum(
            1
            for j in range(graph.n)
            if j != i and widths[i, j] > 0 and widths[i, j] >= thresholds[j]
        )
        for i in range(graph.n)
    ]


def complex_path_centrality(graph: WeightedGraph, theta: float = 0.3) -> CentralityVector:
    """Mean size of hop-shortest paths that stay on sufficiently wide bridges.

    A step x -> y is traversable when the bridge from x into y's
    neighborhood is at least y's conversion width; unreachable targets
    contribute nothing, and nodes adjacent to everyone score 0.
    """
    if not (0 <= theta <= 1):
        raise ValueError(f"theta {theta} outside [0, 1]")
    n = graph.n
    widths = _bridge_widths(graph)
    thresholds = resistance_thresholds(graph, theta)
    # directed traversable adjacency: x -> y usable iff width[x,y] >= T_y
    out_edges: list[list[int]] = [
        [
            y
            for y in sorted(graph.neighbors(x))
            if widths[x, y] >= thresholds[y]
        ]
        for x in range(n)
    ]
    values = []
    for i in range(n):
        denom = n - graph.degree(i)
        if denom <= 0:
            values.append(0.0)
            continue
        hops = [-1] * n
        hops[i] = 0
        queue = [i]
        while queue:
            nxt = []
            for x in queue:
                for y in out_edges[x]:
                    if hops[y] < 0:
                        hops[y] = hops[x] + 1
                        nxt.append(y)
            queue = nxt
        total = sum(h + 1 for j, h in enumerate(hops) if j != i and h > 0)
        values.append(total / denom)
    return _vector("complex_path", True, values, theta=theta)


# -- registry ---------------------------------------------------------------------

#: name -> (function taking (graph, weighted, params), weighted mode allowed)
_UNWEIGHTED_ONLY = {"localrank"}
_MODE_FLAG = {
    "degree",
    "coreness",
    "h_index",
    "clusterrank",
    "pagerank",
    "leaderrank",
    "balanced_index",
}

CENTRALITIES = (
    "degree",
    "coreness",
    "h_index",
    "w_lobby",
    "localrank",
    "clusterrank",
    "closeness",
    "betweenness",
    "eigenvector",
    "pagerank",
    "leaderrank",
    "balanced_index",
    "complex_path",
)


def compute_centrality(
    graph: WeightedGraph,
    name: str,
    weighted: bool = False,
    *,
    h_order: int = 10,
    alpha: float = 10.0,
    d: float = 1.0,
    theta: float = 0.3,
    bi_weights: tuple[float, float, float] = (1 / 3, 1 / 3, 1 / 3),
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> CentralityVector:
    """Registry dispatcher used by seed selection, the service, and the CLI."""
    if name not in CENTRALITIES:
        raise UnknownNameError(
            f"unknown centrality {name!r}; expected one of {sorted(CENTRALITIES)}"
        )
    if weighted and name in _UNWEIGHTED_ONLY:
        raise UnknownNameError(f"centrality {name!r} has no weighted form")
    use_weighted = weighted and name in _MODE_FLAG
    if name == "degree":
        return degree_centrality(graph, use_weighted)
    if name == "coreness":
        return coreness(graph, use_weighted)
    if name == "h_index":
        return h_index(graph, order=h_order, weighted=use_weighted)
    if name == "w_lobby":
        return w_lobby(graph)
    if name == "localrank":
        return localrank(graph)
    if name == "clusterrank":
        return clusterrank(graph, alpha=alpha, weighted=use_weighted)
    if name == "closeness":
        return closeness(graph)
    if name == "betweenness":
        return betweenness(graph)
    if name == "eigenvector":
        return eigenvector(graph, tol=tol, max_iter=max_iter)
    if name == "pagerank":
        return pagerank(graph, d=d, tol=tol, max_iter=max_iter, weighted=use_weighted)
    if name == "leaderrank":
        return leaderrank(graph, tol=tol, max_iter=max_iter, weighted=use_weighted)
    if name == "balanced_index":
        a, b, c = bi_weights
        return balanced_index(graph, a=a, b=b, c=c, theta=theta, weighted=use_weighted)
    return complex_path_centrality(graph, theta=theta)

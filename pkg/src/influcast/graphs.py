"""Immutable weighted undirected graphs with reciprocal-weight distances.

Edge weights live in (0, 1] and are read as per-time-unit transmission
probabilities; the travel time of an edge is the geometric-distribution mean
1/w.  All arithmetic in this module stays in pure Python so exact number
types (``fractions.Fraction``) pass through untouched; float graphs behave
identically.  Dense numpy views are built on demand for the vectorised
scoring and centrality kernels.
"""

from __future__ import annotations

import heapq
import math
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .errors import EmptyGraphError, GraphConstructionError, NoSuchEdgeError

#: Distance reported for pairs with no connecting path.
UNREACHABLE = math.inf


class PathSums(NamedTuple):
    """Total edge distance and total edge weight along a path."""

    distance_total: object
    weight_total: object


class WeightedGraph:
    """Undirected graph on dense node ids 0..n-1 with weights in (0, 1].

    Instances are immutable after construction and safe for concurrent
    reads.  Derived graphs (edge samples, predicted graphs) reuse node ids.
    """

    __slots__ = ("n", "_adj", "_num_edges", "_degree_arr", "_strength_arr")

    def __init__(self, n: int, weighted_edges: Sequence[tuple]):
        if n < 0:
            raise GraphConstructionError(f"node count must be >= 0, got {n}")
        self.n = n
        self._adj: list[dict] = [dict() for _ in range(n)]
        count = 0
        for u, v, w in weighted_edges:
            if u == v:
                raise GraphConstructionError(f"self-loop on node {u}")
            if not (0 <= u < n) or not (0 <= v < n):
                raise GraphConstructionError(f"edge ({u},{v}) out of range [0,{n})")
            if not (0 < w <= 1):
                raise GraphConstructionError(
                    f"edge ({u},{v}) weight {w} outside (0, 1]"
                )
            if v in self._adj[u]:
                raise GraphConstructionError(f"duplicate edge ({u},{v})")
            self._adj[u][v] = w
            self._adj[v][u] = w
            count += 1
        self._num_edges = count
        self._degree_arr = None
        self._strength_arr = None

    # -- basic accessors ---------------------------------------------------

    @property
    def num_edges(self) -> int:
        return self._num_edges

    def edges(self) -> Iterator[tuple]:
        """Yield (u, v, w) once per edge with u < v, in sorted order."""
        for u in range(self.n):
            for v in sorted(self._adj[u]):
                if v > u:
                    yield u, v, self._adj[u][v]

    def has_edge(self, u: int, v: int) -> bool:
        self._check_node(u)
        self._check_node(v)
        return v in self._adj[u]

    def weight(self, u: int, v: int):
        try:
            return self._adj[u][v]
        except (KeyError, IndexError):
            raise NoSuchEdgeError(f"no edge between {u} and {v}") from None

    def edge_distance(self, u: int, v: int):
        """Travel time of edge uv: the reciprocal of its weight."""
        return 1 / self.weight(u, v)

    def degree(self, u: int) -> int:
        self._check_node(u)
        return len(self._adj[u])

    def strength(self, u: int):
        """Sum of weights incident to u (weighted degree)."""
        self._check_node(u)
        return sum(self._adj[u].values())

    def avg_degree(self):
        if self.n == 0:
            raise EmptyGraphError("average degree of an empty graph")
        return 2 * self._num_edges / self.n

    def avg_strength(self):
        if self.n == 0:
            raise EmptyGraphError("average strength of an empty graph")
        return sum(self.strength(u) for u in range(self.n)) / self.n

    def neighbors(self, u: int, order: int = 1) -> set:
        """Nodes at unweighted hop distance exactly ``order`` from u."""
        self._check_node(u)
        if order < 1:
            raise ValueError("order must be >= 1")
        seen = {u}
        frontier = {u}
        for _ in range(order):
            frontier = {
                v for x in frontier for v in self._adj[x] if v not in seen
            }
            seen |= frontier
        return frontier

    # -- paths and distances -----------------------------------------------

    def path_sums(self, path: Sequence[int]) -> PathSums:
        """Distance and weight totals over consecutive pairs of ``path``."""
        dist_total = 0
        weight_total = 0
        for u, v in zip(path, path[1:]):
            if v not in self._adj[u]:
                raise NoSuchEdgeError(f"path broken: no edge between {u} and {v}")
            w = self._adj[u][v]
            dist_total = dist_total + 1 / w
            weight_total = weight_total + w
        return PathSums(dist_total, weight_total)

    def distances_from(self, sources: Sequence[int]) -> list:
        """Minimum travel time from the closest source to every node.

        Dijkstra over reciprocal weights; unreachable nodes get UNREACHABLE.
        """
        dist = [UNREACHABLE] * self.n
        heap = []
        for s in sources:
            self._check_node(s)
            dist[s] = 0
            heapq.heappush(heap, (0, s))
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for v, w in self._adj[u].items():
                nd = d + 1 / w
                if nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
        return dist

    def shortest_distance(self, u: int, v: int):
        """Minimum travel time between u and v; 0 for u == v."""
        self._check_node(u)
        self._check_node(v)
        if u == v:
            return 0
        dist = [UNREACHABLE] * self.n
        dist[u] = 0
        heap = [(0, u)]
        while heap:
            d, x = heapq.heappop(heap)
            if x == v:
                return d
            if d > dist[x]:
                continue
            for y, w in self._adj[x].items():
                nd = d + 1 / w
                if nd < dist[y]:
                    dist[y] = nd
                    heapq.heappush(heap, (nd, y))
        return UNREACHABLE

    def three_edge_paths(self, u: int, v: int) -> list[tuple[int, int, int, int]]:
        """All simple paths (u, i, j, v) of exactly three edges."""
        self._check_node(u)
        self._check_node(v)
        if u == v:
            raise ValueError("endpoints must differ")
        out = []
        nv = self._adj[v]
        for i in sorted(self._adj[u]):
            if i == v:
                continue
            for j in sorted(self._adj[i]):
                if j != u and j != v and j in nv:
                    out.append((u, i, j, v))
        return out

    def connected_components(self) -> list[list[int]]:
        """Connected components as sorted node lists, largest-first order by id."""
        seen = [False] * self.n
        comps = []
        for start in range(self.n):
            if seen[start]:
                continue
            comp = [start]
            seen[start] = True
            queue = [start]
            while queue:
                x = queue.pop()
                for y in self._adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    # -- derived graphs ------------------------------------------------------

    def with_extra_edges(self, new_edges: Sequence[tuple]) -> "WeightedGraph":
        """New graph with the same nodes, existing edges, and ``new_edges``."""
        return WeightedGraph(self.n, list(self.edges()) + list(new_edges))

    def induced_subgraph(self, nodes: Sequence[int]) -> "WeightedGraph":
        """Subgraph on ``nodes`` relabelled densely in ascending-id order."""
        order = sorted(set(nodes))
        relabel = {old: new for new, old in enumerate(order)}
        edges = [
            (relabel[u], relabel[v], w)
            for u, v, w in self.edges()
            if u in relabel and v in relabel
        ]
        return WeightedGraph(len(order), edges)

    # -- dense views ---------------------------------------------------------

    def degree_array(self) -> np.ndarray:
        if self._degree_arr is None:
            self._degree_arr = np.array(
                [len(self._adj[u]) for u in range(self.n)], dtype=np.float64
            )
        return self._degree_arr

    def strength_array(self) -> np.ndarray:
        if self._strength_arr is None:
            self._strength_arr = np.array(
                [float(self.strength(u)) for u in range(self.n)], dtype=np.float64
            )
        return self._strength_arr

    def weight_matrix(self) -> np.ndarray:
        """Dense symmetric weight matrix (float64, zero diagonal)."""
        W = np.zeros((self.n, self.n), dtype=np.float64)
        for u in range(self.n):
            for v, w in self._adj[u].items():
                W[u, v] = float(w)
        return W

    def adjacency_matrix(self) -> np.ndarray:
        """Dense 0/1 adjacency matrix (float64)."""
        A = np.zeros((self.n, self.n), dtype=np.float64)
        for u in range(self.n):
            for v in self._adj[u]:
                A[u, v] = 1.0
        return A

    def adjacency_sets(self) -> list[frozenset]:
        return [frozenset(self._adj[u]) for u in range(self.n)]

    def _check_node(self, u: int) -> None:
        if not (0 <= u < self.n):
            raise NoSuchEdgeError(f"node {u} outside [0,{self.n})")

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, edges={self._num_edges})"


def erdos_renyi(n: int, p: float, rng: np.random.Generator) -> WeightedGraph:
    """G(n, p) with every present edge carrying weight 1.0."""
    if n < 1:
        raise GraphConstructionError("need at least one node")
    if not (0 <= p <= 1):
        raise GraphConstructionError(f"probability {p} outside [0, 1]")
    edges = []
    for u in range(n - 1):
        hits = np.nonzero(rng.random(n - 1 - u) < p)[0]
        edges.extend((u, u + 1 + int(j), 1.0) for j in hits)
    return WeightedGraph(n, edges)


def sample_training_graph(
    graph: WeightedGraph, fraction: float, rng: np.random.Generator
) -> WeightedGraph:
    """Keep round(fraction * |E|) edges chosen uniformly, weights intact."""
    if not (0 < fraction <= 1):
        raise GraphConstructionError(f"fraction {fraction} outside (0, 1]")
    all_edges = list(graph.edges())
    keep = round(fraction * len(all_edges))
    idx = rng.choice(len(all_edges), size=keep, replace=False)
    return WeightedGraph(graph.n, [all_edges[i] for i in sorted(idx)])

"""Edge-list ingestion and graph file I/O.

Reads the plain two-column format used by the large public network
collections (`u<TAB>v` per line, `#` comments, both edge directions and
self-loops tolerated) plus a three-column extension carrying a weight.
Node ids are remapped densely in ascending order and the mapping is kept.
Saved files carry a ``# nodes N`` comment so isolated nodes survive a
round trip; foreign parsers ignore it.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import DataFormatError
from .graphs import WeightedGraph


@dataclass
class LoadedEdgeList:
    """Dense-id graph plus the original node id for each dense id."""

    graph: WeightedGraph
    original_ids: list[int]


def load_edge_list(path) -> LoadedEdgeList:
    """Parse an edge-list file into an undirected weighted graph."""
    path = Path(path)
    declared_nodes = None
    pair_weights: dict[tuple[int, int], float] = {}
    ids: set[int] = set()
    with path.open() as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                fields = line[1:].split()
                if len(fields) == 2 and fields[0] == "nodes" and fields[1].isdigit():
                    declared_nodes = int(fields[1])
                continue
            fields = line.split()
            if len(fields) not in (2, 3):
                raise DataFormatError(
                    f"{path}:{lineno}: expected 2 or 3 fields, got {len(fields)}"
                )
            try:
                u, v = int(fields[0]), int(fields[1])
            except ValueError:
                raise DataFormatError(
                    f"{path}:{lineno}: node ids must be integers: {line!r}"
                ) from None
            if u < 0 or v < 0:
                raise DataFormatError(f"{path}:{lineno}: negative node id")
            weight = 1.0
            if len(fields) == 3:
                try:
                    weight = float(fields[2])
                except ValueError:
                    raise DataFormatError(
                        f"{path}:{lineno}: weight must be a number: {line!r}"
                    ) from None
            ids.add(u)
            ids.add(v)
            if u == v:
                continue  # self-loops dropped
            key = (min(u, v), max(u, v))
            if key in pair_weights:
                if pair_weights[key] != weight:
                    raise DataFormatError(
                        f"{path}:{lineno}: conflicting weights for edge {key}"
                    )
                continue  # duplicate direction collapses
            pair_weights[key] = weight
    if declared_nodes is not None:
        original = list(range(declared_nodes))
        if ids and max(ids) >= declared_nodes:
            raise DataFormatError(
                f"{path}: node id {max(ids)} outside declared count {declared_nodes}"
            )
    else:
        original = sorted(ids)
    dense = {old: new for new, old in enumerate(original)}
    edges = [
        (dense[u], dense[v], w) for (u, v), w in sorted(pair_weights.items())
    ]
    return LoadedEdgeList(WeightedGraph(len(original), edges), original)


def save_edge_list(graph: WeightedGraph, path) -> None:
    """Write the three-column format with a node-count header comment."""
    path = Path(path)
    with path.open("w") as handle:
        handle.write(f"# nodes {graph.n}\n")
        for u, v, w in graph.edges():
            handle.write(f"{u}\t{v}\t{float(w)!r}\n")


def largest_connected_component(graph: WeightedGraph) -> WeightedGraph:
    """Induced subgraph on the biggest component (ties: lowest smallest id)."""
    components = graph.connected_components()
    if not components:
        return graph
    biggest = max(components, key=lambda comp: (len(comp), -comp[0]))
    return graph.induced_subgraph(biggest)


def bfs_subsample(graph: WeightedGraph, max_nodes: int) -> WeightedGraph:
    """Induced subgraph on the first ``max_nodes`` nodes of a hub-seeded BFS.

    The traversal starts at the highest-degree node (ties: lowest id) and
    visits neighbors in ascending id order, so the sample is deterministic
    and stays connected when the input is.
    """
    if graph.n <= max_nodes:
        return graph
    start = min(range(graph.n), key=lambda u: (-graph.degree(u), u))
    picked = [start]
    seen = {start}
    queue = [start]
    while queue and len(picked) < max_nodes:
        frontier = []
        for u in queue:
            for v in sorted(graph.neighbors(u)):
                if v not in seen:
                    seen.add(v)
                    picked.append(v)
                    frontier.append(v)
                    if len(picked) >= max_nodes:
                        break
            if len(picked) >= max_nodes:
                break
        queue = frontier
    return graph.induced_subgraph(picked)

"""Deterministic spread simulators producing fraction-infected traces.

Simple contagion transmits with certainty along every edge, taking the
edge's travel time 1/w; a node is infected at step t once its minimum
travel time from any seed is at most t.  Complex contagion is a synchronous
threshold process: a node converts when the weight of its already-infected
neighbors reaches the fraction theta of its strength.  Infection is
absorbing in both models, so traces never decrease.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import SimulationError
from .graphs import UNREACHABLE, WeightedGraph
from .topk import SeedSet

#: hard ceiling on the auto-derived simple-contagion horizon
DEFAULT_HORIZON_CAP = 100


@dataclass
class InfectionTrace:
    """Fraction infected at t = 0..horizon for one model run."""

    model: str
    seed_set: SeedSet
    horizon: int
    fractions: list[float]
    params: dict = field(default_factory=dict)

    def padded(self, horizon: int) -> "InfectionTrace":
        """Extend to ``horizon`` by repeating the final value."""
        if horizon < self.horizon:
            raise SimulationError(
                f"cannot pad horizon {self.horizon} down to {horizon}"
            )
        fractions = self.fractions + [self.fractions[-1]] * (horizon - self.horizon)
        return replace(self, horizon=horizon, fractions=fractions)


def _as_seed_set(seeds) -> SeedSet:
    if isinstance(seeds, SeedSet):
        return seeds
    return SeedSet(list(seeds), "explicit")


def _check_seeds(graph: WeightedGraph, seed_set: SeedSet) -> None:
    if not seed_set.nodes:
        raise SimulationError("empty seed set")
    for u in seed_set.nodes:
        if not (0 <= u < graph.n):
            raise SimulationError(f"seed {u} outside [0,{graph.n})")
    if len(set(seed_set.nodes)) != len(seed_set.nodes):
        raise SimulationError("duplicate seeds")


def simple_contagion(
    graph: WeightedGraph,
    seeds,
    horizon: int | None = None,
    max_horizon: int = DEFAULT_HORIZON_CAP,
) -> InfectionTrace:
    """Distance filtration: infected at t iff within travel time t of a seed.

    With no explicit horizon the trace runs to the last finite infection
    time (rounded up), capped at ``max_horizon``.
    """
    seed_set = _as_seed_set(seeds)
    _check_seeds(graph, seed_set)
    if horizon is not None and horizon < 0:
        raise SimulationError(f"horizon must be >= 0, got {horizon}")
    dist = graph.distances_from(seed_set.nodes)
    steps = [math.ceil(d) for d in dist if d != UNREACHABLE]
    if horizon is None:
        horizon = min(max(steps), max_horizon)
    fractions = [
        sum(1 for d in dist if d <= t) / graph.n for t in range(horizon + 1)
    ]
    return InfectionTrace("simple", seed_set, horizon, fractions)


def complex_contagion(
    graph: WeightedGraph,
    seeds,
    theta: float = 0.3,
    horizon: int | None = None,
    max_horizon: int | None = None,
) -> InfectionTrace:
    """Synchronous threshold spread, stopping at the first fixpoint.

    A node joins once its infected-neighbor weight reaches theta times its
    strength; all checks in a step read the previous step's infected set.
    Explicit horizons pad the trace past the fixpoint.
    """
    seed_set = _as_seed_set(seeds)
    _check_seeds(graph, seed_set)
    if not (0 <= theta <= 1):
        raise SimulationError(f"theta {theta} outside [0, 1]")
    if horizon is not None and horizon < 0:
        raise SimulationError(f"horizon must be >= 0, got {horizon}")
    cap = graph.n if max_horizon is None else max_horizon
    n = graph.n
    infected = [False] * n
    load = [0.0] * n  # infected-neighbor weight pressing on each node
    need = [theta * float(graph.strength(v)) for v in range(n)]
    newly = list(seed_set.nodes)
    for u in newly:
        infected[u] = True
    fractions = [len(newly) / n]
    steps = horizon if horizon is not None else cap
    for _ in range(steps):
        for u in newly:
            for v in graph.neighbors(u):
                if not infected[v]:
                    load[v] += float(graph.weight(u, v))
        # conversion takes at least one infected neighbor; otherwise a zero
        # threshold (or an isolated node's zero strength) would teleport
        # infection to nodes nobody interacted with
        newly = [
            v
            for v in range(n)
            if not infected[v] and load[v] > 0 and load[v] >= need[v]
        ]
        if not newly:
            break
        for v in newly:
            infected[v] = True
        fractions.append(sum(infected) / n)
    trace = InfectionTrace(
        "complex", seed_set, len(fractions) - 1, fractions, {"theta": theta}
    )
    if horizon is not None and trace.horizon < horizon:
        trace = trace.padded(horizon)
    return trace

import numpy as np
import pytest

import oracles
from influcast import WeightedGraph, complex_contagion, simple_contagion
from influcast.errors import SimulationError


class TestSimpleContagion:
    def test_fixture_early_and_full(self, graph_f):
        trace = simple_contagion(graph_f, [0])
        assert trace.fractions[2] == pytest.approx(2 / 5)  # nodes {0, 1}
        assert trace.horizon == 7
        assert trace.fractions[7] == 1.0

    def test_time_zero_is_seed_share(self, graph_f):
        trace = simple_contagion(graph_f, [0, 2], horizon=0)
        assert trace.fractions == [2 / 5]

    def test_empty_seed_set(self, graph_f):
        with pytest.raises(SimulationError):
            simple_contagion(graph_f, [])

    def test_bad_seed(self, graph_f):
        with pytest.raises(SimulationError):
            simple_contagion(graph_f, [9])

    def test_horizon_cap(self):
        g = WeightedGraph(2, [(0, 1, 0.001)])  # travel time 1000
        trace = simple_contagion(g, [0])
        assert trace.horizon == 100
        trace = simple_contagion(g, [0], max_horizon=2000)
        assert trace.horizon == 1000

    def test_matches_all_pairs_oracle(self):
        rng = np.random.default_rng(70)
        for _ in range(25):
            g = oracles.random_graph(rng)
            k = int(rng.integers(1, g.n + 1))
            seeds = [int(u) for u in rng.choice(g.n, size=k, replace=False)]
            horizon = int(rng.integers(0, 12))
            got = simple_contagion(g, seeds, horizon=horizon)
            assert got.fractions == pytest.approx(
                oracles.simple_trace(g, seeds, horizon), abs=1e-12
            )


class TestComplexContagion:
    def test_fixture_trace(self, graph_f):
        trace = complex_contagion(graph_f, [0], theta=0.3)
        assert trace.fractions == pytest.approx([0.2, 0.4, 0.8, 1.0])

    def test_zero_threshold_is_neighborhood_flood(self):
        rng = np.random.default_rng(71)
        for _ in range(10):
            g = oracles.random_graph(rng, n_min=4)
            seeds = [0]
            trace = complex_contagion(g, seeds, theta=0.0)
            infected = set(seeds)
            for t in range(1, trace.horizon + 1):
                infected |= {v for u in infected for v in g.neighbors(u)}
                assert trace.fractions[t] == pytest.approx(len(infected) / g.n)

    def test_full_threshold_stalls(self, graph_f):
        trace = complex_contagion(graph_f, [0], theta=1.0)
        assert trace.fractions == [0.2]

    def test_explicit_horizon_pads(self, graph_f):
        trace = complex_contagion(graph_f, [0], theta=0.3, horizon=9)
        assert trace.horizon == 9
        assert trace.fractions[3:] == [1.0] * 7

    def test_empty_seed_set(self, graph_f):
        with pytest.raises(SimulationError):
            complex_contagion(graph_f, [], theta=0.3)

    def test_matches_set_simulation_oracle(self):
        rng = np.random.default_rng(72)
        for _ in range(25):
            g = oracles.random_graph(rng)
            k = int(rng.integers(1, g.n + 1))
            seeds = [int(u) for u in rng.choice(g.n, size=k, replace=False)]
            theta = float(rng.uniform(0, 1))
            got = complex_contagion(g, seeds, theta=theta)
            assert got.fractions == pytest.approx(
                oracles.complex_trace(g, seeds, theta), abs=1e-12
            )


class TestTraceInvariants:
    def test_monotone_nondecreasing(self):
        rng = np.random.default_rng(73)
        for _ in range(20):
            g = oracles.random_graph(rng)
            seeds = [int(rng.integers(0, g.n))]
            for trace in (
                simple_contagion(g, seeds, horizon=10),
                complex_contagion(g, seeds, theta=float(rng.uniform(0, 1))),
            ):
                assert all(
                    a <= b for a, b in zip(trace.fractions, trace.fractions[1:])
                )
                assert trace.fractions[0] == len(seeds) / g.n

    def test_theta_anti_monotone(self):
        rng = np.random.default_rng(74)
        for _ in range(20):
            g = oracles.random_graph(rng, n_min=4)
            seeds = [int(u) for u in rng.choice(g.n, size=2, replace=False)]
            low, high = sorted(rng.uniform(0, 1, size=2))
            a = complex_contagion(g, seeds, theta=float(low))
            b = complex_contagion(g, seeds, theta=float(high))
            horizon = max(a.horizon, b.horizon)
            a, b = a.padded(horizon), b.padded(horizon)
            assert all(
                hb <= ha + 1e-12 for ha, hb in zip(a.fractions, b.fractions)
            )

    def test_fixpoint_padding_is_constant(self, graph_f):
        trace = complex_contagion(graph_f, [0], theta=0.3, horizon=12)
        tail = trace.fractions[trace.fractions.index(1.0):]
        assert set(tail) == {1.0}

    def test_pad_rejects_shrink(self, graph_f):
        trace = complex_contagion(graph_f, [0], theta=0.3)
        with pytest.raises(SimulationError):
            trace.padded(1)

    def test_simple_dominates_complex_at_moderate_threshold(self):
        """Statistical check over seeded runs on two graph families."""
        from influcast import erdos_renyi

        rng = np.random.default_rng(75)
        dense = erdos_renyi(200, 0.05, rng)
        blocks = []  # triangle-rich: chain of overlapping cliques
        for b in range(40):
            base = 4 * b
            members = [base + i for i in range(5) if base + i < 200]
            blocks += [
                (u, v, 1.0)
                for i, u in enumerate(members)
                for v in members[i + 1:]
            ]
        clustered = WeightedGraph(200, sorted(set(blocks)))
        for g in (dense, clustered):
            gaps = []
            for run in range(10):
                run_rng = np.random.default_rng(100 + run)
                seeds = [int(u) for u in run_rng.choice(g.n, size=5, replace=False)]
                simple = simple_contagion(g, seeds)
                complex_ = complex_contagion(g, seeds, theta=0.3)
                horizon = max(simple.horizon, complex_.horizon)
                s = simple.padded(horizon).fractions
                c = complex_.padded(horizon).fractions
                gaps.append(np.mean(np.array(s) - np.array(c)))
            assert np.mean(gaps) >= 0

"""Acceptance suite: one test per criterion, one PASS line each.

Exact criteria assert bitwise or rational equality; float results from
iterative solvers are compared at solver tolerance.  The two experiment
scenarios fix their own contagion threshold: the evaluation graphs carry
unit weights, so theta is chosen to put typical conversion thresholds at
two infected neighbors (theta * mean strength of ~25 on the random graph,
~0.075; theta 0.2 on the denser collaboration sample), squarely between
breadth-first flooding and total stall, neither of which discriminates.
"""

import os
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

import oracles
from influcast import (
    WeightedGraph,
    complex_contagion,
    normalize,
    pair_score,
    predict_future_graph,
    score_all_pairs,
    simple_contagion,
)
from influcast import centrality as ce
from influcast.cli import main as cli_main
from influcast.datasets import load_edge_list
from influcast.experiment import ErDataset, ExperimentConfig, SnapDataset, run_experiment
from influcast.linkpred import METRICS

FULL_METRICS = ("cn", "jaccard", "local_path", "ra", "qra", "ra2", "qr2")


def _report_means(report, metrics):
    acc = {
        alg: float(
            np.mean([c.accuracy for c in report.cells if c.algorithm == alg])
        )
        for alg in {c.algorithm for c in report.cells}
    }
    mse = {
        metric: (
            float(np.mean([c.mse_simple for c in report.cells if c.metric == metric])),
            float(np.mean([c.mse_complex for c in report.cells if c.metric == metric])),
        )
        for metric in metrics
    }
    return acc, mse


def test_criterion_1_fixture_fidelity():
    """Worked values on the five-node graph, exact rationals, under 1s."""
    started = time.perf_counter()
    g = WeightedGraph(
        5,
        [
            (0, 1, Fraction(1, 2)),
            (1, 3, Fraction(1, 3)),
            (1, 4, Fraction(1, 2)),
            (2, 3, Fraction(1, 3)),
            (2, 4, Fraction(1, 3)),
        ],
    )
    assert g.neighbors(0, 1) == {1}
    assert g.neighbors(0, 2) == {3, 4}
    assert g.three_edge_paths(0, 2) == [(0, 1, 3, 2), (0, 1, 4, 2)]
    sums = g.path_sums([0, 1, 3, 2])
    assert sums.distance_total == 8
    assert sums.weight_total == Fraction(7, 6)
    assert g.shortest_distance(0, 2) == 7
    assert g.degree(0) == 1
    assert g.avg_degree() == 2
    assert g.strength(0) == Fraction(1, 2)
    assert g.avg_strength() == Fraction(4, 5)
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    print(f"PASS criterion 1: fixture fidelity exact ({elapsed:.3f}s)")


def test_criterion_2_oracle_equivalence():
    """All metrics and both contagion models match brute force on 200 graphs."""
    started = time.perf_counter()
    rng = np.random.default_rng(2001)
    for index in range(200):
        g = oracles.random_graph(rng, n_min=2, n_max=8, unit_weights=index % 3 == 0)
        adj = oracles.adjacency(g)

        # link prediction, every family, both weight modes where defined
        for metric, (_, _, has_weighted) in METRICS.items():
            for weighted in ([False, True] if has_weighted else [False]):
                for u in range(g.n):
                    for v in range(u + 1, g.n):
                        got = pair_score(g, metric, u, v, weighted=weighted)
                        want = oracles.link_score(g, metric, u, v, weighted=weighted)
                        assert got == pytest.approx(want, rel=1e-12, abs=1e-15)

        # centrality registry
        assert ce.degree_centrality(g).scores.tolist() == [
            len(adj[u]) for u in range(g.n)
        ]
        assert ce.coreness(g).scores.tolist() == oracles.kcore_by_definition(g)
        assert ce.coreness(g, True).scores.tolist() == (
            oracles.weighted_shell_by_scan(g)
        )
        order = int(rng.integers(0, 5))
        assert ce.h_index(g, order).scores.tolist() == oracles.h_index(g, order)
        assert ce.h_index(g, order, True).scores.tolist() == (
            oracles.h_index(g, order, True)
        )
        assert ce.w_lobby(g).scores.tolist() == oracles.h_index(g, 1, True)
        assert ce.localrank(g).scores.tolist() == oracles.localrank(g)
        assert ce.clusterrank(g).scores == pytest.approx(
            oracles.clusterrank(g), rel=1e-12
        )
        assert ce.closeness(g).scores == pytest.approx(
            oracles.closeness(g), rel=1e-9
        )
        assert ce.betweenness(g).scores == pytest.approx(
            oracles.betweenness(g), rel=1e-9, abs=1e-12
        )
        if g.num_edges:
            scores = ce.eigenvector(g, tol=1e-12, max_iter=500000).scores
            assert scores.max() == 1.0 and scores.min() >= 0
            # eigenspace membership; vector comparison is ill-posed when
            # disconnected components tie for the top eigenvalue
            assert oracles.eigenvector_residual(g, scores) < 1e-6
        assert ce.pagerank(g, d=0.85).scores == pytest.approx(
            oracles.pagerank(g, 0.85), abs=1e-8
        )
        assert ce.pagerank(g, d=1.0, weighted=True).scores == pytest.approx(
            oracles.pagerank(g, 1.0, True), abs=1e-8
        )
        assert ce.leaderrank(g).scores == pytest.approx(
            oracles.leaderrank(g), abs=1e-8
        )
        theta = float(rng.uniform(0, 1))
        assert ce.balanced_index(g, 0.2, 0.3, 0.5, theta, True).scores == (
            pytest.approx(oracles.balanced_index(g, 0.2, 0.3, 0.5, theta, True))
        )
        assert ce.complex_path_centrality(g, theta).scores == pytest.approx(
            oracles.complex_path(g, theta), rel=1e-9
        )

        # contagion, both models
        k = int(rng.integers(1, g.n + 1))
        seeds = [int(u) for u in rng.choice(g.n, size=k, replace=False)]
        horizon = int(rng.integers(0, 10))
        assert simple_contagion(g, seeds, horizon=horizon).fractions == (
            pytest.approx(oracles.simple_trace(g, seeds, horizon), abs=1e-12)
        )
        assert complex_contagion(g, seeds, theta=theta).fractions == (
            pytest.approx(oracles.complex_trace(g, seeds, theta), abs=1e-12)
        )
    elapsed = time.perf_counter() - started
    assert elapsed < 120
    print(f"PASS criterion 2: oracle equivalence on 200 graphs ({elapsed:.1f}s)")


def test_criterion_3_h_index_convergence():
    """Stabilized iterated H-index equals the shell decomposition."""
    rng = np.random.default_rng(2003)
    for _ in range(50):
        g = oracles.random_graph(rng, n_min=2, n_max=30, unit_weights=True)
        stable = ce.h_index(g, order=g.n).scores.tolist()
        assert stable == ce.h_index(g, order=g.n + 1).scores.tolist()
        assert stable == ce.coreness(g).scores.tolist()
    print("PASS criterion 3: H-index stabilizes to coreness on 50 graphs")


def test_criterion_4_random_graph_scenario():
    """Desk-scale protocol on the 500-node random graph, 10 trials."""
    started = time.perf_counter()
    config = ExperimentConfig(
        dataset=ErDataset(500, 0.05, 1),
        fraction=0.9,
        t=1,
        k=5,
        trials=10,
        theta=0.075,  # two unit-weight neighbors trigger conversion
        metrics=FULL_METRICS,
        algorithms=("k_highest", "lir2", "random"),
        centralities=("degree",),
        master_seed=2024,
    )
    report = run_experiment(config)
    assert not report.errors
    acc, mse = _report_means(report, FULL_METRICS)

    # (a) strong selectors far above the random baseline
    assert acc["k_highest"] >= 0.45
    assert acc["lir2"] >= 0.45
    assert acc["random"] <= 0.05

    # (b) simple contagion reproduces influence far more tightly than complex
    for metric in FULL_METRICS:
        simple, complex_ = mse[metric]
        assert simple < complex_, metric

    # (c) complex-contagion error stays bounded
    for metric in FULL_METRICS:
        assert mse[metric][1] <= 0.25, metric

    elapsed = time.perf_counter() - started
    assert elapsed < 900
    print(
        "PASS criterion 4: random-graph scenario "
        f"(k_highest={acc['k_highest']:.3f}, lir2={acc['lir2']:.3f}, "
        f"random={acc['random']:.3f}, {elapsed:.0f}s)"
    )


ARXIV_METRICS = ("cn", "ra", "ra2")


def _arxiv_path():
    candidate = os.environ.get("CA_GRQC_PATH")
    if candidate:
        return Path(candidate)
    return Path(__file__).resolve().parent.parent / "data" / "ca-GrQc.txt"


def test_criterion_5_arxiv_scenario():
    """Reduced protocol on the collaboration network (needs the dataset)."""
    path = _arxiv_path()
    if not path.exists():
        pytest.skip(
            f"collaboration dataset not present at {path}; set CA_GRQC_PATH "
            "or place ca-GrQc.txt under data/ to run this criterion"
        )
    loaded = load_edge_list(path)
    assert loaded.graph.n == 5242
    assert loaded.graph.num_edges == 14496

    config = ExperimentConfig(
        dataset=SnapDataset(str(path)),
        fraction=0.9,
        t=1,
        k=25,
        trials=3,
        theta=0.2,
        metrics=ARXIV_METRICS,
        algorithms=("k_highest", "random"),
        centralities=("degree",),
        max_nodes=1500,
        master_seed=31,
    )
    report = run_experiment(config)
    assert not report.errors
    acc, mse = _report_means(report, ARXIV_METRICS)
    assert acc["k_highest"] >= 5 * acc["random"]
    for metric in ARXIV_METRICS:
        simple, complex_ = mse[metric]
        assert simple < complex_, metric
    print(
        "PASS criterion 5: collaboration-network scenario "
        f"(k_highest={acc['k_highest']:.3f}, random={acc['random']:.3f})"
    )


def test_criterion_6_sphere_model_properties():
    """Weight algebra of the predictor over 500 random draws."""
    rng = np.random.default_rng(2006)
    metric_names = list(METRICS)
    for _ in range(500):
        g = oracles.random_graph(rng, n_min=3, n_max=12)
        metric = metric_names[int(rng.integers(len(metric_names)))]
        t = int(rng.integers(1, 6))
        table = normalize(score_all_pairs(g, metric))
        current = predict_future_graph(g, metric, t=t)
        deeper = predict_future_graph(g, metric, t=t + 1)

        if t == 1:  # single-step identity is exact
            assert current.predicted_edges == table.scores

        kept = {(u, v): w for u, v, w in current.graph.edges()}
        for u, v, w in g.edges():
            assert kept[(u, v)] == w

        for pair, weight in current.predicted_edges.items():
            assert 0 < weight <= 1
            assert current.graph.edge_distance(*pair) == 1 / weight
            if weight < 1:
                assert deeper.predicted_edges[pair] > weight

        by_score = sorted(table.scores, key=lambda q: (table.scores[q], q))
        weights = [current.predicted_edges[q] for q in by_score]
        assert all(a <= b for a, b in zip(weights, weights[1:]))
    print("PASS criterion 6: sphere-model properties on 500 draws")


def test_criterion_7_experiment_determinism(tmp_path):
    """Two CLI experiment runs with one seed produce identical bytes."""
    config = tmp_path / "exp.cfg"
    config.write_text(
        "dataset = er(150, 0.06, 3)\n"
        "fraction = 0.9\nt = 1\nk = 4\ntrials = 3\ntheta = 0.1\n"
        "metrics = cn, ra\n"
        "algorithms = k_highest, lir2, voterank, random\n"
        "centralities = degree\n"
        "master_seed = 42\n"
    )
    outputs = []
    for run in ("a", "b"):
        out_dir = tmp_path / run
        assert cli_main(
            ["experiment", "--config", str(config), "--out", str(out_dir)]
        ) == 0
        outputs.append(
            {p.name: p.read_bytes() for p in sorted(out_dir.iterdir())}
        )
    assert outputs[0].keys() == outputs[1].keys()
    assert outputs[0] == outputs[1]
    print(
        f"PASS criterion 7: byte-identical CSVs across reruns "
        f"({len(outputs[0])} files)"
    )


def test_criterion_8_contagion_invariants():
    """Monotone traces, theta anti-monotonicity, exact fixture trace."""
    rng = np.random.default_rng(2008)
    for _ in range(100):
        g = oracles.random_graph(rng, n_min=3, n_max=15)
        k = int(rng.integers(1, g.n + 1))
        seeds = [int(u) for u in rng.choice(g.n, size=k, replace=False)]
        low, high = sorted(rng.uniform(0, 1, size=2))
        trace_low = complex_contagion(g, seeds, theta=float(low))
        trace_high = complex_contagion(g, seeds, theta=float(high))
        simple = simple_contagion(g, seeds, horizon=10)
        for trace in (trace_low, trace_high, simple):
            assert all(
                a <= b for a, b in zip(trace.fractions, trace.fractions[1:])
            )
        horizon = max(trace_low.horizon, trace_high.horizon)
        padded_low = trace_low.padded(horizon).fractions
        padded_high = trace_high.padded(horizon).fractions
        assert all(h <= l + 1e-12 for l, h in zip(padded_low, padded_high))

    g = WeightedGraph(
        5,
        [
            (0, 1, Fraction(1, 2)),
            (1, 3, Fraction(1, 3)),
            (1, 4, Fraction(1, 2)),
            (2, 3, Fraction(1, 3)),
            (2, 4, Fraction(1, 3)),
        ],
    )
    assert complex_contagion(g, [0], theta=0.3).fractions == [
        1 / 5,
        2 / 5,
        4 / 5,
        5 / 5,
    ]
    print("PASS criterion 8: contagion invariants on 100 instances")

"""Experiment orchestration: training samples, prediction, seeds, spread.

One experiment follows the full protocol for every trial:

1. sample a training graph keeping ``fraction`` of the edges;
2. build one predicted graph per prediction metric from the training graph;
3. select seed sets per (algorithm x centrality) on the predicted graph,
   the training graph, and the original graph;
4. run both contagion models on the *original* graph for every seed set;
5. score accuracy (predicted vs original seeds) and the mean squared error
   between their infection traces.

Cell results are averaged over all trials; a failure in any trial voids
that (metric, algorithm, centrality) cell, is recorded, and leaves the
remaining cells running.  Every random draw derives from ``master_seed``
XOR the trial index plus a fixed purpose tag, so reruns are bit-identical.
"""

from __future__ import annotations

import re
import zlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .centrality import CENTRALITIES
from .contagion import InfectionTrace, complex_contagion, simple_contagion
from .datasets import bfs_subsample, largest_connected_component, load_edge_list
from .errors import ConfigError, InflucastError
from .future import predict_future_graph
from .graphs import WeightedGraph, erdos_renyi, sample_training_graph
from .linkpred import METRICS
from .topk import ALGORITHMS, SeedSet, select_seeds


# -- evaluation primitives ----------------------------------------------------


def accuracy(predicted: SeedSet, true_set: SeedSet) -> float:
    """Fraction of predicted seeds that the reference selection also chose."""
    if predicted.k != true_set.k:
        raise InflucastError(
            f"seed sets differ in size: {predicted.k} vs {true_set.k}"
        )
    return len(set(predicted.nodes) & set(true_set.nodes)) / predicted.k


def mse(
    trace_p: InfectionTrace, trace_o: InfectionTrace, divisor: str = "samples"
) -> float:
    """Mean squared pointwise gap between two equal-horizon traces.

    ``samples`` divides by r+1 (the sample count); ``steps`` divides by r
    for comparison against conventions that skip the shared t=0 point.
    """
    if trace_p.horizon != trace_o.horizon:
        raise InflucastError(
            f"horizon mismatch: {trace_p.horizon} vs {trace_o.horizon}"
        )
    total = sum(
        (o - p) ** 2 for p, o in zip(trace_p.fractions, trace_o.fractions)
    )
    if divisor == "samples":
        return total / (trace_p.horizon + 1)
    if divisor == "steps":
        if trace_p.horizon == 0:
            raise InflucastError("divisor 'steps' undefined for horizon 0")
        return total / trace_p.horizon
    raise ConfigError(f"unknown mse divisor {divisor!r}")


# -- configuration ------------------------------------------------------------


@dataclass(frozen=True)
class ErDataset:
    n: int
    p: float
    seed: int

    def label(self) -> str:
        return f"er({self.n},{self.p},{self.seed})"


@dataclass(frozen=True)
class SnapDataset:
    path: str

    def label(self) -> str:
        return f"snap_file({self.path})"


DEFAULT_METRICS = tuple(METRICS)
DEFAULT_ALGORITHMS = ("k_highest", "lir", "lir2", "voterank", "random")


@dataclass
class ExperimentConfig:
    dataset: ErDataset | SnapDataset | InlineDataset
    fraction: float = 0.9
    t: int = 1
    k: int = 5
    trials: int = 10
    theta: float = 0.3
    epsilon: float = 1e-3
    alpha: float = 10.0
    d: float = 1.0
    bi_a: float = 1 / 3
    bi_b: float = 1 / 3
    bi_c: float = 1 / 3
    metrics: tuple[str, ...] = DEFAULT_METRICS
    algorithms: tuple[str, ...] = DEFAULT_ALGORITHMS
    centralities: tuple[str, ...] = ("degree",)
    weighted: bool = False
    centrality_weighted: bool = True
    contagion_horizon: int = 100
    max_nodes: int | None = None
    mse_divisor: str = "samples"
    master_seed: int = 0

    def __post_init__(self):
        if not (0 < self.fraction <= 1):
            raise ConfigError(f"fraction {self.fraction} outside (0, 1]")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.t < 1:
            raise ConfigError("t must be >= 1")
        if self.k < 1:
            raise ConfigError("k must be >= 1")
        if self.master_seed < 0:
            raise ConfigError("master_seed must be >= 0")
        for name in self.metrics:
            if name not in METRICS:
                raise ConfigError(f"unknown prediction metric {name!r}")
        for name in self.algorithms:
            if name not in ALGORITHMS:
                raise ConfigError(f"unknown algorithm {name!r}")
        for name in self.centralities:
            if name != "none" and name not in CENTRALITIES:
                raise ConfigError(f"unknown centrality {name!r}")


_DATASET_ER = re.compile(r"^er\(\s*(\d+)\s*,\s*([0-9.eE+-]+)\s*,\s*(\d+)\s*\)$")
_DATASET_SNAP = re.compile(r"^snap_file\(\s*(.+?)\s*\)$")

_LIST_FIELDS = {"metrics", "algorithms", "centralities"}
_INT_FIELDS = {"t", "k", "trials", "contagion_horizon", "max_nodes", "master_seed"}
_FLOAT_FIELDS = {
    "fraction",
    "theta",
    "epsilon",
    "alpha",
    "d",
    "bi_a",
    "bi_b",
    "bi_c",
}
_BOOL_FIELDS = {"weighted", "centrality_weighted"}


def parse_dataset_spec(text: str):
    match = _DATASET_ER.match(text)
    if match:
        return ErDataset(int(match.group(1)), float(match.group(2)), int(match.group(3)))
    match = _DATASET_SNAP.match(text)
    if match:
        return SnapDataset(match.group(1))
    raise ConfigError(
        f"dataset must look like er(n,p,seed) or snap_file(path), got {text!r}"
    )


def parse_config_text(text: str) -> ExperimentConfig:
    """Parse the flat `key = value` format (one pair per line, # comments)."""
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key == "dataset":
            values[key] = parse_dataset_spec(value)
        elif key in _LIST_FIELDS:
            values[key] = tuple(part.strip() for part in value.split(",") if part.strip())
        elif key in _INT_FIELDS:
            values[key] = int(value)
        elif key in _FLOAT_FIELDS:
            values[key] = float(value)
        elif key in _BOOL_FIELDS:
            if value.lower() not in ("true", "false"):
                raise ConfigError(f"line {lineno}: {key} must be true or false")
            values[key] = value.lower() == "true"
        elif key == "mse_divisor":
            values[key] = value
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    if "dataset" not in values:
        raise ConfigError("config is missing the dataset key")
    try:
        return ExperimentConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None


def load_config(path) -> ExperimentConfig:
    return parse_config_text(Path(path).read_text())


def resolve_dataset(
    config: ExperimentConfig, inline_graph: WeightedGraph | None = None
) -> WeightedGraph:
    """Materialise the configured graph, applying the LCC size cap if set."""
    if inline_graph is not None:
        graph = inline_graph
    elif isinstance(config.dataset, ErDataset):
        params = config.dataset
        graph = erdos_renyi(params.n, params.p, np.random.default_rng(params.seed))
    elif isinstance(config.dataset, SnapDataset):
        graph = load_edge_list(config.dataset.path).graph
    else:
        raise ConfigError(f"unsupported dataset {config.dataset!r}")
    if config.max_nodes is not None:
        graph = bfs_subsample(largest_connected_component(graph), config.max_nodes)
    return graph


# -- report structures -----------------------------------------------------------


@dataclass
class CellResult:
    metric: str
    algorithm: str
    centrality: str
    accuracy: float
    mse_simple: float
    mse_complex: float


@dataclass
class EvalReport:
    config: ExperimentConfig
    cells: list[CellResult] = field(default_factory=list)
    traces: dict = field(default_factory=dict)  # (model, algorithm) -> {series: [...]}
    errors: list[str] = field(default_factory=list)

    def cell_centralities(self, algorithm: str) -> list[str]:
        seen = []
        for cell in self.cells:
            if cell.algorithm == algorithm and cell.centrality not in seen:
                seen.append(cell.centrality)
        return seen


# -- experiment loop ------------------------------------------------------------


def _rng(trial_seed: int, *tags) -> np.random.Generator:
    entropy = [trial_seed] + [zlib.crc32(str(tag).encode()) for tag in tags]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def _cells_of(config: ExperimentConfig):
    """(algorithm, centrality) pairs; random ignores the centrality axis."""
    for algorithm in config.algorithms:
        if algorithm == "random":
            yield algorithm, "none"
        else:
            for centrality in config.centralities:
                yield algorithm, centrality


def _select(config, graph, algorithm, centrality, rng, graph_id):
    k = 1 if algorithm == "single_influencer" else config.k
    return select_seeds(
        graph,
        algorithm,
        k,
        centrality=None if centrality == "none" else centrality,
        centrality_weighted=config.centrality_weighted,
        rng=rng,
        graph_id=graph_id,
        alpha=config.alpha,
        d=config.d,
        theta=config.theta,
        bi_weights=(config.bi_a, config.bi_b, config.bi_c),
    )


def _both_traces(config, graph, seeds):
    return {
        "simple": simple_contagion(
            graph, seeds, max_horizon=config.contagion_horizon
        ),
        "complex": complex_contagion(graph, seeds, theta=config.theta),
    }


def run_experiment(
    config: ExperimentConfig, inline_graph: WeightedGraph | None = None
) -> EvalReport:
    """Run the full protocol and return per-cell averages plus mean traces."""
    original = resolve_dataset(config, inline_graph)
    report = EvalReport(config=config)
    pairs = list(_cells_of(config))
    cell_keys = [
        (metric, algorithm, centrality)
        for metric in config.metrics
        for algorithm, centrality in pairs
    ]
    acc_samples: dict[tuple, list[float]] = {key: [] for key in cell_keys}
    mse_samples: dict[tuple, dict[str, list[float]]] = {
        key: {"simple": [], "complex": []} for key in cell_keys
    }
    # raw per-trial traces, keyed by the full cell so that a cell dying in
    # a late trial drops out of the emitted series entirely
    pred_traces: dict[tuple, list[list[float]]] = {}
    base_traces: dict[tuple, list[list[float]]] = {}
    dead: dict[tuple, str] = {}

    def kill(key, exc):
        dead.setdefault(key, str(exc))

    for trial in range(config.trials):
        trial_seed = config.master_seed ^ trial
        training = sample_training_graph(
            original, config.fraction, _rng(trial_seed, "sample")
        )
        base: dict[tuple, dict] = {}
        for algorithm, centrality in pairs:
            entry = {}
            try:
                for kind, graph in (("original", original), ("training", training)):
                    seeds = _select(
                        config,
                        graph,
                        algorithm,
                        centrality,
                        _rng(trial_seed, "seeds", algorithm, centrality, kind),
                        kind,
                    )
                    entry[kind] = (seeds, _both_traces(config, original, seeds))
                base[(algorithm, centrality)] = entry
            except InflucastError as exc:
                for metric in config.metrics:
                    kill((metric, algorithm, centrality), exc)
        for metric in config.metrics:
            try:
                predicted = predict_future_graph(
                    training,
                    metric,
                    weighted=config.weighted,
                    epsilon=config.epsilon,
                    t=config.t,
                )
            except InflucastError as exc:
                for algorithm, centrality in pairs:
                    kill((metric, algorithm, centrality), exc)
                continue
            for algorithm, centrality in pairs:
                key = (metric, algorithm, centrality)
                if key in dead or (algorithm, centrality) not in base:
                    continue
                entry = base[(algorithm, centrality)]
                try:
                    seeds_p = _select(
                        config,
                        predicted.graph,
                        algorithm,
                        centrality,
                        _rng(
                            trial_seed,
                            "seeds",
                            algorithm,
                            centrality,
                            "predicted",
                            metric,
                        ),
                        f"predicted:{metric}",
                    )
                    traces_p = _both_traces(config, original, seeds_p)
                    cell_acc = accuracy(seeds_p, entry["original"][0])
                    cell_mse = {}
                    for model in ("simple", "complex"):
                        p, o = traces_p[model], entry["original"][1][model]
                        horizon = max(p.horizon, o.horizon)
                        cell_mse[model] = mse(
                            p.padded(horizon), o.padded(horizon), config.mse_divisor
                        )
                except InflucastError as exc:
                    kill(key, exc)
                    continue
                # commit the whole cell only once every part succeeded
                acc_samples[key].append(cell_acc)
                for model in ("simple", "complex"):
                    mse_samples[key][model].append(cell_mse[model])
                    pred_traces.setdefault((*key, model), []).append(
                        traces_p[model].fractions
                    )
        for (algorithm, centrality), entry in base.items():
            for model in ("simple", "complex"):
                for kind in ("original", "training"):
                    base_traces.setdefault(
                        (algorithm, centrality, kind, model), []
                    ).append(entry[kind][1][model].fractions)

    for key in cell_keys:
        if key in dead:
            report.errors.append(f"{'/'.join(key)}: {dead[key]}")
            continue
        metric, algorithm, centrality = key
        report.cells.append(
            CellResult(
                metric,
                algorithm,
                centrality,
                float(np.mean(acc_samples[key])),
                float(np.mean(mse_samples[key]["simple"])),
                float(np.mean(mse_samples[key]["complex"])),
            )
        )
    for model in ("simple", "complex"):
        for algorithm in config.algorithms:
            series: dict[str, list[list[float]]] = {}
            for metric in config.metrics:
                rows = [
                    trace
                    for (_, cen) in pairs
                    if (metric, algorithm, cen) not in dead
                    for trace in pred_traces.get(
                        (metric, algorithm, cen, model), []
                    )
                ]
                if rows:
                    series[metric] = rows
            for kind in ("original", "training"):
                rows = [
                    trace
                    for (alg, cen) in pairs
                    if alg == algorithm
                    for trace in base_traces.get((alg, cen, kind, model), [])
                ]
                if rows:
                    series[kind] = rows
            if not series:
                continue
            longest = max(len(trace) for rows in series.values() for trace in rows)
            report.traces[(model, algorithm)] = {
                name: np.array(
                    [trace + [trace[-1]] * (longest - len(trace)) for trace in rows]
                )
                .mean(axis=0)
                .tolist()
                for name, rows in series.items()
            }
    return report

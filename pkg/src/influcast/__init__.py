"""Future-influencer prediction on weighted social graphs.

Core pipeline: score non-adjacent pairs with path-based similarity
metrics, add them as probability-weighted future edges, select influencer
seed sets with heuristic top-k algorithms over a centrality registry, and
evaluate the selections under deterministic simple/complex contagion.
"""

from .centrality import CENTRALITIES, CentralityVector, compute_centrality
from .contagion import InfectionTrace, complex_contagion, simple_contagion
from .errors import InflucastError
from .experiment import (
    EvalReport,
    ExperimentConfig,
    accuracy,
    load_config,
    mse,
    run_experiment,
)
from .future import PredictedGraph, future_top_k, predict_future_graph
from .graphs import (
    UNREACHABLE,
    WeightedGraph,
    erdos_renyi,
    sample_training_graph,
)
from .linkpred import METRICS, SimilarityTable, normalize, pair_score, score_all_pairs
from .reporting import emit_report, render_tables
from .topk import ALGORITHMS, SeedSet, select_seeds

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "CENTRALITIES",
    "CentralityVector",
    "EvalReport",
    "ExperimentConfig",
    "InfectionTrace",
    "InflucastError",
    "METRICS",
    "PredictedGraph",
    "SeedSet",
    "SimilarityTable",
    "UNREACHABLE",
    "WeightedGraph",
    "accuracy",
    "complex_contagion",
    "compute_centrality",
    "emit_report",
    "erdos_renyi",
    "future_top_k",
    "load_config",
    "mse",
    "normalize",
    "pair_score",
    "predict_future_graph",
    "render_tables",
    "run_experiment",
    "sample_training_graph",
    "score_all_pairs",
    "select_seeds",
    "simple_contagion",
]

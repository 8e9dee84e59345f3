"""Pydantic request/response models for the HTTP API."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

from ..experiment import (
    DEFAULT_ALGORITHMS,
    DEFAULT_METRICS,
    ExperimentConfig,
    parse_dataset_spec,
)
from ..graphs import WeightedGraph

Edge = tuple[int, int, float]


class GraphPayload(BaseModel):
    nodes: int
    edges: list[Edge]

    @classmethod
    def from_graph(cls, graph: WeightedGraph) -> "GraphPayload":
        return cls(
            nodes=graph.n,
            edges=[(u, v, float(w)) for u, v, w in graph.edges()],
        )

    def to_graph(self) -> WeightedGraph:
        return WeightedGraph(self.nodes, self.edges)


class CentralityParams(BaseModel):
    h_order: int = 10
    alpha: float = 10.0
    d: float = 1.0
    theta: float = 0.3
    bi_a: float = 1 / 3
    bi_b: float = 1 / 3
    bi_c: float = 1 / 3


class GenerateErRequest(BaseModel):
    nodes: int = Field(ge=1)
    prob: float = Field(ge=0.0, le=1.0)
    seed: int = 0


class GraphResponse(BaseModel):
    graph: GraphPayload


class PredictRequest(BaseModel):
    graph: GraphPayload
    metric: str
    weighted: bool = False
    epsilon: float = 1e-3
    t: int = Field(default=1, ge=1)


class PredictResponse(BaseModel):
    graph: GraphPayload
    predicted_edges: list[Edge]
    metric: str
    t: int


class TopkRequest(BaseModel):
    graph: GraphPayload
    algorithm: str
    k: int = Field(ge=1)
    centrality: Optional[str] = None
    centrality_weighted: bool = True
    seed: Optional[int] = None
    params: CentralityParams = CentralityParams()


class TopkResponse(BaseModel):
    nodes: list[int]
    algorithm: str
    centrality: Optional[str]


class SimulateRequest(BaseModel):
    graph: GraphPayload
    seeds: list[int]
    model: Literal["simple", "complex"]
    theta: float = 0.3
    horizon: Optional[int] = None


class SimulateResponse(BaseModel):
    model: str
    horizon: int
    fractions: list[float]


class ExperimentRequest(BaseModel):
    """Experiment config; snap datasets must inline their graph payload."""

    dataset: str
    graph: Optional[GraphPayload] = None
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
    metrics: list[str] = list(DEFAULT_METRICS)
    algorithms: list[str] = list(DEFAULT_ALGORITHMS)
    centralities: list[str] = ["degree"]
    weighted: bool = False
    centrality_weighted: bool = True
    contagion_horizon: int = 100
    max_nodes: Optional[int] = None
    mse_divisor: str = "samples"
    master_seed: int = 0

    def to_config(self) -> ExperimentConfig:
        return ExperimentConfig(
            dataset=parse_dataset_spec(self.dataset),
            fraction=self.fraction,
            t=self.t,
            k=self.k,
            trials=self.trials,
            theta=self.theta,
            epsilon=self.epsilon,
            alpha=self.alpha,
            d=self.d,
            bi_a=self.bi_a,
            bi_b=self.bi_b,
            bi_c=self.bi_c,
            metrics=tuple(self.metrics),
            algorithms=tuple(self.algorithms),
            centralities=tuple(self.centralities),
            weighted=self.weighted,
            centrality_weighted=self.centrality_weighted,
            contagion_horizon=self.contagion_horizon,
            max_nodes=self.max_nodes,
            mse_divisor=self.mse_divisor,
            master_seed=self.master_seed,
        )


class CellPayload(BaseModel):
    metric: str
    algorithm: str
    centrality: str
    accuracy: float
    mse_simple: float
    mse_complex: float


class ExperimentResponse(BaseModel):
    cells: list[CellPayload]
    errors: list[str]
    files: dict[str, str]


class ErrorPayload(BaseModel):
    kind: str
    message: str

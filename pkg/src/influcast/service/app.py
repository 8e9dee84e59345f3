"""FastAPI application exposing the toolkit as a compute service.

Graphs travel inline as edge lists; the service holds no state between
requests.  Library errors surface as HTTP 400 with a ``kind`` the CLI maps
onto exit codes.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..contagion import complex_contagion, simple_contagion
from ..errors import InflucastError
from ..experiment import run_experiment
from ..future import predict_future_graph
from ..graphs import erdos_renyi
from ..reporting import render_csvs
from ..topk import select_seeds
from . import schemas


def create_app() -> FastAPI:
    app = FastAPI(title="influcast", version="0.1.0")

    @app.exception_handler(InflucastError)
    async def library_error(request: Request, exc: InflucastError):
        return JSONResponse(
            status_code=400,
            content={"detail": {"kind": exc.kind, "message": str(exc)}},
        )

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/graphs/er", response_model=schemas.GraphResponse)
    def generate_er(req: schemas.GenerateErRequest):
        graph = erdos_renyi(req.nodes, req.prob, np.random.default_rng(req.seed))
        return schemas.GraphResponse(graph=schemas.GraphPayload.from_graph(graph))

    @app.post("/predict", response_model=schemas.PredictResponse)
    def predict(req: schemas.PredictRequest):
        predicted = predict_future_graph(
            req.graph.to_graph(),
            req.metric,
            weighted=req.weighted,
            epsilon=req.epsilon,
            t=req.t,
        )
        return schemas.PredictResponse(
            graph=schemas.GraphPayload.from_graph(predicted.graph),
            predicted_edges=[
                (u, v, w) for (u, v), w in sorted(predicted.predicted_edges.items())
            ],
            metric=predicted.metric,
            t=predicted.horizon,
        )

    @app.post("/topk", response_model=schemas.TopkResponse)
    def topk(req: schemas.TopkRequest):
        rng = (
            np.random.default_rng(req.seed) if req.seed is not None else None
        )
        seeds = select_seeds(
            req.graph.to_graph(),
            req.algorithm,
            req.k,
            centrality=req.centrality,
            centrality_weighted=req.centrality_weighted,
            rng=rng,
            h_order=req.params.h_order,
            alpha=req.params.alpha,
            d=req.params.d,
            theta=req.params.theta,
            bi_weights=(req.params.bi_a, req.params.bi_b, req.params.bi_c),
        )
        return schemas.TopkResponse(
            nodes=seeds.nodes, algorithm=seeds.algorithm, centrality=seeds.centrality
        )

    @app.post("/simulate", response_model=schemas.SimulateResponse)
    def simulate(req: schemas.SimulateRequest):
        graph = req.graph.to_graph()
        if req.model == "simple":
            trace = simple_contagion(graph, req.seeds, horizon=req.horizon)
        else:
            trace = complex_contagion(
                graph, req.seeds, theta=req.theta, horizon=req.horizon
            )
        return schemas.SimulateResponse(
            model=trace.model, horizon=trace.horizon, fractions=trace.fractions
        )

    @app.post("/experiments", response_model=schemas.ExperimentResponse)
    def experiments(req: schemas.ExperimentRequest):
        config = req.to_config()
        inline = req.graph.to_graph() if req.graph is not None else None
        report = run_experiment(config, inline_graph=inline)
        return schemas.ExperimentResponse(
            cells=[
                schemas.CellPayload(
                    metric=c.metric,
                    algorithm=c.algorithm,
                    centrality=c.centrality,
                    accuracy=c.accuracy,
                    mse_simple=c.mse_simple,
                    mse_complex=c.mse_complex,
                )
                for c in report.cells
            ],
            errors=report.errors,
            files=render_csvs(report),
        )

    return app


app = create_app()

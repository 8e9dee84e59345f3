"""Command-line client for the influcast service.

All computation happens behind the HTTP API; by default the CLI drives the
FastAPI app in-process, and ``--server URL`` points it at a running
instance instead.  File handling stays on the client side: graphs and
configs are read locally and shipped inline, results are written locally.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical
non-convergence.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import httpx

from .datasets import load_edge_list, save_edge_list
from .errors import InflucastError
from .experiment import SnapDataset, load_config
from .graphs import WeightedGraph
from .reporting import render_tables

_KIND_CODES = {"usage": 1, "data": 2, "numerics": 3}


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class ServiceClient:
    """Thin HTTP wrapper; in-process ASGI transport unless a server is given."""

    def __init__(self, server: str | None = None):
        if server is None:
            import warnings

            from .service import app

            with warnings.catch_warnings():
                # starlette nags about its httpx-backed test transport; the
                # in-process client is exactly that transport, on purpose
                warnings.simplefilter("ignore")
                from starlette.testclient import TestClient

                self._client = TestClient(app, raise_server_exceptions=False)
        else:
            self._client = httpx.Client(base_url=server, timeout=None)

    def post(self, path: str, payload: dict) -> dict:
        try:
            response = self._client.post(path, json=payload)
        except httpx.HTTPError as exc:
            raise CliError(f"cannot reach service: {exc}", 1) from exc
        if response.status_code == 200:
            return response.json()
        detail = {}
        try:
            detail = response.json().get("detail", {})
        except ValueError:
            pass
        if isinstance(detail, dict) and "kind" in detail:
            code = _KIND_CODES.get(detail["kind"], 2)
            raise CliError(detail.get("message", "service error"), code)
        raise CliError(f"service rejected the request: {response.text}", 1)

    def close(self):
        self._client.close()


def _graph_payload(path) -> dict:
    graph = load_edge_list(path).graph
    return {
        "nodes": graph.n,
        "edges": [(u, v, float(w)) for u, v, w in graph.edges()],
    }


def _graph_from_payload(payload: dict) -> WeightedGraph:
    return WeightedGraph(payload["nodes"], [tuple(e) for e in payload["edges"]])


def _parse_seeds(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise CliError(f"seeds must be comma-separated integers: {text!r}", 1)


def _cmd_gen_er(client, args):
    data = client.post(
        "/graphs/er", {"nodes": args.nodes, "prob": args.prob, "seed": args.seed}
    )
    save_edge_list(_graph_from_payload(data["graph"]), args.out)
    print(f"wrote {args.out}")


def _cmd_predict(client, args):
    data = client.post(
        "/predict",
        {
            "graph": _graph_payload(args.graph),
            "metric": args.metric,
            "weighted": args.weighted,
            "epsilon": args.epsilon,
            "t": args.t,
        },
    )
    save_edge_list(_graph_from_payload(data["graph"]), args.out)
    print(f"wrote {args.out} ({len(data['predicted_edges'])} predicted edges)")


def _cmd_topk(client, args):
    data = client.post(
        "/topk",
        {
            "graph": _graph_payload(args.graph),
            "algorithm": args.algorithm,
            "k": args.k,
            "centrality": args.centrality,
            "centrality_weighted": not args.unweighted_centrality,
            "seed": args.seed,
        },
    )
    print(",".join(str(u) for u in data["nodes"]))


def _cmd_simulate(client, args):
    data = client.post(
        "/simulate",
        {
            "graph": _graph_payload(args.graph),
            "seeds": _parse_seeds(args.seeds),
            "model": args.model,
            "theta": args.theta,
            "horizon": args.horizon,
        },
    )
    print("t,fraction_infected")
    for t, fraction in enumerate(data["fractions"]):
        print(f"{t},{fraction!r}")


def _cmd_experiment(client, args):
    config = load_config(args.config)
    payload = {
        "dataset": config.dataset.label(),
        "fraction": config.fraction,
        "t": config.t,
        "k": config.k,
        "trials": config.trials,
        "theta": config.theta,
        "epsilon": config.epsilon,
        "alpha": config.alpha,
        "d": config.d,
        "bi_a": config.bi_a,
        "bi_b": config.bi_b,
        "bi_c": config.bi_c,
        "metrics": list(config.metrics),
        "algorithms": list(config.algorithms),
        "centralities": list(config.centralities),
        "weighted": config.weighted,
        "centrality_weighted": config.centrality_weighted,
        "contagion_horizon": config.contagion_horizon,
        "max_nodes": config.max_nodes,
        "mse_divisor": config.mse_divisor,
        "master_seed": config.master_seed,
    }
    if isinstance(config.dataset, SnapDataset):
        payload["graph"] = _graph_payload(config.dataset.path)
    data = client.post("/experiments", payload)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, content in sorted(data["files"].items()):
        (out / name).write_text(content)
    print(f"wrote {len(data['files'])} files to {out}")
    for line in data["errors"]:
        print(f"cell error: {line}", file=sys.stderr)


def _cmd_report(args):
    print(render_tables(args.in_dir), end="")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="influcast", description=__doc__)
    parser.add_argument(
        "--server",
        default=None,
        help="base URL of a running service (default: run in-process)",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen-er", help="generate a seeded random graph file")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--prob", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("predict", help="add predicted future edges to a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--metric", required=True)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--epsilon", type=float, default=1e-3)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--out", required=True)

    p = sub.add_parser("topk", help="select k seed nodes")
    p.add_argument("--graph", required=True)
    p.add_argument("--algorithm", required=True)
    p.add_argument("--centrality", default=None)
    p.add_argument("--unweighted-centrality", action="store_true")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("simulate", help="run a contagion model")
    p.add_argument("--graph", required=True)
    p.add_argument("--seeds", required=True, help="comma-separated node ids")
    p.add_argument("--model", choices=("simple", "complex"), required=True)
    p.add_argument("--theta", type=float, default=0.3)
    p.add_argument("--horizon", type=int, default=None)

    p = sub.add_parser("experiment", help="run a configured experiment")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("report", help="pretty-print emitted report CSVs")
    p.add_argument("--in", dest="in_dir", required=True)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits itself; normalize to a code
        return int(exc.code or 0)
    try:
        if args.command == "report":
            _cmd_report(args)
            return 0
        client = ServiceClient(args.server)
        try:
            handler = {
                "gen-er": _cmd_gen_er,
                "predict": _cmd_predict,
                "topk": _cmd_topk,
                "simulate": _cmd_simulate,
                "experiment": _cmd_experiment,
            }[args.command]
            handler(client, args)
        finally:
            client.close()
        return 0
    except CliError as exc:
        print(f"influcast: {exc}", file=sys.stderr)
        return exc.code
    except InflucastError as exc:
        print(f"influcast: {exc}", file=sys.stderr)
        return _KIND_CODES.get(exc.kind, 2)
    except OSError as exc:
        print(f"influcast: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

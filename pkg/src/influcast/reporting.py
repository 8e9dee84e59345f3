"""CSV emission and console rendering of experiment reports.

Layouts mirror the summary tables the experiments are judged on: mean
squared error per prediction metric (complex / simple / overall), accuracy
per algorithm and per centrality against prediction metrics, and one
fraction-infected trace table per (model, algorithm).  Floats are written
with ``repr`` so parsing a file recovers the in-memory values exactly.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import DataFormatError
from .experiment import EvalReport


def _fmt(value) -> str:
    if value is None:
        return ""
    return repr(float(value))


def _mean(values):
    return float(np.mean(values)) if values else None


def _csv(rows) -> str:
    return "".join(",".join(row) + "\n" for row in rows)


def mse_by_metric_rows(report: EvalReport):
    rows = [("prediction_metric", "complex", "simple", "overall")]
    col_complex, col_simple = [], []
    for metric in report.config.metrics:
        cells = [c for c in report.cells if c.metric == metric]
        m_complex = _mean([c.mse_complex for c in cells])
        m_simple = _mean([c.mse_simple for c in cells])
        overall = (
            (m_complex + m_simple) / 2
            if m_complex is not None and m_simple is not None
            else None
        )
        if m_complex is not None:
            col_complex.append(m_complex)
        if m_simple is not None:
            col_simple.append(m_simple)
        rows.append((metric, _fmt(m_complex), _fmt(m_simple), _fmt(overall)))
    oc, os_ = _mean(col_complex), _mean(col_simple)
    overall = (oc + os_) / 2 if oc is not None and os_ is not None else None
    rows.append(("overall", _fmt(oc), _fmt(os_), _fmt(overall)))
    return rows


def _accuracy_rows(report: EvalReport, key_of, row_names, label):
    metrics = report.config.metrics
    rows = [(label, *metrics, "overall")]
    for name in row_names:
        cells = [c for c in report.cells if key_of(c) == name]
        per_metric = [
            _mean([c.accuracy for c in cells if c.metric == m]) for m in metrics
        ]
        present = [v for v in per_metric if v is not None]
        rows.append(
            (name, *map(_fmt, per_metric), _fmt(_mean(present)))
        )
    # column means over the data rows
    footer = ["overall"]
    for col in range(1, len(metrics) + 2):
        vals = [float(r[col]) for r in rows[1:] if r[col] != ""]
        footer.append(_fmt(_mean(vals)))
    rows.append(tuple(footer))
    return rows


def accuracy_by_algorithm_rows(report: EvalReport):
    return _accuracy_rows(
        report,
        key_of=lambda c: c.algorithm,
        row_names=list(report.config.algorithms),
        label="algorithm",
    )


def accuracy_by_centrality_rows(report: EvalReport):
    """Per-centrality accuracy; the centrality-free random baseline is excluded."""
    names = []
    for cell in report.cells:
        if cell.algorithm == "random":
            continue
        if cell.centrality not in names:
            names.append(cell.centrality)

    def key_of(cell):
        return None if cell.algorithm == "random" else cell.centrality

    return _accuracy_rows(report, key_of=key_of, row_names=names, label="centrality")


def trace_rows(report: EvalReport, model: str, algorithm: str):
    series = report.traces.get((model, algorithm))
    if not series:
        return None
    names = [n for n in (*report.config.metrics, "original", "training") if n in series]
    length = max(len(series[name]) for name in names)
    rows = [("t", *names)]
    for t in range(length):
        row = [str(t)]
        for name in names:
            values = series[name]
            row.append(_fmt(values[t] if t < len(values) else values[-1]))
        rows.append(tuple(row))
    return rows


def render_csvs(report: EvalReport) -> dict[str, str]:
    """All report files as name -> CSV text."""
    files = {
        "mse_by_metric.csv": _csv(mse_by_metric_rows(report)),
        "accuracy_by_algorithm.csv": _csv(accuracy_by_algorithm_rows(report)),
        "accuracy_by_centrality.csv": _csv(accuracy_by_centrality_rows(report)),
    }
    for model in ("simple", "complex"):
        for algorithm in report.config.algorithms:
            rows = trace_rows(report, model, algorithm)
            if rows is not None:
                files[f"trace_{model}_{algorithm}.csv"] = _csv(rows)
    if report.errors:
        files["errors.txt"] = "".join(line + "\n" for line in report.errors)
    return files


def emit_report(report: EvalReport, out_dir) -> list[Path]:
    """Write every report file into ``out_dir``; returns the paths written."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        written = []
        for name, content in render_csvs(report).items():
            path = out / name
            path.write_text(content)
            written.append(path)
        return written
    except OSError as exc:
        raise DataFormatError(f"cannot write report under {out}: {exc}") from exc


def render_tables(in_dir) -> str:
    """Pretty-print every report CSV found in a directory."""
    folder = Path(in_dir)
    if not folder.is_dir():
        raise DataFormatError(f"{folder} is not a directory")
    names = [
        "mse_by_metric.csv",
        "accuracy_by_algorithm.csv",
        "accuracy_by_centrality.csv",
    ]
    names += sorted(p.name for p in folder.glob("trace_*.csv"))
    blocks = []
    for name in names:
        path = folder / name
        if not path.exists():
            continue
        rows = [line.split(",") for line in path.read_text().splitlines() if line]
        widths = [
            max(len(row[col]) if col < len(row) else 0 for row in rows)
            for col in range(max(len(r) for r in rows))
        ]
        lines = [name, "-" * len(name)]
        for row in rows:
            lines.append(
                "  ".join(
                    (row[col] if col < len(row) else "").ljust(widths[col])
                    for col in range(len(widths))
                ).rstrip()
            )
        blocks.append("\n".join(lines))
    if not blocks:
        raise DataFormatError(f"no report files found in {folder}")
    return "\n\n".join(blocks) + "\n"

"""Accuracy metrics: MAE, per-speed buckets and the evaluation report."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np
import pandas as pd

from radvel.errors import NoOverlapError
from radvel.models import Method, TruthRow, VelocityEstimate

METHODS = tuple(m.value for m in Method)  # ("phase", "doppler")
DEFAULT_BUCKET_EDGES = (0.0, 0.0341, 0.05, 0.10)


@dataclass(frozen=True)
class BucketRow:
    bucket_lo: float
    bucket_hi: float
    method: str
    mae_mps: Optional[float]   # None for an empty bucket
    count: int


@dataclass
class EvalReport:
    summary: dict[str, float] = field(default_factory=dict)  # method -> MAE
    buckets: list[BucketRow] = field(default_factory=list)
    rows: pd.DataFrame = field(
        default_factory=lambda: pd.DataFrame(
            columns=["truth_mps", *[f"{m}_mps" for m in METHODS]]
        ).rename_axis("frame")
    )


# ------------------------------------------------------------------
# Series helpers
# ------------------------------------------------------------------

def estimate_series(estimates: Iterable[VelocityEstimate]) -> pd.Series:
    """Velocity indexed by frame."""
    items = list(estimates)
    return pd.Series(
        [e.velocity_mps for e in items],
        index=pd.Index([e.frame for e in items], name="frame"),
        dtype=float,
    )


def truth_series(rows: Iterable[TruthRow]) -> pd.Series:
    items = list(rows)
    return pd.Series(
        [r.velocity_mps for r in items],
        index=pd.Index([r.frame for r in items], name="frame"),
        dtype=float,
    )


def mae(estimates: pd.Series, truth: pd.Series) -> float:
    """Mean |estimate - truth| over frames present in both series.

    Raises:
        NoOverlapError: if the series share no frame.
    """
    joined = pd.concat(
        [estimates.rename("est"), truth.rename("truth")], axis=1, join="inner"
    ).dropna()
    if joined.empty:
        raise NoOverlapError("estimates and ground truth share no frame")
    return float((joined["est"] - joined["truth"]).abs().mean())


# ------------------------------------------------------------------
# Buckets
# ------------------------------------------------------------------

def bucketed_errors(
    rows: pd.DataFrame,
    edges: Sequence[float] = DEFAULT_BUCKET_EDGES,
    methods: Sequence[str] = METHODS,
) -> list[BucketRow]:
    """Per-bucket MAE per method, buckets [lo, hi) by truth velocity.

    ``rows`` needs a ``truth_mps`` column and one ``<method>_mps`` column per
    method. Every row with a value for a method lands in exactly one bucket;
    rows outside the edges go to (-inf, first) or [last, inf) buckets, which
    are emitted only when non-empty.
    """
    edges = [float(e) for e in edges]
    if len(edges) < 2 or any(b <= a for a, b in zip(edges, edges[1:])):
        raise ValueError(f"bucket edges must be >= 2 strictly increasing values: {edges}")

    bounds = [(-math.inf, edges[0])] + list(zip(edges, edges[1:])) + [(edges[-1], math.inf)]
    outer = {0, len(bounds) - 1}

    per_method: dict[str, tuple[np.ndarray, np.ndarray]] = {}
    for method in methods:
        col = f"{method}_mps"
        if col in rows.columns and not rows.empty:
            sub = rows[["truth_mps", col]].dropna()
            truth = sub["truth_mps"].to_numpy(dtype=float)
            err = (sub[col] - sub["truth_mps"]).abs().to_numpy(dtype=float)
        else:
            truth = err = np.empty(0)
        # side="right" maps truth == edge[i] to bounds[i + 1] = [edge[i], edge[i + 1]).
        per_method[method] = (np.searchsorted(edges, truth, side="right"), err)

    out: list[BucketRow] = []
    for b, (lo, hi) in enumerate(bounds):
        for method in methods:
            idx, err = per_method[method]
            sel = err[idx == b]
            if b in outer and sel.size == 0:
                continue
            out.append(
                BucketRow(
                    bucket_lo=lo,
                    bucket_hi=hi,
                    method=method,
                    mae_mps=float(sel.mean()) if sel.size else None,
                    count=int(sel.size),
                )
            )
    return out


# ------------------------------------------------------------------
# Report
# ------------------------------------------------------------------

def build_report(
    truth: pd.Series,
    estimates: Mapping[str, pd.Series],
    edges: Sequence[float] = DEFAULT_BUCKET_EDGES,
) -> EvalReport:
    """Join every method with ground truth on frame index.

    Raises:
        NoOverlapError: if any supplied method shares no frame with truth.
    """
    summary = {}
    for method in METHODS:
        if method in estimates:
            summary[method] = mae(estimates[method], truth)

    rows = pd.DataFrame({"truth_mps": truth.astype(float)})
    for method in METHODS:
        if method in estimates:
            rows[f"{method}_mps"] = estimates[method].astype(float).reindex(rows.index)
        else:
            rows[f"{method}_mps"] = np.nan
    present = [f"{m}_mps" for m in METHODS if m in estimates]
    if present:
        rows = rows.dropna(subset=present, how="all")
    rows = rows.sort_index()
    rows.index.name = "frame"

    return EvalReport(
        summary=summary,
        buckets=bucketed_errors(rows, edges, [m for m in METHODS if m in estimates]),
        rows=rows,
    )


def format_summary(report: EvalReport) -> str:
    """One-line per-method MAE summary."""
    if not report.summary:
        return "MAE: no methods"
    parts = [f"{m} {v * 100:.3f} cm/s" for m, v in report.summary.items()]
    line = "MAE: " + ", ".join(parts)
    phase, doppler = report.summary.get("phase"), report.summary.get("doppler")
    if phase is not None and doppler:
        line += f" (phase/doppler = {phase / doppler:.3f})"
    return line

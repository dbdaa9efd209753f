"""Velocity-sweep comparison results."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Optional, Sequence, Union

import pandas as pd

from radvel.reports.estimate_log import fmt
from radvel.reports.metrics import DEFAULT_BUCKET_EDGES, BucketRow, bucketed_errors

COMPARE_HEADERS = [
    "velocity_mps",
    "truth_mps",
    "phase_mps",
    "doppler_mps",
    "mae_phase",
    "mae_doppler",
    "frames",
]


@dataclass(frozen=True)
class CompareRow:
    """One simulated velocity: mean truth, mean estimates and per-method MAE."""

    velocity_mps: float
    truth_mps: float
    phase_mps: float
    doppler_mps: float
    mae_phase: float
    mae_doppler: float
    frames: int


@dataclass(frozen=True)
class CaseFailure:
    velocity_mps: float
    error: str


@dataclass
class CaseResult:
    row: CompareRow
    frame_rows: pd.DataFrame   # truth_mps, phase_mps, doppler_mps per frame


@dataclass
class CompareResult:
    """Aggregated results across all velocity cases."""

    cases: list[CaseResult] = field(default_factory=list)
    failures: list[CaseFailure] = field(default_factory=list)

    @property
    def rows(self) -> list[CompareRow]:
        return [c.row for c in self.cases]

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def mean_mae_phase(self) -> float:
        rows = self.rows
        return sum(r.mae_phase for r in rows) / len(rows) if rows else 0.0

    @property
    def mean_mae_doppler(self) -> float:
        rows = self.rows
        return sum(r.mae_doppler for r in rows) / len(rows) if rows else 0.0

    @property
    def mae_ratio(self) -> Optional[float]:
        """Phase MAE over Doppler MAE, None when the Doppler MAE is zero."""
        if self.mean_mae_doppler == 0:
            return None
        return self.mean_mae_phase / self.mean_mae_doppler

    def frame_rows(self) -> pd.DataFrame:
        """Every case's per-frame rows stacked on a fresh index."""
        if not self.cases:
            return pd.DataFrame(columns=["truth_mps", "phase_mps", "doppler_mps"])
        return pd.concat([c.frame_rows for c in self.cases], ignore_index=True)

    def buckets(self, edges: Sequence[float] = DEFAULT_BUCKET_EDGES) -> list[BucketRow]:
        """Error by truth-speed bucket over every frame of every case."""
        return bucketed_errors(self.frame_rows(), edges)


def write_compare_table(
    result: CompareResult, sink: Union[str, Path, IO[str]], precision: int = 9
) -> int:
    """Write the comparison table; returns bytes written."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COMPARE_HEADERS)
    for r in result.rows:
        writer.writerow([
            fmt(r.velocity_mps, precision),
            fmt(r.truth_mps, precision),
            fmt(r.phase_mps, precision),
            fmt(r.doppler_mps, precision),
            fmt(r.mae_phase, precision),
            fmt(r.mae_doppler, precision),
            r.frames,
        ])
    text = buf.getvalue()

    if isinstance(sink, (str, Path)):
        path = Path(sink)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as f:
            f.write(text)
    else:
        sink.write(text)
    return len(text.encode("utf-8"))


def format_compare(
    result: CompareResult, edges: Sequence[float] = DEFAULT_BUCKET_EDGES
) -> str:
    """Pretty-print the sweep: per-velocity table, bucket errors and totals."""
    lines = [
        "=" * 62,
        "        PHASE vs DOPPLER VELOCITY COMPARISON",
        "=" * 62,
        f"  {'v (cm/s)':>9} {'truth':>9} {'phase':>9} {'doppler':>9} "
        f"{'MAE ph':>9} {'MAE dop':>9}",
    ]
    for r in result.rows:
        lines.append(
            f"  {r.velocity_mps * 100:9.3f} {r.truth_mps * 100:9.3f} "
            f"{r.phase_mps * 100:9.3f} {r.doppler_mps * 100:9.3f} "
            f"{r.mae_phase * 100:9.4f} {r.mae_doppler * 100:9.4f}"
        )

    if result.cases:
        lines.append("-" * 62)
        for b in result.buckets(edges):
            mae = "-" if b.mae_mps is None else f"{b.mae_mps * 100:.4f} cm/s"
            lines.append(
                f"  [{b.bucket_lo:g}, {b.bucket_hi:g}) {b.method:<8} "
                f"n={b.count:<4} MAE {mae}"
            )

    lines.append("-" * 62)
    lines.append(f"  Mean MAE phase:    {result.mean_mae_phase * 100:.4f} cm/s")
    lines.append(f"  Mean MAE doppler:  {result.mean_mae_doppler * 100:.4f} cm/s")
    if result.mae_ratio is not None:
        lines.append(f"  Phase/Doppler:     {result.mae_ratio:.3f}")
    for f in result.failures:
        lines.append(f"  FAILED v={f.velocity_mps:g}: {f.error}")
    lines.append("=" * 62)
    return "\n".join(lines)

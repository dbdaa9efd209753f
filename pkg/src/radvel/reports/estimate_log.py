"""CSV export/import for velocity estimates, ground truth and phase traces."""
from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable

import pandas as pd

from radvel.errors import FormatError
from radvel.models import TruthRow, VelocityEstimate

ESTIMATE_HEADERS = ["frame", "time_s", "velocity_mps", "method", "tracks"]
TRUTH_HEADERS = ["frame", "time_s", "velocity_mps"]
PHASE_TRACE_HEADERS = ["frame", "chirp", "time_s", "track", "phase_rad"]


def fmt(value: float, precision: int = 9) -> str:
    """Fixed significant-digit float formatting used by every CSV writer."""
    return f"{value:.{precision}g}"


def export_estimates_csv(
    estimates: Iterable[VelocityEstimate], output_path: str | Path, precision: int = 9
) -> Path:
    """Write estimates as ``frame,time_s,velocity_mps,method,tracks``."""
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)

    with open(output_path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(ESTIMATE_HEADERS)
        for e in estimates:
            writer.writerow([
                e.frame,
                fmt(e.time_s, precision),
                fmt(e.velocity_mps, precision),
                e.method.value,
                e.tracks,
            ])

    return output_path


def export_truth_csv(
    rows: Iterable[TruthRow], output_path: str | Path, precision: int = 9
) -> Path:
    """Write ground truth as ``frame,time_s,velocity_mps``."""
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)

    with open(output_path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(TRUTH_HEADERS)
        for r in rows:
            writer.writerow([r.frame, fmt(r.time_s, precision), fmt(r.velocity_mps, precision)])

    return output_path


def export_phase_trace_csv(rows: Iterable, output_path: str | Path, precision: int = 9) -> Path:
    """Write per-chirp phase trace rows (see ``pipeline.phase_trace``)."""
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)

    with open(output_path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(PHASE_TRACE_HEADERS)
        for r in rows:
            writer.writerow([
                r.frame,
                r.chirp,
                fmt(r.time_s, precision),
                r.track,
                fmt(r.phase_rad, precision),
            ])

    return output_path


def _read_csv(path: str | Path, headers: list[str]) -> pd.DataFrame:
    try:
        df = pd.read_csv(path)
    except (pd.errors.EmptyDataError, pd.errors.ParserError) as e:
        raise FormatError(f"{path}: unreadable CSV ({e})") from e
    if list(df.columns) != headers:
        raise FormatError(
            f"{path}: expected columns {','.join(headers)}, got {','.join(map(str, df.columns))}"
        )
    return df


def read_estimates_csv(path: str | Path) -> pd.DataFrame:
    """Load an estimate CSV; ``method`` stays a string column."""
    df = _read_csv(path, ESTIMATE_HEADERS)
    df["method"] = df["method"].astype(str)
    return df


def read_truth_csv(path: str | Path) -> pd.DataFrame:
    return _read_csv(path, TRUTH_HEADERS)

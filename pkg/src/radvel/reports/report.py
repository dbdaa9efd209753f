"""Evaluation report CSV: three sections separated by a blank line.

    method,mae_mps
    bucket_lo,bucket_hi,method,mae_mps,count
    frame,truth_mps,phase_mps,doppler_mps

Empty cells mean "absent" (an empty bucket's MAE, a frame a method skipped).
"""
from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from typing import IO, Union

import pandas as pd

from radvel.errors import FormatError
from radvel.models import Method
from radvel.reports.estimate_log import fmt
from radvel.reports.metrics import METHODS, BucketRow, EvalReport

SUMMARY_HEADERS = ["method", "mae_mps"]
BUCKET_HEADERS = ["bucket_lo", "bucket_hi", "method", "mae_mps", "count"]
ROW_HEADERS = ["frame", "truth_mps", *[f"{m}_mps" for m in METHODS]]

Sink = Union[str, Path, IO[str]]


def _cell(value, precision: int) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return fmt(float(value), precision)


def render_report(report: EvalReport, precision: int = 9) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")

    writer.writerow(SUMMARY_HEADERS)
    for method in METHODS:
        if method in report.summary:
            writer.writerow([method, _cell(report.summary[method], precision)])
    buf.write("\n")

    writer.writerow(BUCKET_HEADERS)
    for b in report.buckets:
        writer.writerow([
            _cell(b.bucket_lo, precision),
            _cell(b.bucket_hi, precision),
            b.method,
            _cell(b.mae_mps, precision),
            b.count,
        ])
    buf.write("\n")

    writer.writerow(ROW_HEADERS)
    for frame, row in report.rows.iterrows():
        writer.writerow(
            [int(frame)] + [_cell(row.get(col), precision) for col in ROW_HEADERS[1:]]
        )

    return buf.getvalue()


def write_report(report: EvalReport, sink: Sink, precision: int = 9) -> int:
    """Write ``report`` to a path or open text stream.

    Returns:
        Number of bytes written (UTF-8).
    """
    text = render_report(report, precision)
    if isinstance(sink, (str, Path)):
        path = Path(sink)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as f:
            f.write(text)
    else:
        sink.write(text)
    return len(text.encode("utf-8"))


def _split_sections(text: str) -> list[str]:
    sections = text.split("\n\n")
    if len(sections) != 3:
        raise FormatError(f"report needs 3 sections, found {len(sections)}")
    return sections


def _section_frame(section: str, headers: list[str]) -> pd.DataFrame:
    df = pd.read_csv(io.StringIO(section))
    if list(df.columns) != headers:
        raise FormatError(f"report section has columns {list(df.columns)}, expected {headers}")
    return df


def read_report(source: Union[str, Path, IO[str]]) -> EvalReport:
    """Parse a report written by ``write_report``."""
    if isinstance(source, (str, Path)):
        text = Path(source).read_text()
    else:
        text = source.read()
    summary_s, bucket_s, row_s = _split_sections(text)

    summary_df = _section_frame(summary_s, SUMMARY_HEADERS)
    summary = {str(m): float(v) for m, v in zip(summary_df["method"], summary_df["mae_mps"])}
    unknown = set(summary) - {m.value for m in Method}
    if unknown:
        raise FormatError(f"unknown methods in report: {sorted(unknown)}")

    bucket_df = _section_frame(bucket_s, BUCKET_HEADERS)
    buckets = [
        BucketRow(
            bucket_lo=float(r["bucket_lo"]),
            bucket_hi=float(r["bucket_hi"]),
            method=str(r["method"]),
            mae_mps=None if pd.isna(r["mae_mps"]) else float(r["mae_mps"]),
            count=int(r["count"]),
        )
        for r in bucket_df.to_dict("records")
    ]

    rows = _section_frame(row_s, ROW_HEADERS).set_index("frame").astype(float)
    return EvalReport(summary=summary, buckets=buckets, rows=rows)

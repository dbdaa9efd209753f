"""Command-line entry point: simulate, estimate, baseline, evaluate, compare.

Usage:
    radvel simulate --scene config/scene_single.json --out output/run.mmp
    radvel estimate --capture output/run.mmp --out output/phase.csv
    radvel baseline --capture output/run.mmp --out output/doppler.csv
    radvel evaluate --estimates output/phase.csv output/doppler.csv \\
        --truth output/run.truth.csv --out output/report.csv
    radvel compare --velocities 0.005,0.01,0.02,0.03 --out output/compare.csv

Without --out, each command writes a fixed file name (capture.mmp, phase.csv,
doppler.csv, report.csv, compare.csv) under ``reporting.output_dir``, which
RADVEL_OUTPUT_DIR overrides.

Exit codes: 0 success, 1 usage/validation, 2 I/O, 3 computation.
"""
from __future__ import annotations

import argparse
import logging
import math
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence

import pandas as pd

from radvel.baseline.doppler import doppler_capture
from radvel.config import DEFAULT_SETTINGS_PATH, AppSettings, load_settings
from radvel.core import (
    default_radar_config,
    derive_params,
    fit_granularity,
    load_radar_config,
    validate_config,
    velocity_granularity,
)
from radvel.data.capture_io import load_capture, load_raw_iq, save_capture
from radvel.data.scene_io import load_scene
from radvel.errors import (
    ConfigError,
    FormatError,
    NoOverlapError,
    RadvelError,
    SynthesisError,
)
from radvel.experiment.results import format_compare, write_compare_table
from radvel.experiment.runner import ExperimentRunner
from radvel.models import Capture, NoiseSpec, ValidatedConfig
from radvel.pipeline.estimator import PhaseVelocityEstimator, trace_rows
from radvel.reports.estimate_log import (
    export_estimates_csv,
    export_phase_trace_csv,
    export_truth_csv,
    read_estimates_csv,
    read_truth_csv,
)
from radvel.reports.metrics import METHODS, build_report, format_summary
from radvel.reports.report import write_report
from radvel.simulator.synth import synth_capture

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_COMPUTE = 3

# Phase step quoted for the desk radar's phase noise floor, degrees.
PHASE_STEP_DEG = 0.057


class UsageError(RadvelError):
    """Bad command-line arguments."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _count(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.replace(" ", ",").split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}")


# ----------------------------------------------------------------------
# Shared helpers
# ----------------------------------------------------------------------

def _radar_config(path: Optional[str]) -> ValidatedConfig:
    if path is None:
        return validate_config(default_radar_config())
    return load_radar_config(path)


def _load_input_capture(args: argparse.Namespace, settings: AppSettings) -> Capture:
    if args.raw:
        if args.config is None:
            raise UsageError("--raw needs --config to describe the stream")
        return load_raw_iq(args.capture, load_radar_config(args.config), settings.max_capture_bytes)
    return load_capture(args.capture, settings.max_capture_bytes)


def _snr(args: argparse.Namespace, settings: AppSettings) -> Optional[float]:
    if args.no_noise:
        return None
    return settings.simulator.snr_db if args.snr_db is None else args.snr_db


def _out_path(args: argparse.Namespace, settings: AppSettings, default_name: str) -> Path:
    """Explicit --out, else ``default_name`` under the reporting output directory."""
    if args.out:
        return Path(args.out)
    return Path(settings.reporting.output_dir) / default_name


def _series(frames: pd.Series, values: pd.Series) -> pd.Series:
    return pd.Series(
        values.to_numpy(dtype=float), index=pd.Index(frames.to_numpy(), name="frame")
    )


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------

def cmd_simulate(args: argparse.Namespace, settings: AppSettings) -> int:
    cfg = _radar_config(args.config)
    scene, traj = load_scene(args.scene)
    sim = settings.simulator
    noise = NoiseSpec(
        snr_db=_snr(args, settings),
        seed=sim.seed if args.seed is None else args.seed,
    )
    n_frames = sim.n_frames if args.frames is None else args.frames

    capture, truth = synth_capture(cfg, scene, traj, noise, n_frames, sim.headroom)

    out = _out_path(args, settings, "capture.mmp")
    truth_out = Path(args.truth_out) if args.truth_out else out.with_suffix(".truth.csv")
    nbytes = save_capture(capture, out)
    export_truth_csv(truth, truth_out, settings.reporting.precision)
    logger.info(f"Capture ({nbytes} bytes) written to {out}, truth to {truth_out}")

    params = derive_params(cfg)
    step = math.radians(PHASE_STEP_DEG)
    print(f"wavelength:          {params.wavelength * 1e3:.4f} mm")
    print(f"doppler_resolution:  {params.doppler_resolution * 100:.4f} cm/s")
    print(f"max_velocity:        {params.max_unambiguous_velocity:.4f} m/s")
    print(
        f"phase granularity:   {velocity_granularity(params, cfg, step) * 100:.4f} cm/s "
        f"per {PHASE_STEP_DEG} deg/chirp, "
        f"{fit_granularity(params, cfg, step) * 100:.6f} cm/s over one frame"
    )
    return EXIT_OK


def cmd_estimate(args: argparse.Namespace, settings: AppSettings) -> int:
    capture = _load_input_capture(args, settings)
    pipeline = replace(
        settings.pipeline,
        n_peaks=settings.pipeline.n_peaks if args.n_peaks is None else args.n_peaks,
        min_frames=settings.pipeline.min_frames if args.min_frames is None else args.min_frames,
    )
    estimator = PhaseVelocityEstimator(pipeline)
    estimates = estimator.process(capture, keep_series=bool(args.phase_trace))

    path = export_estimates_csv(
        estimates, _out_path(args, settings, "phase.csv"), settings.reporting.precision
    )
    if not estimates:
        logger.warning(f"No static reflectors in {args.capture}; wrote an empty estimate log")
    else:
        logger.info(f"{len(estimates)} phase estimates written to {path}")

    if args.phase_trace:
        rows = trace_rows(estimator.phase_series, capture.config.frame_period)
        export_phase_trace_csv(rows, args.phase_trace, settings.reporting.precision)
        logger.info(f"Phase trace ({len(rows)} rows) written to {args.phase_trace}")
    return EXIT_OK


def cmd_baseline(args: argparse.Namespace, settings: AppSettings) -> int:
    capture = _load_input_capture(args, settings)
    estimates = doppler_capture(
        capture,
        zero_pad=args.zero_pad or settings.doppler.zero_pad,
        rx=settings.pipeline.rx_channel,
    )
    path = export_estimates_csv(
        estimates, _out_path(args, settings, "doppler.csv"), settings.reporting.precision
    )
    if not estimates:
        logger.warning(f"No reflector in any frame of {args.capture}; wrote an empty estimate log")
    else:
        logger.info(f"{len(estimates)} doppler estimates written to {path}")
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace, settings: AppSettings) -> int:
    truth_df = read_truth_csv(args.truth)
    truth = _series(truth_df["frame"], truth_df["velocity_mps"])

    estimates: dict[str, pd.Series] = {}
    for path in args.estimates:
        df = read_estimates_csv(path)
        if df.empty:
            raise NoOverlapError(f"{path}: no estimates to evaluate")
        for method, group in df.groupby("method", sort=False):
            if method not in METHODS:
                raise FormatError(f"{path}: unknown method {method!r}")
            if method in estimates:
                raise ConfigError(f"method {method!r} supplied more than once")
            estimates[method] = _series(group["frame"], group["velocity_mps"])

    report = build_report(truth, estimates, settings.evaluation.bucket_edges)
    out = _out_path(args, settings, "report.csv")
    nbytes = write_report(report, out, settings.reporting.precision)
    logger.info(f"Report ({nbytes} bytes) written to {out}")
    print(format_summary(report))
    return EXIT_OK


def cmd_compare(args: argparse.Namespace, settings: AppSettings) -> int:
    settings = replace(
        settings,
        simulator=replace(settings.simulator, snr_db=_snr(args, settings)),
    )
    velocities = (
        settings.evaluation.compare_velocities if args.velocities is None else args.velocities
    )
    runner = ExperimentRunner(settings, _radar_config(args.config))
    result = runner.run(velocities, seed=args.seed, n_frames=args.frames, workers=args.workers)

    out = _out_path(args, settings, "compare.csv")
    nbytes = write_compare_table(result, out, settings.reporting.precision)
    logger.info(f"Comparison table ({nbytes} bytes) written to {out}")
    print(format_compare(result, settings.evaluation.bucket_edges))
    if not result.ok:
        logger.error(f"{len(result.failures)} of {len(velocities)} velocity cases failed")
        return EXIT_COMPUTE
    return EXIT_OK


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--settings", default=DEFAULT_SETTINGS_PATH,
                        help="Path to YAML settings file")
    common.add_argument("--verbose", action="store_true",
                        help="Per-frame track logging")

    parser = _Parser(prog="radvel", description="Radar ego-velocity toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common], help="Synthesize a capture and ground truth")
    p.add_argument("--config", default=None, help="Radar config JSON (default: built-in)")
    p.add_argument("--scene", required=True, help="Scene/trajectory JSON")
    p.add_argument("--out", default=None,
                   help="Output MMP1 capture (default: <output_dir>/capture.mmp)")
    p.add_argument("--truth-out", default=None,
                   help="Output truth CSV (default: <out>.truth.csv)")
    p.add_argument("--frames", type=_count, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--snr-db", type=float, default=None)
    p.add_argument("--no-noise", action="store_true", help="Disable additive noise")
    p.set_defaults(func=cmd_simulate)

    for name, func, text in (
        ("estimate", cmd_estimate, "Phase-method velocity per frame"),
        ("baseline", cmd_baseline, "Doppler-FFT velocity per frame"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--capture", required=True, help="Input capture")
        p.add_argument("--out", default=None,
                       help="Output estimate CSV (default: <output_dir>/"
                       + ("phase.csv)" if name == "estimate" else "doppler.csv)"))
        p.add_argument("--raw", action="store_true",
                       help="Input is headerless int16 I/Q described by --config")
        p.add_argument("--config", default=None, help="Radar config JSON for --raw")
        if name == "estimate":
            p.add_argument("--n-peaks", type=int, default=None)
            p.add_argument("--min-frames", type=int, default=None)
            p.add_argument("--phase-trace", default=None,
                           help="Also write per-chirp phases to this CSV")
        else:
            p.add_argument("--zero-pad", action="store_true",
                           help="Pad the chirp axis to the next power of two")
        p.set_defaults(func=func)

    p = sub.add_parser("evaluate", parents=[common], help="Score estimates against truth")
    p.add_argument("--estimates", nargs="+", required=True, help="Estimate CSV(s)")
    p.add_argument("--truth", required=True, help="Truth CSV")
    p.add_argument("--out", default=None,
                   help="Output report CSV (default: <output_dir>/report.csv)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("compare", parents=[common], help="Phase vs Doppler velocity sweep")
    p.add_argument("--config", default=None, help="Radar config JSON (default: built-in)")
    p.add_argument("--velocities", type=_float_list, default=None,
                   help="Comma-separated velocities, m/s")
    p.add_argument("--out", default=None,
                   help="Output comparison CSV (default: <output_dir>/compare.csv)")
    p.add_argument("--frames", type=_count, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--snr-db", type=float, default=None)
    p.add_argument("--no-noise", action="store_true", help="Disable additive noise")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_compare)

    return parser


def _configure_logging(settings: AppSettings, verbose: bool) -> None:
    level = logging.DEBUG if verbose else logging.getLevelName(settings.logging.level.upper())
    if not isinstance(level, int):
        raise ConfigError(f"unknown log level {settings.logging.level!r}")
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
    )
    logging.getLogger("radvel").setLevel(level)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        settings = load_settings(args.settings)
        _configure_logging(settings, args.verbose)
        return args.func(args, settings)
    except (UsageError, ConfigError, FormatError, NoOverlapError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except SynthesisError as e:
        print(f"error: synthesis failed: {e}", file=sys.stderr)
        return EXIT_COMPUTE
    except RadvelError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())

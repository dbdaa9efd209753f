#!/usr/bin/env python3
"""Velocity sweep below and around the Doppler resolution.

Runs the phase method and the Doppler baseline over a grid of constant ego
velocities and SNRs, then prints MAE per method and their ratio.

Usage:
    python scripts/run_subdoppler_sweep.py
    python scripts/run_subdoppler_sweep.py --step 0.005 --max 0.10 --snr-db none 30 20
"""
from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from dotenv import load_dotenv
load_dotenv()

from radvel.config import load_settings
from radvel.core import default_radar_config, derive_params, validate_config
from radvel.experiment.results import write_compare_table
from radvel.experiment.runner import ExperimentRunner

logging.basicConfig(
    level=logging.WARNING,
    format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
)


def parse_snr(s: str):
    return None if s.lower() in ("none", "off") else float(s)


def main():
    parser = argparse.ArgumentParser(description="Phase vs Doppler sub-resolution sweep")
    parser.add_argument("--config", default="config/default_config.yaml",
                        help="Path to settings file")
    parser.add_argument("--step", type=float, default=0.005, help="Velocity step, m/s")
    parser.add_argument("--max", dest="v_max", type=float, default=0.10,
                        help="Largest velocity, m/s")
    parser.add_argument("--snr-db", nargs="+", type=parse_snr, default=[None, 30.0],
                        help="SNR values to sweep ('none' = noiseless)")
    parser.add_argument("--frames", type=int, default=10)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--output", default=None, help="Directory for per-SNR tables")
    args = parser.parse_args()

    settings = load_settings(args.config)
    cfg = validate_config(default_radar_config())
    params = derive_params(cfg)
    velocities = list(np.round(np.arange(args.step, args.v_max + args.step / 2, args.step), 6))

    print(f"Doppler resolution: {params.doppler_resolution * 100:.3f} cm/s")
    print(f"Velocities: {len(velocities)} from {velocities[0]} to {velocities[-1]} m/s")
    print("=" * 60)
    print(f"{'SNR':>8} {'phase MAE':>12} {'doppler MAE':>12} {'ratio':>8} {'failed':>7}")
    print("-" * 60)

    for snr in args.snr_db:
        run_settings = replace(settings, simulator=replace(settings.simulator, snr_db=snr))
        runner = ExperimentRunner(run_settings, cfg)
        result = runner.run(velocities, n_frames=args.frames, workers=args.workers)

        ratio = f"{result.mae_ratio:.3f}" if result.mae_ratio is not None else "-"
        label = "off" if snr is None else f"{snr:g} dB"
        print(
            f"{label:>8} {result.mean_mae_phase * 100:>9.4f} cm/s"
            f"{result.mean_mae_doppler * 100:>9.4f} cm/s {ratio:>8} {len(result.failures):>7}"
        )

        if args.output:
            out = Path(args.output) / f"subdoppler_{label.replace(' ', '')}.csv"
            write_compare_table(result, out, settings.reporting.precision)
            print(f"{'':>8} table written to {out}")

    print("=" * 60)


if __name__ == "__main__":
    main()

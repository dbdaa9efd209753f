"""Velocity-sweep orchestrator: simulate, run both estimators, score."""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

import numpy as np

from radvel.baseline.doppler import doppler_capture
from radvel.config import AppSettings
from radvel.core import default_radar_config, derive_params, validate_config
from radvel.errors import ConfigError, RadvelError
from radvel.experiment.results import CaseFailure, CaseResult, CompareResult, CompareRow
from radvel.models import (
    EgoTrajectory,
    NoiseSpec,
    RadarConfig,
    Reflector,
    Scene,
    ValidatedConfig,
)
from radvel.pipeline.estimator import PhaseVelocityEstimator
from radvel.reports.metrics import build_report, estimate_series, truth_series
from radvel.simulator.synth import synth_capture

logger = logging.getLogger(__name__)

_SEED_MASK = (1 << 64) - 1


def case_seed(base_seed: int, case_index: int) -> int:
    """Per-case noise seed, independent of which worker runs the case."""
    state = np.random.SeedSequence([base_seed & _SEED_MASK, case_index]).generate_state(
        1, np.uint64
    )
    return int(state[0])


def run_case(
    cfg: ValidatedConfig,
    settings: AppSettings,
    velocity_mps: float,
    seed: int,
    n_frames: Optional[int] = None,
) -> CaseResult:
    """Simulate one constant-velocity run and score both methods against truth.

    Raises:
        RadvelError: from synthesis, estimation or scoring.
    """
    sim = settings.simulator
    frames = sim.n_frames if n_frames is None else n_frames
    scene = Scene(reflectors=(Reflector(distance_m=sim.distance_m, amplitude=sim.amplitude),))
    capture, truth_rows = synth_capture(
        cfg,
        scene,
        EgoTrajectory.constant(velocity_mps),
        NoiseSpec(snr_db=sim.snr_db, seed=seed),
        frames,
        headroom=sim.headroom,
    )

    phase = PhaseVelocityEstimator(settings.pipeline).process(capture)
    doppler = doppler_capture(
        capture, zero_pad=settings.doppler.zero_pad, rx=settings.pipeline.rx_channel
    )

    truth = truth_series(truth_rows)
    report = build_report(
        truth,
        {"phase": estimate_series(phase), "doppler": estimate_series(doppler)},
        settings.evaluation.bucket_edges,
    )
    rows = report.rows
    return CaseResult(
        row=CompareRow(
            velocity_mps=float(velocity_mps),
            truth_mps=float(truth.mean()),
            phase_mps=float(rows["phase_mps"].mean()),
            doppler_mps=float(rows["doppler_mps"].mean()),
            mae_phase=report.summary["phase"],
            mae_doppler=report.summary["doppler"],
            frames=len(rows),
        ),
        frame_rows=rows.reset_index(drop=True),
    )


def _run_indexed(args: tuple) -> tuple[int, Optional[CaseResult], Optional[str]]:
    """Worker entry point; errors come back as text so one case cannot sink the pool."""
    idx, cfg, settings, velocity, seed, n_frames = args
    try:
        return idx, run_case(cfg, settings, velocity, seed, n_frames), None
    except RadvelError as e:
        return idx, None, f"{type(e).__name__}: {e}"


class ExperimentRunner:
    """Runs the phase-vs-Doppler comparison across a list of velocities."""

    def __init__(
        self,
        settings: Optional[AppSettings] = None,
        radar_config: Optional[RadarConfig] = None,
    ):
        self._settings = settings or AppSettings()
        self._cfg = validate_config(radar_config or default_radar_config())
        self._params = derive_params(self._cfg)

    def check_velocities(self, velocities: Sequence[float]) -> list[float]:
        """Reject an empty list or any |v| at or beyond the unambiguous limit.

        Raises:
            ConfigError: naming the first offending velocity.
        """
        if not velocities:
            raise ConfigError("velocity list is empty")
        limit = self._params.max_unambiguous_velocity
        out = []
        for v in velocities:
            v = float(v)
            if not np.isfinite(v) or abs(v) >= limit:
                raise ConfigError(
                    f"velocity {v} m/s outside the unambiguous range (+/-{limit:.4f} m/s)"
                )
            out.append(v)
        return out

    def run(
        self,
        velocities: Sequence[float],
        seed: Optional[int] = None,
        n_frames: Optional[int] = None,
        workers: Optional[int] = None,
    ) -> CompareResult:
        """Run every velocity case; output order follows ``velocities``.

        Args:
            velocities: Constant ego velocities, m/s.
            seed: Base seed; case i uses ``case_seed(seed, i)``.
            n_frames: Frames per case (default: simulator settings).
            workers: Process count; 1 runs in-process.

        Returns:
            CompareResult with one row per successful case and one failure
            per case that raised.
        """
        velocities = self.check_velocities(velocities)
        base = self._settings.simulator.seed if seed is None else seed
        workers = self._settings.evaluation.workers if workers is None else workers
        if workers < 1:
            raise ConfigError(f"workers must be >= 1, got {workers}")

        jobs = [
            (i, self._cfg, self._settings, v, case_seed(base, i), n_frames)
            for i, v in enumerate(velocities)
        ]
        logger.info(
            f"Comparing {len(jobs)} velocities, base seed {base}, {workers} worker(s)"
        )

        if workers == 1 or len(jobs) == 1:
            outcomes = [_run_indexed(job) for job in jobs]
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(_run_indexed, jobs))

        result = CompareResult()
        for idx, case, error in sorted(outcomes, key=lambda o: o[0]):
            v = velocities[idx]
            if case is None:
                logger.error(f"  v={v:g} m/s failed: {error}")
                result.failures.append(CaseFailure(velocity_mps=v, error=error or ""))
                continue
            logger.info(
                f"  v={v:g} m/s: phase MAE {case.row.mae_phase:.6f}, "
                f"doppler MAE {case.row.mae_doppler:.6f}"
            )
            result.cases.append(case)
        return result

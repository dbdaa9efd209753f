"""Capture-level orchestration of the phase-based velocity pipeline."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from radvel.config import PipelineSettings
from radvel.core import derive_params, validate_config
from radvel.errors import ConfigError
from radvel.models import Capture, PeakSet, PhaseSeries, ReflectorTrack, VelocityEstimate
from radvel.pipeline.phase import estimate_track_velocity, extract_phase_series, fuse_velocities
from radvel.pipeline.range_profile import frame_peaks, range_profiles
from radvel.pipeline.tracker import ReflectorTracker

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PhaseTraceRow:
    frame: int
    chirp: int
    time_s: float
    track: int
    phase_rad: float


class PhaseVelocityEstimator:
    """Runs range FFT → peaks → tracking → phase slope → fusion over a capture.

    Tracking needs every frame in order, so the capture is processed in two
    passes: the first feeds all peak sets to the tracker, the second estimates
    each frame from the static tracks that have an entry in it.
    """

    def __init__(self, settings: Optional[PipelineSettings] = None):
        self._settings = settings or PipelineSettings()
        s = self._settings
        if s.n_peaks < 1:
            raise ConfigError(f"n_peaks must be >= 1, got {s.n_peaks}")
        if s.min_frames < 1:
            raise ConfigError(f"min_frames must be >= 1, got {s.min_frames}")
        if s.gate_bins < 0 or s.max_misses < 0:
            raise ConfigError("gate_bins and max_misses must be >= 0")
        self._series: list[PhaseSeries] = []
        self._static: list[ReflectorTrack] = []

    @property
    def static_tracks(self) -> list[ReflectorTrack]:
        """Static tracks found by the last ``process()`` call."""
        return list(self._static)

    @property
    def phase_series(self) -> list[PhaseSeries]:
        """Series kept by the last ``process(keep_series=True)`` call."""
        return list(self._series)

    def process(self, capture: Capture, keep_series: bool = False) -> list[VelocityEstimate]:
        s = self._settings
        cfg = validate_config(capture.config)
        params = derive_params(cfg)
        if not 0 <= s.rx_channel < cfg.num_rx:
            raise ConfigError(f"rx_channel {s.rx_channel} outside 0..{cfg.num_rx - 1}")

        tracker = ReflectorTracker(gate_bins=s.gate_bins, max_misses=s.max_misses)
        peak_sets: dict[int, PeakSet] = {}
        for frame in capture.frames:
            profiles = range_profiles(frame, cfg)
            peaks = frame_peaks(profiles, s.n_peaks, s.peak_floor_db, s.rx_channel)
            peak_sets[frame.index] = peaks
            tracker.update(peaks, frame.index)
            logger.debug(
                f"frame {frame.index}: peaks {peaks.bins}, "
                f"{len(tracker.state.active)} active tracks"
            )

        self._static = tracker.static_tracks(s.min_frames)
        self._series = []
        logger.info(
            f"{len(capture.frames)} frames, {len(self._static)} static tracks "
            f"(anchors {[t.anchor_bin for t in self._static]})"
        )

        estimates: list[VelocityEstimate] = []
        for frame in capture.frames:
            tracks = [t for t in self._static if t.entry_for(frame.index) is not None]
            if not tracks:
                logger.debug(f"frame {frame.index}: no static track, no estimate")
                continue

            profiles = range_profiles(frame, cfg)
            per_track: list[tuple[float, float]] = []
            for track in tracks:
                series = extract_phase_series(profiles, track, s.rx_channel)
                per_track.append((estimate_track_velocity(series, params), series.magnitude))
                if keep_series:
                    self._series.append(series)

            est = fuse_velocities(
                per_track, frame=frame.index, time_s=frame.index * cfg.frame_period
            )
            logger.debug(
                f"frame {frame.index}: {est.tracks} tracks, v={est.velocity_mps:+.6f} m/s"
            )
            estimates.append(est)

        return estimates


def process_capture(
    capture: Capture,
    n_peaks: int = 5,
    min_frames: int = 3,
    settings: Optional[PipelineSettings] = None,
) -> list[VelocityEstimate]:
    """Phase-method velocity estimates for every frame with a usable track."""
    base = settings or PipelineSettings()
    merged = PipelineSettings(
        n_peaks=n_peaks,
        min_frames=min_frames,
        gate_bins=base.gate_bins,
        max_misses=base.max_misses,
        peak_floor_db=base.peak_floor_db,
        rx_channel=base.rx_channel,
    )
    return PhaseVelocityEstimator(merged).process(capture)


def trace_rows(series_list: list[PhaseSeries], frame_period: float) -> list[PhaseTraceRow]:
    """Flatten phase series into one row per chirp."""
    rows: list[PhaseTraceRow] = []
    for series in series_list:
        start = series.frame * frame_period
        for k, phi in enumerate(series.phases):
            rows.append(
                PhaseTraceRow(
                    frame=series.frame,
                    chirp=k,
                    time_s=start + k * series.dt,
                    track=series.track_id,
                    phase_rad=float(phi),
                )
            )
    return rows


def phase_trace(
    capture: Capture, settings: Optional[PipelineSettings] = None
) -> list[PhaseTraceRow]:
    """Per-chirp unwrapped phase at every static track, frame by frame."""
    estimator = PhaseVelocityEstimator(settings)
    estimator.process(capture, keep_series=True)
    return trace_rows(estimator.phase_series, capture.config.frame_period)

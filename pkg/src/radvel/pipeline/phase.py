"""Phase extraction at a tracked bin and phase-slope velocity."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from radvel.dsp.unwrap import unwrap_phase
from radvel.errors import InsufficientDataError, MissingFrameError, NoTracksError
from radvel.models import (
    DerivedParams,
    Method,
    PhaseSeries,
    ReflectorTrack,
    VelocityEstimate,
)
from radvel.pipeline.range_profile import RangeProfiles


def extract_phase_series(
    profiles: RangeProfiles, track: ReflectorTrack, rx: int = 0
) -> PhaseSeries:
    """Unwrapped per-chirp phase at the track's bin for this frame.

    Raises:
        MissingFrameError: if the track has no entry for ``profiles.frame``.
    """
    entry = track.entry_for(profiles.frame)
    if entry is None:
        raise MissingFrameError(
            f"track {track.track_id} has no entry for frame {profiles.frame}"
        )
    values = profiles.spectra[:, rx, entry.bin]
    return PhaseSeries(
        track_id=track.track_id,
        frame=profiles.frame,
        phases=unwrap_phase(np.angle(values)),
        dt=profiles.chirp_interval,
        bin=entry.bin,
        magnitude=float(np.abs(values).mean()),
    )


def estimate_track_velocity(series: PhaseSeries, params: DerivedParams) -> float:
    """Ego velocity from the least-squares phase slope, v = -(lambda / 4pi) dphi/dt.

    Approaching a reflector shrinks its distance and therefore its phase, so a
    negative slope yields a positive velocity.

    Raises:
        InsufficientDataError: for fewer than two phase samples.
    """
    if len(series) < 2:
        raise InsufficientDataError(
            f"need >= 2 phase samples for a slope, got {len(series)}"
        )
    slope, _ = np.polyfit(series.times, series.phases, 1)
    return float(-params.phase_velocity_factor * slope)


def fuse_velocities(
    per_track: Sequence[tuple[float, float]],
    frame: int = 0,
    time_s: float = 0.0,
) -> VelocityEstimate:
    """Median of per-track velocities (lower median for even counts).

    ``per_track`` holds (velocity, track magnitude) pairs; magnitudes are
    carried for reporting but do not weight the median.

    Raises:
        NoTracksError: on empty input.
    """
    if not per_track:
        raise NoTracksError(f"frame {frame}: no tracks to fuse")
    velocities = sorted(v for v, _ in per_track)
    median = velocities[(len(velocities) - 1) // 2]
    return VelocityEstimate(
        frame=frame,
        time_s=time_s,
        velocity_mps=float(median),
        method=Method.PHASE,
        tracks=len(velocities),
    )

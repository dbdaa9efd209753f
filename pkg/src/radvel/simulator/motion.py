"""Piecewise-constant ego motion: displacement, distance and mean velocity."""
from __future__ import annotations

import numpy as np

from radvel.errors import ConfigError, RangeError
from radvel.models import EgoTrajectory


def validate_trajectory(traj: EgoTrajectory) -> EgoTrajectory:
    """Segments must start at 0 s with strictly increasing start times."""
    if not traj.segments:
        raise ConfigError("trajectory needs at least one segment")
    starts = [s.start_s for s in traj.segments]
    if starts[0] != 0.0:
        raise ConfigError(f"trajectory must start at t=0, first segment starts at {starts[0]}")
    if any(b <= a for a, b in zip(starts, starts[1:])):
        raise ConfigError(f"segment start times must strictly increase: {starts}")
    if not all(np.isfinite(s.velocity_mps) for s in traj.segments):
        raise ConfigError("segment velocities must be finite")
    return traj


def displacement(traj: EgoTrajectory, t: np.ndarray | float) -> np.ndarray:
    """Integral of v from 0 to t, exact for piecewise-constant v."""
    t = np.asarray(t, dtype=np.float64)
    starts = np.array([s.start_s for s in traj.segments])
    ends = np.append(starts[1:], np.inf)
    total = np.zeros_like(t)
    for seg, start, end in zip(traj.segments, starts, ends):
        total = total + seg.velocity_mps * np.clip(t - start, 0.0, end - start)
    return total


def distances_at(traj: EgoTrajectory, d0: float, t: np.ndarray) -> np.ndarray:
    """Vectorized :func:`distance_at`."""
    t = np.asarray(t, dtype=np.float64)
    if np.any(t < 0):
        raise ValueError("time must be >= 0")
    d = d0 - displacement(traj, t)
    if np.any(d <= 0):
        bad = float(t.ravel()[np.argmax(d.ravel() <= 0)])
        raise RangeError(f"reflector at d0={d0} m passed by the ego at t={bad:.6f} s")
    return d


def distance_at(traj: EgoTrajectory, d0: float, t: float) -> float:
    """Distance d(t) = d0 - integral_0^t v.

    Raises:
        RangeError: if d(t) <= 0 (the ego has reached or passed the reflector).
    """
    return float(distances_at(traj, d0, np.array([t]))[0])


def velocity_at(traj: EgoTrajectory, t: float) -> float:
    current = traj.segments[0].velocity_mps
    for seg in traj.segments:
        if seg.start_s <= t:
            current = seg.velocity_mps
    return current


def mean_velocity(traj: EgoTrajectory, t0: float, t1: float) -> float:
    """Average velocity over [t0, t1]; instantaneous velocity when t1 == t0."""
    if t1 <= t0:
        return velocity_at(traj, t0)
    x = displacement(traj, np.array([t0, t1]))
    return float((x[1] - x[0]) / (t1 - t0))

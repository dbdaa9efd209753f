"""Phase-based ego-velocity pipeline."""
from radvel.pipeline.estimator import PhaseVelocityEstimator, phase_trace, process_capture
from radvel.pipeline.phase import estimate_track_velocity, extract_phase_series, fuse_velocities
from radvel.pipeline.range_profile import RangeProfiles, frame_peaks, range_profiles
from radvel.pipeline.tracker import ReflectorTracker, select_static_tracks, update_tracks

__all__ = [
    "PhaseVelocityEstimator",
    "RangeProfiles",
    "ReflectorTracker",
    "estimate_track_velocity",
    "extract_phase_series",
    "frame_peaks",
    "fuse_velocities",
    "phase_trace",
    "process_capture",
    "range_profiles",
    "select_static_tracks",
    "update_tracks",
]

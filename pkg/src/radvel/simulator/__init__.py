"""FMCW raw-ADC simulator used as the ground-truth oracle."""
from radvel.simulator.motion import distance_at, mean_velocity, validate_trajectory
from radvel.simulator.synth import synth_capture, synth_chirp, validate_scene

__all__ = [
    "distance_at",
    "mean_velocity",
    "synth_capture",
    "synth_chirp",
    "validate_scene",
    "validate_trajectory",
]

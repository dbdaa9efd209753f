"""Doppler-FFT velocity baseline."""
from radvel.baseline.doppler import DopplerMap, doppler_capture, doppler_map, doppler_velocity

__all__ = ["DopplerMap", "doppler_capture", "doppler_map", "doppler_velocity"]

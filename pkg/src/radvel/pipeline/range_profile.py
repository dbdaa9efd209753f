"""Per-chirp range FFT and per-frame peak selection."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from radvel.core import next_pow2
from radvel.dsp.fft import fft_complex
from radvel.dsp.peaks import default_bin_range, top_n_peaks
from radvel.dsp.window import hann_window
from radvel.models import Frame, PeakSet, ValidatedConfig


@dataclass(frozen=True, eq=False)
class RangeProfiles:
    """Range spectra of one frame, shape (chirps, rx, n_fft); bin 0 = DC."""

    frame: int
    spectra: np.ndarray
    chirp_interval: float   # s between chirps

    @property
    def num_chirps(self) -> int:
        return int(self.spectra.shape[0])

    @property
    def n_fft(self) -> int:
        return int(self.spectra.shape[-1])

    def magnitude_profile(self, rx: int = 0) -> np.ndarray:
        """Mean |spectrum| across chirps for one receive channel."""
        return np.abs(self.spectra[:, rx, :]).mean(axis=0)


def range_profiles(frame: Frame, cfg: ValidatedConfig) -> RangeProfiles:
    """Hann-window fast time, zero-pad to a power of two, forward FFT per chirp."""
    if not frame.matches(cfg):
        raise ValueError(
            f"frame {frame.index} has shape {frame.iq.shape[:3]}, config expects "
            f"({cfg.chirps_per_frame}, {cfg.num_rx}, {cfg.samples_per_chirp})"
        )
    n_s = cfg.samples_per_chirp
    n_fft = next_pow2(n_s)

    windowed = frame.samples * hann_window(n_s)
    if n_fft > n_s:
        windowed = np.pad(windowed, [(0, 0), (0, 0), (0, n_fft - n_s)])

    return RangeProfiles(
        frame=frame.index,
        spectra=fft_complex(windowed, axis=-1),
        chirp_interval=cfg.chirp_repetition_time,
    )


def frame_peaks(
    profiles: RangeProfiles,
    n: int,
    floor_db: float | None = 25.0,
    rx: int = 0,
) -> PeakSet:
    """Top-N range peaks of the chirp-averaged magnitude profile.

    Peaks more than ``floor_db`` below the strongest in-window magnitude are
    ignored; ``None`` disables the floor.
    """
    if profiles.n_fft < 2:
        return PeakSet()
    mags = profiles.magnitude_profile(rx)
    lo, hi = default_bin_range(profiles.n_fft)
    threshold = 0.0
    if floor_db is not None:
        strongest = float(mags[lo : hi + 1].max())
        threshold = strongest * 10.0 ** (-floor_db / 20.0)
    return top_n_peaks(mags, n, lo, hi, threshold=threshold)

"""Velocity from the peak of a slow-time (Doppler) FFT.

The estimate is quantized to the Doppler bin width
lambda / (2 * N_c_fft * chirp_repetition_time), which is the resolution
limit the phase method is meant to beat.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from radvel.core import derive_params, next_pow2, validate_config
from radvel.dsp.fft import fft_complex
from radvel.dsp.peaks import default_bin_range
from radvel.dsp.window import hann_window
from radvel.errors import ConfigError
from radvel.models import (
    Capture,
    DerivedParams,
    Frame,
    Method,
    ValidatedConfig,
    VelocityEstimate,
)
from radvel.pipeline.range_profile import range_profiles

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DopplerMap:
    """Magnitudes [doppler bin, range bin]; row n_doppler // 2 is zero velocity."""

    frame: int
    magnitudes: np.ndarray

    @property
    def n_doppler(self) -> int:
        return int(self.magnitudes.shape[0])

    @property
    def n_range(self) -> int:
        return int(self.magnitudes.shape[1])

    @property
    def center(self) -> int:
        return self.n_doppler // 2


def doppler_map(
    frame: Frame, cfg: ValidatedConfig, zero_pad: bool = False, rx: int = 0
) -> DopplerMap:
    """Range FFT per chirp, then a Hann-windowed FFT across chirps per range bin.

    Without ``zero_pad`` the slow-time length stays N_c (native resolution);
    with it the chirp axis is padded to the next power of two.
    """
    spectra = range_profiles(frame, cfg).spectra[:, rx, :]
    n_c = spectra.shape[0]
    slow = spectra * hann_window(n_c)[:, None]

    if zero_pad:
        n_dop = next_pow2(n_c)
        slow = np.pad(slow, [(0, n_dop - n_c), (0, 0)])
        doppler = fft_complex(slow, axis=0)
    else:
        doppler = np.fft.fft(slow, axis=0)

    return DopplerMap(
        frame=frame.index,
        magnitudes=np.abs(np.fft.fftshift(doppler, axes=0)),
    )


def doppler_velocity(
    frame: Frame,
    cfg: ValidatedConfig,
    params: DerivedParams,
    zero_pad: bool = False,
    rx: int = 0,
) -> VelocityEstimate:
    """Velocity at the global Doppler-map peak over range bins [1, N/2 - 1].

    For an even Doppler length row 0 is the Nyquist alias, +/- the
    unambiguous velocity at once; it is left out of the search so every
    estimate stays strictly inside the unambiguous range.

    An empty (all-zero) map yields velocity 0 with ``tracks == 0``.
    """
    dmap = doppler_map(frame, cfg, zero_pad, rx)
    lo, hi = default_bin_range(dmap.n_range)
    first_row = 1 if dmap.n_doppler % 2 == 0 else 0
    window = dmap.magnitudes[first_row:, lo : hi + 1]
    time_s = frame.index * cfg.frame_period

    if window.size == 0 or float(window.max()) <= 0.0:
        return VelocityEstimate(frame.index, time_s, 0.0, Method.DOPPLER, tracks=0)

    d_idx, r_idx = np.unravel_index(int(np.argmax(window)), window.shape)
    offset = int(d_idx) + first_row - dmap.center
    bin_width = params.wavelength / (2.0 * dmap.n_doppler * cfg.chirp_repetition_time)
    # Approaching reflectors rotate phase negatively, i.e. land below centre.
    velocity = 0.0 - offset * bin_width
    logger.debug(
        f"frame {frame.index}: doppler peak at range bin {lo + int(r_idx)}, "
        f"offset {offset}, v={velocity:+.6f} m/s"
    )
    return VelocityEstimate(frame.index, time_s, float(velocity), Method.DOPPLER, tracks=1)


def doppler_capture(
    capture: Capture, zero_pad: bool = False, rx: int = 0
) -> list[VelocityEstimate]:
    """Doppler estimates for every frame that shows a reflector."""
    cfg = validate_config(capture.config)
    if not 0 <= rx < cfg.num_rx:
        raise ConfigError(f"rx channel {rx} outside 0..{cfg.num_rx - 1}")
    params = derive_params(cfg)
    estimates = [
        doppler_velocity(frame, cfg, params, zero_pad, rx) for frame in capture.frames
    ]
    return [e for e in estimates if e.tracks > 0]

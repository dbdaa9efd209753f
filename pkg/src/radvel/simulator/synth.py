"""FMCW beat-signal synthesis with seeded noise and int16 quantization.

Each reflector contributes A * exp(j(2 pi f_b tau + phi)) per fast-time
sample, with f_b = 2 S d / c and phi = 4 pi d / lambda. Fast time tau is
measured from the centre of the active sampling window, so phi is the beat
phase at the carrier frequency. Distance is frozen within a chirp
(stop-and-hop).
"""
from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from radvel.core import SPEED_OF_LIGHT, derive_params, validate_config
from radvel.errors import ConfigError, QuantizationError
from radvel.models import (
    Capture,
    EgoTrajectory,
    Frame,
    NoiseSpec,
    Reflector,
    Scene,
    TruthRow,
    ValidatedConfig,
)
from radvel.simulator.motion import distances_at, mean_velocity, validate_trajectory

logger = logging.getLogger(__name__)

INT16_FULL_SCALE = 32767
_SEED_MASK = (1 << 64) - 1


def validate_scene(scene: Scene, cfg: ValidatedConfig) -> Scene:
    """Distances in (0, unambiguous range), amplitudes in (0, 1]."""
    max_range = derive_params(cfg).max_range
    for i, r in enumerate(scene.reflectors):
        if not 0.0 < r.distance_m < max_range:
            raise ConfigError(
                f"reflector {i}: distance {r.distance_m} m outside (0, {max_range:.3f}) m"
            )
        if not 0.0 < r.amplitude <= 1.0:
            raise ConfigError(f"reflector {i}: amplitude {r.amplitude} outside (0, 1]")
        if (
            r.appear_frame is not None
            and r.disappear_frame is not None
            and r.disappear_frame <= r.appear_frame
        ):
            raise ConfigError(f"reflector {i}: disappear_frame must follow appear_frame")
    return scene


def _fast_time(cfg: ValidatedConfig) -> np.ndarray:
    n = np.arange(cfg.samples_per_chirp)
    return (n - (cfg.samples_per_chirp - 1) / 2.0) / cfg.sample_rate


def _beat_samples(
    cfg: ValidatedConfig, reflectors: list[Reflector], distances: list[np.ndarray]
) -> np.ndarray:
    """Sum of reflector tones; ``distances[i]`` has one entry per chirp."""
    tau = _fast_time(cfg)
    wavelength = SPEED_OF_LIGHT / cfg.carrier_freq
    n_chirps = distances[0].shape[0] if distances else 1
    out = np.zeros((n_chirps, cfg.samples_per_chirp), dtype=np.complex128)
    for refl, d in zip(reflectors, distances):
        f_beat = 2.0 * cfg.chirp_slope * d / SPEED_OF_LIGHT
        phi = 4.0 * np.pi * d / wavelength
        out += refl.amplitude * np.exp(
            1j * (2.0 * np.pi * f_beat[:, None] * tau[None, :] + phi[:, None])
        )
    return out


def synth_chirp(
    cfg: ValidatedConfig,
    scene: Scene,
    traj: EgoTrajectory,
    t_slow: float,
    frame_index: Optional[int] = None,
) -> np.ndarray:
    """Noiseless complex samples of one chirp starting at slow time ``t_slow``.

    With ``frame_index`` set, transient reflectors absent from that frame are
    skipped.

    Raises:
        RangeError: if any reflector distance is non-positive at ``t_slow``.
    """
    present = [
        r for r in scene.reflectors if frame_index is None or r.present_in(frame_index)
    ]
    if not present:
        return np.zeros(cfg.samples_per_chirp, dtype=np.complex128)
    t = np.array([t_slow])
    distances = [distances_at(traj, r.distance_m, t) for r in present]
    return _beat_samples(cfg, present, distances)[0]


def _frame_rng(seed: int, frame_index: int) -> np.random.Generator:
    """Independent stream per (seed, frame) so frame order never changes output."""
    return np.random.default_rng([seed & _SEED_MASK, frame_index])


def _synth_frame(
    cfg: ValidatedConfig,
    scene: Scene,
    traj: EgoTrajectory,
    noise: NoiseSpec,
    frame_index: int,
    strongest: float,
    scale: float,
) -> Frame:
    t_slow = (
        frame_index * cfg.frame_period
        + np.arange(cfg.chirps_per_frame) * cfg.chirp_repetition_time
    )
    present = [r for r in scene.reflectors if r.present_in(frame_index)]
    if present:
        distances = [distances_at(traj, r.distance_m, t_slow) for r in present]
        clean = _beat_samples(cfg, present, distances)
    else:
        clean = np.zeros((cfg.chirps_per_frame, cfg.samples_per_chirp), dtype=np.complex128)

    samples = np.repeat(clean[:, None, :], cfg.num_rx, axis=1)

    if noise.snr_db is not None and strongest > 0.0:
        sigma = strongest / np.sqrt(10.0 ** (noise.snr_db / 10.0))
        rng = _frame_rng(noise.seed, frame_index)
        white = rng.standard_normal(samples.shape + (2,)) * (sigma / np.sqrt(2.0))
        samples = samples + (white[..., 0] + 1j * white[..., 1])

    scaled = samples * scale
    iq = np.stack([np.rint(scaled.real), np.rint(scaled.imag)], axis=-1)
    if iq.size and (iq.max() > INT16_FULL_SCALE or iq.min() < -INT16_FULL_SCALE - 1):
        raise QuantizationError(
            f"frame {frame_index}: samples reach {np.abs(iq).max():.0f}, beyond int16"
        )
    return Frame(index=frame_index, iq=iq.astype(np.int16))


def synth_capture(
    cfg: ValidatedConfig,
    scene: Scene,
    traj: EgoTrajectory,
    noise: NoiseSpec,
    n_frames: int,
    headroom: float = 0.25,
) -> tuple[Capture, list[TruthRow]]:
    """Synthesize ``n_frames`` frames and the per-frame mean ground-truth velocity.

    Chirp k of frame m starts at m * frame_period + k * chirp_repetition_time.
    Samples are scaled so the strongest noiseless reflector peaks at
    ``headroom`` of int16 full scale, then rounded to the nearest integer.

    Raises:
        RangeError: if the ego reaches a reflector during the capture.
        QuantizationError: if scaled samples would clip.
    """
    cfg = validate_config(cfg)
    validate_scene(scene, cfg)
    validate_trajectory(traj)
    if n_frames < 0:
        raise ValueError(f"n_frames must be >= 0, got {n_frames}")
    if not 0.0 < headroom <= 1.0:
        raise ConfigError(f"headroom must be in (0, 1], got {headroom}")

    strongest = max((r.amplitude for r in scene.reflectors), default=0.0)
    scale = headroom * INT16_FULL_SCALE / strongest if strongest > 0 else 1.0

    frames = tuple(
        _synth_frame(cfg, scene, traj, noise, m, strongest, scale) for m in range(n_frames)
    )

    burst = (cfg.chirps_per_frame - 1) * cfg.chirp_repetition_time
    truth = [
        TruthRow(
            frame=m,
            time_s=m * cfg.frame_period,
            velocity_mps=mean_velocity(
                traj, m * cfg.frame_period, m * cfg.frame_period + burst
            ),
        )
        for m in range(n_frames)
    ]
    logger.info(
        f"synthesized {n_frames} frames, {len(scene.reflectors)} reflectors, "
        f"snr={'off' if noise.snr_db is None else f'{noise.snr_db} dB'}, seed={noise.seed}"
    )
    return Capture(config=cfg, frames=frames, source="simulator"), truth

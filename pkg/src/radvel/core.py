"""Radar configuration, physical constants and derived quantities."""
from __future__ import annotations

import json
import math
import numbers
from dataclasses import asdict, fields
from pathlib import Path
from typing import Any

from radvel.errors import ConfigError
from radvel.models import DerivedParams, RadarConfig, ValidatedConfig

SPEED_OF_LIGHT = 299_792_458.0  # m/s

_COUNT_FIELDS = ("samples_per_chirp", "chirps_per_frame", "num_rx")
_POSITIVE_FIELDS = (
    "carrier_freq",
    "chirp_slope",
    "sample_rate",
    "chirp_repetition_time",
    "frame_period",
)


def default_radar_config() -> RadarConfig:
    """77 GHz desk setup: 86 us chirp spacing, 5 FPS, 3.41 cm/s Doppler bins."""
    return RadarConfig(
        carrier_freq=77e9,
        chirp_slope=29.982e12,
        sample_rate=10e6,
        samples_per_chirp=256,
        chirps_per_frame=664,
        chirp_repetition_time=86e-6,
        frame_period=0.2,
        num_rx=1,
    )


def validate_config(cfg: RadarConfig) -> ValidatedConfig:
    """Return ``cfg`` unchanged if every RadarConfig invariant holds.

    Raises:
        ConfigError: naming the first violated invariant.
    """
    for name in _POSITIVE_FIELDS:
        value = getattr(cfg, name)
        if isinstance(value, bool) or not isinstance(value, numbers.Real):
            raise ConfigError(f"{name} must be a number, got {value!r}")
        if not math.isfinite(value) or value <= 0:
            raise ConfigError(f"{name} must be finite and > 0, got {value}")

    for name in _COUNT_FIELDS:
        value = getattr(cfg, name)
        if isinstance(value, bool) or not isinstance(value, numbers.Integral):
            raise ConfigError(f"{name} must be an integer, got {value!r}")
        if value < 1:
            raise ConfigError(f"{name} must be >= 1, got {value}")

    active = cfg.samples_per_chirp / cfg.sample_rate
    if active > cfg.chirp_repetition_time:
        raise ConfigError(
            f"active sampling {active * 1e6:.2f} us exceeds chirp repetition "
            f"time {cfg.chirp_repetition_time * 1e6:.2f} us"
        )

    burst = cfg.chirps_per_frame * cfg.chirp_repetition_time
    if burst > cfg.frame_period:
        raise ConfigError(
            f"chirp burst {burst * 1e3:.2f} ms exceeds frame period "
            f"{cfg.frame_period * 1e3:.2f} ms"
        )

    return ValidatedConfig(cfg)


def next_pow2(n: int) -> int:
    return 1 << max(0, (n - 1).bit_length())


def derive_params(cfg: ValidatedConfig) -> DerivedParams:
    """Compute wavelength, resolutions and the phase-to-velocity factor."""
    wavelength = SPEED_OF_LIGHT / cfg.carrier_freq
    n_fft = next_pow2(cfg.samples_per_chirp)
    bin_spacing = SPEED_OF_LIGHT * cfg.sample_rate / (2.0 * cfg.chirp_slope * n_fft)
    return DerivedParams(
        wavelength=wavelength,
        range_fft_size=n_fft,
        range_bin_spacing=bin_spacing,
        max_range=bin_spacing * (n_fft // 2 - 1),
        doppler_resolution=wavelength
        / (2.0 * cfg.chirps_per_frame * cfg.chirp_repetition_time),
        phase_velocity_factor=wavelength / (4.0 * math.pi),
        max_unambiguous_velocity=wavelength / (4.0 * cfg.chirp_repetition_time),
    )


def velocity_granularity(
    params: DerivedParams, cfg: RadarConfig, phase_step_rad: float
) -> float:
    """Velocity that advances the phase by ``phase_step_rad`` per chirp."""
    return params.phase_velocity_factor * phase_step_rad / cfg.chirp_repetition_time


def fit_granularity(
    params: DerivedParams, cfg: RadarConfig, phase_step_rad: float
) -> float:
    """Velocity change that moves the fitted phase by ``phase_step_rad`` over one frame."""
    span = max(cfg.chirps_per_frame - 1, 1) * cfg.chirp_repetition_time
    return params.phase_velocity_factor * phase_step_rad / span


# ----------------------------------------------------------------------
# JSON config file
# ----------------------------------------------------------------------

def radar_config_from_dict(raw: Any) -> ValidatedConfig:
    if not isinstance(raw, dict):
        raise ConfigError("radar config must be a JSON object")

    known = {f.name for f in fields(RadarConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown radar config keys: {', '.join(unknown)}")

    missing = sorted(known - set(raw) - {"num_rx"})
    if missing:
        raise ConfigError(f"missing radar config keys: {', '.join(missing)}")

    return validate_config(RadarConfig(**raw))


def radar_config_to_dict(cfg: RadarConfig) -> dict[str, Any]:
    return asdict(cfg)


def load_radar_config(path: str | Path) -> ValidatedConfig:
    """Load and validate a radar config JSON file."""
    with open(path, "r") as f:
        try:
            raw = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{path}: invalid JSON ({e})") from e
    return radar_config_from_dict(raw)


def save_radar_config(cfg: RadarConfig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(radar_config_to_dict(cfg), indent=2) + "\n")
    return path

"""YAML settings loader → dataclasses."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

import yaml
from dotenv import load_dotenv

from radvel.errors import ConfigError

DEFAULT_SETTINGS_PATH = "config/default_config.yaml"


@dataclass
class PipelineSettings:
    n_peaks: int = 5
    min_frames: int = 3
    gate_bins: int = 3            # static-reflector tolerance, +/- range bins
    max_misses: int = 2           # consecutive misses before a track retires
    peak_floor_db: float = 25.0   # peaks kept within this many dB of the strongest
    rx_channel: int = 0


@dataclass
class DopplerSettings:
    zero_pad: bool = False        # False keeps the native Doppler bin width


@dataclass
class SimulatorSettings:
    n_frames: int = 20
    snr_db: Optional[float] = 30.0
    seed: int = 42
    distance_m: float = 2.0
    amplitude: float = 1.0
    headroom: float = 0.25        # strongest reflector peak, fraction of int16 full scale


@dataclass
class EvaluationSettings:
    bucket_edges: List[float] = field(default_factory=lambda: [0.0, 0.0341, 0.05, 0.10])
    compare_velocities: List[float] = field(
        default_factory=lambda: [0.005, 0.01, 0.02, 0.03]
    )
    workers: int = 1


@dataclass
class ReportingSettings:
    output_dir: str = "output"
    precision: int = 9            # significant digits in CSV output


@dataclass
class LoggingSettings:
    level: str = "INFO"


@dataclass
class AppSettings:
    pipeline: PipelineSettings = field(default_factory=PipelineSettings)
    doppler: DopplerSettings = field(default_factory=DopplerSettings)
    simulator: SimulatorSettings = field(default_factory=SimulatorSettings)
    evaluation: EvaluationSettings = field(default_factory=EvaluationSettings)
    reporting: ReportingSettings = field(default_factory=ReportingSettings)
    logging: LoggingSettings = field(default_factory=LoggingSettings)
    max_capture_bytes: int = 4 * 1024**3


_TOP_LEVEL_KEYS = {
    "pipeline",
    "doppler",
    "simulator",
    "evaluation",
    "reporting",
    "logging",
    "max_capture_bytes",
}


def _section(cls, raw: dict, name: str):
    """Build a settings dataclass from one YAML section, rejecting typos."""
    values = raw.get(name) or {}
    if not isinstance(values, dict):
        raise ConfigError(f"settings section '{name}' must be a mapping")
    allowed = set(cls.__dataclass_fields__)
    unknown = sorted(set(values) - allowed)
    if unknown:
        raise ConfigError(f"unknown keys in settings section '{name}': {', '.join(unknown)}")
    return cls(**values)


def load_settings(config_path: str | Path = DEFAULT_SETTINGS_PATH) -> AppSettings:
    """Load YAML settings and merge with environment variables.

    A missing file at the default path falls back to built-in defaults.
    """
    load_dotenv()

    path = Path(config_path)
    if path.exists():
        with open(path, "r") as f:
            try:
                raw = yaml.safe_load(f) or {}
            except yaml.YAMLError as e:
                raise ConfigError(f"{path}: invalid YAML ({e})") from e
        if not isinstance(raw, dict):
            raise ConfigError(f"{path}: settings must be a mapping")
    elif str(config_path) == DEFAULT_SETTINGS_PATH:
        raw = {}
    else:
        raise FileNotFoundError(f"settings file not found: {config_path}")

    unknown = sorted(set(raw) - _TOP_LEVEL_KEYS)
    if unknown:
        raise ConfigError(f"unknown top-level settings keys: {', '.join(unknown)}")

    settings = AppSettings(
        pipeline=_section(PipelineSettings, raw, "pipeline"),
        doppler=_section(DopplerSettings, raw, "doppler"),
        simulator=_section(SimulatorSettings, raw, "simulator"),
        evaluation=_section(EvaluationSettings, raw, "evaluation"),
        reporting=_section(ReportingSettings, raw, "reporting"),
        logging=_section(LoggingSettings, raw, "logging"),
        max_capture_bytes=int(raw.get("max_capture_bytes", 4 * 1024**3)),
    )

    settings.logging.level = os.getenv("RADVEL_LOG_LEVEL", settings.logging.level)
    settings.reporting.output_dir = os.getenv(
        "RADVEL_OUTPUT_DIR", settings.reporting.output_dir
    )
    return settings

"""Core domain models."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, NewType, Optional

import numpy as np


class Method(Enum):
    PHASE = "phase"
    DOPPLER = "doppler"


@dataclass(frozen=True)
class RadarConfig:
    carrier_freq: float            # Hz, mid-acquisition carrier
    chirp_slope: float             # Hz/s
    sample_rate: float             # Hz
    samples_per_chirp: int
    chirps_per_frame: int
    chirp_repetition_time: float   # s, chirp time + processing time
    frame_period: float            # s
    num_rx: int = 1


# A RadarConfig that has passed core.validate_config.
ValidatedConfig = NewType("ValidatedConfig", RadarConfig)


@dataclass(frozen=True)
class DerivedParams:
    wavelength: float                # m
    range_fft_size: int
    range_bin_spacing: float         # m per range bin
    max_range: float                 # m, last positive-frequency bin
    doppler_resolution: float        # m/s
    phase_velocity_factor: float     # m/rad, lambda / 4pi
    max_unambiguous_velocity: float  # m/s


@dataclass(frozen=True, eq=False)
class Frame:
    """One frame of quantized I/Q samples.

    ``iq`` is int16 with shape (chirps, rx, samples, 2); the last axis holds
    I then Q, which is also the on-disk order.
    """

    index: int
    iq: np.ndarray

    def __post_init__(self) -> None:
        self.iq.flags.writeable = False

    @property
    def num_chirps(self) -> int:
        return int(self.iq.shape[0])

    @property
    def num_rx(self) -> int:
        return int(self.iq.shape[1])

    @property
    def num_samples(self) -> int:
        return int(self.iq.shape[2])

    @property
    def samples(self) -> np.ndarray:
        """Complex float view, shape (chirps, rx, samples)."""
        iq = self.iq.astype(np.float64)
        return iq[..., 0] + 1j * iq[..., 1]

    def matches(self, cfg: RadarConfig) -> bool:
        return self.iq.shape == (
            cfg.chirps_per_frame, cfg.num_rx, cfg.samples_per_chirp, 2
        )

    def same_samples(self, other: Frame) -> bool:
        return self.index == other.index and np.array_equal(self.iq, other.iq)


@dataclass(frozen=True, eq=False)
class Capture:
    config: RadarConfig
    frames: tuple[Frame, ...] = ()
    source: str = ""

    def __len__(self) -> int:
        return len(self.frames)

    def same_samples(self, other: Capture) -> bool:
        return (
            self.config == other.config
            and len(self.frames) == len(other.frames)
            and all(a.same_samples(b) for a, b in zip(self.frames, other.frames))
        )


@dataclass(frozen=True)
class Peak:
    bin: int
    magnitude: float


@dataclass(frozen=True)
class PeakSet:
    """Peaks sorted by descending magnitude, ties to the lower bin."""

    peaks: tuple[Peak, ...] = ()

    def __len__(self) -> int:
        return len(self.peaks)

    def __iter__(self) -> Iterator[Peak]:
        return iter(self.peaks)

    @property
    def bins(self) -> list[int]:
        return [p.bin for p in self.peaks]


@dataclass(frozen=True)
class TrackPoint:
    frame: int
    bin: int
    magnitude: float


@dataclass
class ReflectorTrack:
    """A range bin followed across frames (mutable while tracking)."""

    track_id: int
    history: list[TrackPoint] = field(default_factory=list)

    @property
    def anchor_bin(self) -> int:
        """Lower median of the history bins."""
        bins = sorted(p.bin for p in self.history)
        return bins[(len(bins) - 1) // 2]

    @property
    def frames(self) -> list[int]:
        return [p.frame for p in self.history]

    def entry_for(self, frame: int) -> Optional[TrackPoint]:
        for p in self.history:
            if p.frame == frame:
                return p
        return None

    def __len__(self) -> int:
        return len(self.history)


@dataclass
class TrackerState:
    """Cross-frame bookkeeping for the static-reflector tracker."""

    active: list[ReflectorTrack] = field(default_factory=list)
    misses: dict[int, int] = field(default_factory=dict)  # track_id -> consecutive misses
    next_id: int = 0
    retired: list[ReflectorTrack] = field(default_factory=list)
    merged: list[ReflectorTrack] = field(default_factory=list)   # lost an anchor collision
    last_frame: Optional[int] = None


@dataclass(frozen=True, eq=False)
class PhaseSeries:
    track_id: int
    frame: int
    phases: np.ndarray   # rad, unwrapped, one per chirp
    dt: float            # s between samples
    bin: int = 0
    magnitude: float = 0.0

    def __len__(self) -> int:
        return int(self.phases.shape[0])

    @property
    def times(self) -> np.ndarray:
        return np.arange(len(self)) * self.dt


@dataclass(frozen=True)
class VelocityEstimate:
    frame: int
    time_s: float
    velocity_mps: float   # positive = ego approaching reflectors
    method: Method
    tracks: int


@dataclass(frozen=True)
class Reflector:
    distance_m: float       # at t = 0
    amplitude: float = 1.0
    appear_frame: Optional[int] = None
    disappear_frame: Optional[int] = None

    def present_in(self, frame: int) -> bool:
        if self.appear_frame is not None and frame < self.appear_frame:
            return False
        if self.disappear_frame is not None and frame >= self.disappear_frame:
            return False
        return True


@dataclass(frozen=True)
class Scene:
    reflectors: tuple[Reflector, ...] = ()


@dataclass(frozen=True)
class VelocitySegment:
    start_s: float
    velocity_mps: float     # positive = toward reflectors


@dataclass(frozen=True)
class EgoTrajectory:
    segments: tuple[VelocitySegment, ...] = (VelocitySegment(0.0, 0.0),)

    @classmethod
    def constant(cls, velocity_mps: float) -> EgoTrajectory:
        return cls(segments=(VelocitySegment(0.0, velocity_mps),))


@dataclass(frozen=True)
class NoiseSpec:
    snr_db: Optional[float] = None   # None = noise off
    seed: int = 0


@dataclass(frozen=True)
class TruthRow:
    frame: int
    time_s: float
    velocity_mps: float

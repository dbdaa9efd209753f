"""MMP1 capture container and headerless raw I/Q reader.

MMP1 layout, all little-endian:
    magic "MMP1" | version u16 | carrier_freq f64 | chirp_slope f64 |
    sample_rate f64 | samples_per_chirp u32 | chirps_per_frame u32 |
    num_rx u32 | chirp_repetition_time f64 | frame_period f64 | frame_count u32
followed by frame_count frames of chirps x rx x samples x (I i16, Q i16).
"""
from __future__ import annotations

import logging
import struct
from pathlib import Path
from typing import BinaryIO

import numpy as np

from radvel.core import validate_config
from radvel.errors import FormatError, TruncatedError
from radvel.models import Capture, Frame, RadarConfig, ValidatedConfig

logger = logging.getLogger(__name__)

MAGIC = b"MMP1"
VERSION = 1
HEADER = struct.Struct("<4sHdddIIIddI")  # 62 bytes
DEFAULT_MAX_BYTES = 4 * 1024**3
_SAMPLE_DTYPE = np.dtype("<i2")


def frame_nbytes(cfg: RadarConfig) -> int:
    return cfg.chirps_per_frame * cfg.num_rx * cfg.samples_per_chirp * 2 * _SAMPLE_DTYPE.itemsize


def check_capture(capture: Capture) -> Capture:
    """Every frame matches the config and indices run 0..n-1."""
    cfg = capture.config
    for expected, frame in enumerate(capture.frames):
        if frame.index != expected:
            raise FormatError(f"frame indices must be contiguous: got {frame.index} at {expected}")
        if not frame.matches(cfg):
            raise FormatError(
                f"frame {frame.index} has shape {frame.iq.shape}, expected "
                f"({cfg.chirps_per_frame}, {cfg.num_rx}, {cfg.samples_per_chirp}, 2)"
            )
    return capture


# ------------------------------------------------------------------
# MMP1
# ------------------------------------------------------------------

def write_capture(capture: Capture, sink: BinaryIO) -> int:
    """Write ``capture`` as MMP1 and return the number of bytes written."""
    cfg = validate_config(capture.config)
    check_capture(capture)

    written = sink.write(
        HEADER.pack(
            MAGIC,
            VERSION,
            cfg.carrier_freq,
            cfg.chirp_slope,
            cfg.sample_rate,
            cfg.samples_per_chirp,
            cfg.chirps_per_frame,
            cfg.num_rx,
            cfg.chirp_repetition_time,
            cfg.frame_period,
            len(capture.frames),
        )
    )
    for frame in capture.frames:
        written += sink.write(frame.iq.astype(_SAMPLE_DTYPE, copy=False).tobytes(order="C"))
    return written


def _frames_from_bytes(payload: bytes, cfg: RadarConfig, count: int) -> tuple[Frame, ...]:
    data = np.frombuffer(payload, dtype=_SAMPLE_DTYPE).reshape(
        count, cfg.chirps_per_frame, cfg.num_rx, cfg.samples_per_chirp, 2
    )
    return tuple(Frame(index=m, iq=data[m].astype(np.int16)) for m in range(count))


def read_capture(source: BinaryIO, max_bytes: int = DEFAULT_MAX_BYTES) -> Capture:
    """Parse an MMP1 stream.

    Raises:
        FormatError: bad magic or version, oversize payload, trailing bytes.
        TruncatedError: header or payload shorter than announced.
        ConfigError: embedded radar config violates an invariant.
    """
    head = source.read(HEADER.size)
    if head[: len(MAGIC)] != MAGIC:
        raise FormatError(f"not an MMP1 capture (magic {head[:4]!r})")
    if len(head) < HEADER.size:
        raise TruncatedError(f"header truncated: {len(head)} of {HEADER.size} bytes")

    (
        _magic,
        version,
        carrier_freq,
        chirp_slope,
        sample_rate,
        samples_per_chirp,
        chirps_per_frame,
        num_rx,
        chirp_repetition_time,
        frame_period,
        frame_count,
    ) = HEADER.unpack(head)
    if version != VERSION:
        raise FormatError(f"unsupported MMP1 version {version}")

    cfg = validate_config(
        RadarConfig(
            carrier_freq=carrier_freq,
            chirp_slope=chirp_slope,
            sample_rate=sample_rate,
            samples_per_chirp=samples_per_chirp,
            chirps_per_frame=chirps_per_frame,
            chirp_repetition_time=chirp_repetition_time,
            frame_period=frame_period,
            num_rx=num_rx,
        )
    )

    expected = frame_count * frame_nbytes(cfg)
    if expected > max_bytes:
        raise FormatError(
            f"header announces {expected} payload bytes, above the {max_bytes} byte cap"
        )
    payload = source.read(expected)
    if len(payload) < expected:
        raise TruncatedError(
            f"payload holds {len(payload)} bytes, header announces {expected} "
            f"({frame_count} frames)"
        )
    if source.read(1):
        raise FormatError("trailing bytes after the last frame")

    logger.debug(f"read MMP1 capture: {frame_count} frames, {expected} payload bytes")
    return Capture(config=cfg, frames=_frames_from_bytes(payload, cfg, frame_count))


# ------------------------------------------------------------------
# Headerless int16 I/Q
# ------------------------------------------------------------------

def read_raw_iq(
    source: BinaryIO, cfg: ValidatedConfig, max_bytes: int = DEFAULT_MAX_BYTES
) -> Capture:
    """Interpret a headerless little-endian int16 I,Q stream under ``cfg``.

    Sample order is frame -> chirp -> rx -> sample, I before Q.

    Raises:
        TruncatedError: if the length is not a whole number of frames.
        FormatError: if the stream exceeds ``max_bytes``.
    """
    cfg = validate_config(cfg)
    payload = source.read(max_bytes + 1)
    if len(payload) > max_bytes:
        raise FormatError(f"raw stream exceeds the {max_bytes} byte cap")

    size = frame_nbytes(cfg)
    count, remainder = divmod(len(payload), size)
    if remainder:
        raise TruncatedError(
            f"raw stream of {len(payload)} bytes is not a whole number of "
            f"{size}-byte frames"
        )
    return Capture(config=cfg, frames=_frames_from_bytes(payload, cfg, count), source="raw")


# ------------------------------------------------------------------
# File helpers
# ------------------------------------------------------------------

def save_capture(capture: Capture, path: str | Path) -> int:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as f:
        return write_capture(capture, f)


def load_capture(path: str | Path, max_bytes: int = DEFAULT_MAX_BYTES) -> Capture:
    with open(path, "rb") as f:
        capture = read_capture(f, max_bytes)
    return Capture(config=capture.config, frames=capture.frames, source=str(path))


def load_raw_iq(
    path: str | Path, cfg: ValidatedConfig, max_bytes: int = DEFAULT_MAX_BYTES
) -> Capture:
    with open(path, "rb") as f:
        capture = read_raw_iq(f, cfg, max_bytes)
    return Capture(config=capture.config, frames=capture.frames, source=str(path))

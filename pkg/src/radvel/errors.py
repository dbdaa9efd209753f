"""Exception hierarchy shared by every radvel module."""
from __future__ import annotations


class RadvelError(Exception):
    """Base class for all radvel errors."""


class ConfigError(RadvelError, ValueError):
    """A radar config or settings file violates an invariant."""


class FormatError(RadvelError, ValueError):
    """A capture stream is not a valid MMP1 container."""


class TruncatedError(FormatError):
    """The payload is shorter than the header (or frame size) promises."""


class SizeError(RadvelError, ValueError):
    """FFT input length is not a power of two."""


class OrderError(RadvelError, ValueError):
    """Frames were fed to the tracker out of order."""


class MissingFrameError(RadvelError, ValueError):
    """A track has no entry for the requested frame."""


class InsufficientDataError(RadvelError, ValueError):
    """Too few samples for a least-squares fit."""


class NoTracksError(RadvelError, ValueError):
    """Velocity fusion was asked to combine zero tracks."""


class NoOverlapError(RadvelError, ValueError):
    """Estimates and ground truth share no frame index."""


class SynthesisError(RadvelError):
    """The simulator could not produce a capture."""


class RangeError(SynthesisError, ValueError):
    """A reflector distance became non-positive (ego passed it)."""


class QuantizationError(SynthesisError):
    """Scaled samples would clip the int16 range."""

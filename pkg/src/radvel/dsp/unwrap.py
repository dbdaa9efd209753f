"""One-dimensional phase unwrapping."""
from __future__ import annotations

from typing import Sequence

import numpy as np

TWO_PI = 2.0 * np.pi


def unwrap_phase(phases: Sequence[float] | np.ndarray) -> np.ndarray:
    """Remove 2pi jumps so every consecutive difference lies in (-pi, pi].

    ``output[0] == input[0]`` and each output differs from its input by an
    exact integer multiple of 2pi, accumulated as integers so long series do
    not drift.

    Raises:
        ValueError: on empty or non-finite input.
    """
    x = np.asarray(phases, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] < 1:
        raise ValueError("phase series must be one-dimensional with length >= 1")
    if not np.all(np.isfinite(x)):
        raise ValueError("phase series contains non-finite values")

    d = np.diff(x)
    # Fold into (-pi, pi]: mod() lands in [0, 2pi), so pi - mod lands in (-pi, pi].
    folded = np.pi - np.mod(np.pi - d, TWO_PI)
    turns = np.rint((folded - d) / TWO_PI)

    out = x.copy()
    out[1:] += TWO_PI * np.cumsum(turns)
    return out

"""Window functions."""
from __future__ import annotations

import numpy as np


def hann_window(n: int) -> np.ndarray:
    """Symmetric Hann window, w[k] = 0.5 (1 - cos(2 pi k / (n - 1))); n = 1 gives [1.0]."""
    if n < 1:
        raise ValueError(f"window length must be >= 1, got {n}")
    return np.hanning(n)

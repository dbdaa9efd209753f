"""Top-N strict local maxima of a magnitude profile."""
from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from radvel.models import Peak, PeakSet


def default_bin_range(n_fft: int) -> tuple[int, int]:
    """Skip DC and the negative-frequency half: [1, N/2 - 1]."""
    return 1, max(1, n_fft // 2 - 1)


def top_n_peaks(
    magnitudes: Sequence[float] | np.ndarray,
    n: int,
    min_bin: Optional[int] = None,
    max_bin: Optional[int] = None,
    threshold: float = 0.0,
) -> PeakSet:
    """Return up to ``n`` strict local maxima inside [min_bin, max_bin].

    A bin is a peak when it is greater than both neighbours inside the window
    (window edges compare one-sided) and greater than ``threshold``. Values
    outside the window never influence the result. Output is sorted by
    descending magnitude, ties to the lower bin.
    """
    mags = np.asarray(magnitudes, dtype=np.float64)
    default_lo, default_hi = default_bin_range(mags.shape[0])
    lo = default_lo if min_bin is None else min_bin
    hi = default_hi if max_bin is None else max_bin
    if not 0 <= lo <= hi < mags.shape[0]:
        raise ValueError(
            f"need 0 <= min_bin <= max_bin < {mags.shape[0]}, got [{lo}, {hi}]"
        )
    if n <= 0:
        return PeakSet()

    window = mags[lo : hi + 1]
    rising = np.ones(window.shape[0], dtype=bool)
    falling = np.ones(window.shape[0], dtype=bool)
    rising[1:] = window[1:] > window[:-1]
    falling[:-1] = window[:-1] > window[1:]
    idx = np.flatnonzero(rising & falling & (window > threshold))

    order = np.lexsort((idx, -window[idx]))[:n]
    return PeakSet(
        peaks=tuple(Peak(bin=int(lo + idx[i]), magnitude=float(window[idx[i]])) for i in order)
    )

"""Complex FFT with a direct-DFT oracle."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from radvel.errors import SizeError


def is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def fft_complex(
    x: Sequence[complex] | np.ndarray,
    inverse: bool = False,
    axis: int = -1,
) -> np.ndarray:
    """DFT along ``axis`` with the e^{-j2pi kn/N} convention, unnormalized.

    ``inverse=True`` applies the conjugate kernel and the 1/N factor.

    Raises:
        SizeError: if the transform length is not a power of two.
    """
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim == 0 or not is_pow2(arr.shape[axis]):
        raise SizeError(f"FFT length must be a power of two >= 1, got shape {arr.shape}")
    if inverse:
        return np.fft.ifft(arr, axis=axis)
    return np.fft.fft(arr, axis=axis)


def naive_dft(x: Sequence[complex] | np.ndarray) -> np.ndarray:
    """O(n^2) evaluation of the same forward convention, any length >= 1."""
    arr = np.asarray(x, dtype=np.complex128)
    n = arr.shape[0]
    k = np.arange(n)
    # Reduce kn mod N before scaling so large products keep full precision.
    kn = np.outer(k, k) % n
    kernel = np.exp(-2j * np.pi * kn / n)
    return kernel @ arr
